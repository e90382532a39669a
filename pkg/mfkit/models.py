"""
Data models for mfkit.

This module defines the records passed between the library and the CLI:
- Catalog entries (a named family member with its factorization)
- Equivalence verdicts with their Groebner certificate
- Classification reports and individual check results
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .constants import Y_NAMES
from .cyclofield import ONE, CycNum
from .groebner import GroebnerBasis, Ideal
from .matpoly import MatrixFactorization, PolyMat, make_mf
from .multipoly import VarTable, f4


def param_text(value: Any) -> str:
    if isinstance(value, CycNum):
        return value.to_text()
    if isinstance(value, tuple):
        return "(" + ",".join(param_text(v) for v in value) + ")"
    return str(value)


@dataclass(frozen=True)
class CatalogEntry:
    """
    One member of a parameterized family.

    ``phi`` presents the module; ``psi`` is its partner with
    phi * psi = psi * phi = f4 * I. ``det_scale`` is the scalar applied to the
    first row of the displayed matrix to make det(phi) = f4 exactly.
    """
    name: str
    family: str  # "phi" | "psi" | "alpha" | "beta" | "eta" | "theta" | "raw:<case>"
    params: Tuple[Tuple[str, Any], ...]
    phi: PolyMat
    psi: PolyMat
    det_scale: CycNum = ONE

    @property
    def n(self) -> int:
        return self.phi.n

    def param_dict(self) -> Dict[str, Any]:
        return dict(self.params)

    def params_text(self) -> Dict[str, str]:
        return {k: param_text(v) for k, v in self.params}

    def as_mf(self) -> MatrixFactorization:
        """
        The checked pair (phi, psi).

        Raises:
            MatrixFactorizationError: If phi*psi or psi*phi is not f4*I
        """
        return make_mf(self.phi, self.psi, f4(VarTable(Y_NAMES)))


@dataclass
class EquivProblem:
    """Two presentations to compare, with an optional relation ideal in auxiliary scalars."""
    X: PolyMat
    Y: PolyMat
    relations: Optional[Ideal] = None

    def __post_init__(self) -> None:
        if self.X.n != self.Y.n:
            raise ValueError(f"Size mismatch: {self.X.n}x{self.X.n} vs {self.Y.n}x{self.Y.n}")
        if self.X.vars != self.Y.vars:
            raise ValueError("X and Y use different variable tables")
        stray = set(self.X.vars.names) - set(Y_NAMES)
        if stray:
            raise ValueError(f"Matrix entries may only use Y1..Y4, found {sorted(stray)}")


@dataclass
class EquivVerdict:
    """
    Outcome of an equivalence test.

    ``certificate`` is the reduced Groebner basis of the equivalence ideal;
    the outcome is "not-equivalent" exactly when it is {1}.
    """
    outcome: str  # "equivalent" | "not-equivalent"
    certificate: GroebnerBasis

    @property
    def equivalent(self) -> bool:
        return self.outcome == "equivalent"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "outcome": self.outcome,
            "certificate": self.certificate.to_lines(),
            "order": str(self.certificate.order),
            "unknowns": list(self.certificate.vars.names),
        }


@dataclass
class ClassInfo:
    """One isomorphism class, identified by its first member."""
    id: int
    family: str
    params: Dict[str, str]
    members: List[str] = field(default_factory=list)
    generators: int = 0

    @property
    def size(self) -> int:
        return len(self.members)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "family": self.family,
            "params": self.params,
            "size": self.size,
            "members": self.members,
        }


@dataclass
class ClassReport:
    """Partition of the classified entries into isomorphism classes."""
    classes: List[ClassInfo]
    audits: List["CheckResult"] = field(default_factory=list)

    @property
    def two_generated_classes(self) -> int:
        return sum(1 for c in self.classes if c.generators == 2)

    @property
    def three_generated_classes(self) -> int:
        return sum(1 for c in self.classes if c.generators == 3)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "two_generated_classes": self.two_generated_classes,
            "three_generated_classes": self.three_generated_classes,
            "total_classes": len(self.classes),
            "classes": [c.to_dict() for c in self.classes],
            "audits": [a.to_dict() for a in self.audits],
        }


@dataclass
class CheckResult:
    """Pass/fail record for one verification."""
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}
