"""
Catalog of rank-one matrix factorizations of f4.

Constructors for every parameterized family (the two-generated phi/psi
pairs, the three-generated alpha/beta/eta/theta families and the raw case
matrices A..F), their enumerators, parameter validation, and the completion
of a partial 3x3 presentation [[0, a, b], [c, *, *], [d, *, *]].
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations, product
from typing import Dict, List, Optional, Sequence, Tuple

from .constants import Y_NAMES
from .cyclofield import (
    ONE,
    CycNum,
    Scalar,
    cube_roots_of_minus_one,
    is_cube_root_of_minus_one,
    is_primitive_cube_root_of_unity,
    primitive_cube_roots_of_unity,
)
from .groebner import Ideal, ideal_equal, ideal_member
from .linsolve import are_independent_linear_forms, nullspace, solve
from .logger import get_logger
from .matpoly import (
    ElementaryOp,
    MatrixFactorizationError,
    PolyMat,
    adjugate,
    apply_elementaries,
    det,
    fitting_ideal,
    make_mf,
    normalize_det,
    rank_of_mf,
    transpose,
)
from .models import CatalogEntry, CheckResult
from .multipoly import Poly, VarTable, f4

logger = get_logger("catalog")

YVARS = VarTable(Y_NAMES)
F4 = f4(YVARS)

TWO_GEN_PAIRS = ((2, 3), (2, 4), (3, 4))
RAW_CASES = ("A", "At", "B", "Bt", "C", "Ct", "D", "E", "F")


class ParameterConstraintError(ValueError):
    """Raised when a parameter tuple violates its family's constraints."""


class CompletionError(ValueError):
    """Raised when a partial presentation cannot be completed."""


def _y(k: int) -> Poly:
    return Poly.variable(YVARS, f"Y{k}")


def _zero() -> Poly:
    return Poly.zero(YVARS)


def _mat(rows: Sequence[Sequence[Poly]]) -> PolyMat:
    return PolyMat(tuple(tuple(r) for r in rows))


def _root(name: str, x: Scalar) -> CycNum:
    x = CycNum.coerce(x)
    if not is_cube_root_of_minus_one(x):
        raise ParameterConstraintError(f"{name}={x} is not a cube root of -1")
    return x


def _primitive(name: str, x: Scalar) -> CycNum:
    x = CycNum.coerce(x)
    if not is_primitive_cube_root_of_unity(x):
        raise ParameterConstraintError(f"{name}={x} is not a primitive cube root of 1")
    return x


def _permutation(name: str, triple: Sequence[Scalar]) -> Tuple[CycNum, CycNum, CycNum]:
    values = tuple(CycNum.coerce(x) for x in triple)
    if len(values) != 3 or set(values) != set(cube_roots_of_minus_one()):
        raise ParameterConstraintError(
            f"{name}={tuple(str(v) for v in values)} is not a permutation of the cube roots of -1"
        )
    return values  # type: ignore[return-value]


# Parameter types


@dataclass(frozen=True)
class TwoGenParams:
    """Index pair i < j inside {2, 3, 4} and roots a, b of -1."""

    i: int
    j: int
    a: CycNum
    b: CycNum

    def __post_init__(self) -> None:
        if (self.i, self.j) not in TWO_GEN_PAIRS:
            raise ParameterConstraintError(
                f"(i,j)=({self.i},{self.j}) must be one of {list(TWO_GEN_PAIRS)}"
            )
        object.__setattr__(self, "a", _root("a", self.a))
        object.__setattr__(self, "b", _root("b", self.b))

    @property
    def s(self) -> int:
        return ({2, 3, 4} - {self.i, self.j}).pop()

    def as_tuple(self) -> Tuple[Tuple[str, object], ...]:
        return (("i", self.i), ("j", self.j), ("a", self.a), ("b", self.b))


@dataclass(frozen=True)
class AlphaParams:
    """Roots b, c, d of -1 and a primitive root eps; a = bcd / eps is derived."""

    b: CycNum
    c: CycNum
    d: CycNum
    eps: CycNum

    def __post_init__(self) -> None:
        object.__setattr__(self, "b", _root("b", self.b))
        object.__setattr__(self, "c", _root("c", self.c))
        object.__setattr__(self, "d", _root("d", self.d))
        object.__setattr__(self, "eps", _primitive("eps", self.eps))

    @property
    def a(self) -> CycNum:
        return self.eps.inverse() * self.b * self.c * self.d

    def as_tuple(self) -> Tuple[Tuple[str, object], ...]:
        return (("b", self.b), ("c", self.c), ("d", self.d), ("eps", self.eps))


@dataclass(frozen=True)
class EtaParams:
    """A permutation (a, b, c) of the cube roots of -1 and a primitive root eps."""

    a: CycNum
    b: CycNum
    c: CycNum
    eps: CycNum

    def __post_init__(self) -> None:
        a, b, c = _permutation("(a,b,c)", (self.a, self.b, self.c))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "eps", _primitive("eps", self.eps))

    def as_tuple(self) -> Tuple[Tuple[str, object], ...]:
        return (("a", self.a), ("b", self.b), ("c", self.c), ("eps", self.eps))


@dataclass(frozen=True)
class ThetaParams:
    """A permutation (a, b, c) of the cube roots of -1."""

    a: CycNum
    b: CycNum
    c: CycNum

    def __post_init__(self) -> None:
        a, b, c = _permutation("(a,b,c)", (self.a, self.b, self.c))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def as_tuple(self) -> Tuple[Tuple[str, object], ...]:
        return (("a", self.a), ("b", self.b), ("c", self.c))


@dataclass(frozen=True)
class RawCaseParams:
    """
    Scalars of one of the nine case matrices.

    Cases A/At need bcd = eps*a, B/Bt need ad = eps*bc, C/Ct need
    ab = eps*cd (eps primitive); D/E/F need a != c and b != d and take no eps.
    """

    case: str
    a: CycNum
    b: CycNum
    c: CycNum
    d: CycNum
    eps: Optional[CycNum] = None

    def __post_init__(self) -> None:
        if self.case not in RAW_CASES:
            raise ParameterConstraintError(f"Unknown case '{self.case}', expected one of {RAW_CASES}")
        for name in "abcd":
            object.__setattr__(self, name, _root(name, getattr(self, name)))
        a, b, c, d = self.a, self.b, self.c, self.d
        base = self.case[0]
        if base in "ABC":
            if self.eps is None:
                raise ParameterConstraintError(f"Case {self.case} needs eps")
            eps = _primitive("eps", self.eps)
            object.__setattr__(self, "eps", eps)
            if base == "A" and b * c * d != eps * a:
                raise ParameterConstraintError(f"Case {self.case} needs bcd = eps*a")
            if base == "B" and a * d != eps * b * c:
                raise ParameterConstraintError(f"Case {self.case} needs ad = eps*bc")
            if base == "C" and a * b != eps * c * d:
                raise ParameterConstraintError(f"Case {self.case} needs ab = eps*cd")
        else:
            if self.eps is not None:
                raise ParameterConstraintError(f"Case {self.case} takes no eps")
            if a == c or b == d:
                raise ParameterConstraintError(f"Case {self.case} needs a != c and b != d")

    @classmethod
    def from_triples(
        cls, case: str, first: Sequence[Scalar], second: Sequence[Scalar]
    ) -> RawCaseParams:
        """
        Tuple notation X((a,b,c),(p,q,r)) for X in D, E, F.

        The raw scalars are (a, b, c, d) := (a, p, b, q); the remaining roots
        c and r fill the diagonal.
        """
        if case not in ("D", "E", "F"):
            raise ParameterConstraintError(f"Tuple notation applies to D, E, F only, not {case}")
        f = _permutation("(a,b,c)", first)
        s = _permutation("(p,q,r)", second)
        return cls(case, f[0], s[0], f[1], s[1])

    def as_tuple(self) -> Tuple[Tuple[str, object], ...]:
        out: List[Tuple[str, object]] = [
            ("case", self.case),
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("d", self.d),
        ]
        if self.eps is not None:
            out.append(("eps", self.eps))
        return tuple(out)


# Matrices


def phi_ij(p: TwoGenParams) -> PolyMat:
    """
    [[Y1 - a*Ys, -(Yi^2 + b*Yi*Yj + b^2*Yj^2)], [Yi - b*Yj, Y1^2 + a*Y1*Ys + a^2*Ys^2]]
    """
    y1, yi, yj, ys = _y(1), _y(p.i), _y(p.j), _y(p.s)
    a, b = p.a, p.b
    return _mat(
        [
            [y1 - a * ys, -(yi**2 + b * yi * yj + b * b * yj**2)],
            [yi - b * yj, y1**2 + a * y1 * ys + a * a * ys**2],
        ]
    )


def psi_ij(p: TwoGenParams) -> PolyMat:
    y1, yi, yj, ys = _y(1), _y(p.i), _y(p.j), _y(p.s)
    a, b = p.a, p.b
    return _mat(
        [
            [y1**2 + a * y1 * ys + a * a * ys**2, yi**2 + b * yi * yj + b * b * yj**2],
            [-(yi - b * yj), y1 - a * ys],
        ]
    )


def _a_matrix(a: CycNum, b: CycNum, c: CycNum, d: CycNum, e: CycNum) -> PolyMat:
    y1, y2, y3, y4 = _y(1), _y(2), _y(3), _y(4)
    e2 = e * e
    return _mat(
        [
            [_zero(), y1 - a * y4, y2 - b * y3],
            [y1 - c * y2, -(b * b) * y3 - a * b * c * c * e2 * y4, b * b * c * c * y3 - a * b * c * e2 * y4],
            [y3 - d * y4, c * c * y2 + b * c * c * y3 + a * c * y4, -y1 - c * y2 - a * y4],
        ]
    )


def _b_matrix(a: CycNum, b: CycNum, c: CycNum, d: CycNum, e: CycNum) -> PolyMat:
    y1, y2, y3, y4 = _y(1), _y(2), _y(3), _y(4)
    return _mat(
        [
            [_zero(), y1 - a * y3, y2 - b * y4],
            [y1 - c * y2, a * a * c * y3 + (a * b * c * c + a * a * c * d) * y4, a * a * y3 - a * a * d * e * y4],
            [y3 - d * y4, c * c * y2 + a * c * y3 + b * c * c * y4, -y1 - c * y2 - a * y3],
        ]
    )


def _c_matrix(a: CycNum, b: CycNum, c: CycNum, d: CycNum, e: CycNum) -> PolyMat:
    y1, y2, y3, y4 = _y(1), _y(2), _y(3), _y(4)
    e2 = e * e
    k = b * b * c * c
    m = b * c * c * d * e2
    return _mat(
        [
            [_zero(), y1 - a * y4, y2 - b * y3],
            [y1 - c * y3, -y2 - b * y3 - d * y4, -k * y3 + m * y4],
            [y2 - d * y4, k * y3 - m * y4, -y1 - c * y3 - a * y4],
        ]
    )


# (first pair | second pair) of variable indices for the diagonal-block cases
_DEF_LAYOUT = {"D": (1, 2, 3, 4), "E": (1, 3, 2, 4), "F": (1, 4, 2, 3)}


def _def_matrix(case: str, a: CycNum, b: CycNum, c: CycNum, d: CycNum) -> PolyMat:
    k1, k2, k3, k4 = _DEF_LAYOUT[case]
    x1, x2, x3, x4 = _y(k1), _y(k2), _y(k3), _y(k4)
    return _mat(
        [
            [_zero(), x1 - a * x2, x3 - b * x4],
            [x1 - c * x2, -x3 - (b + d) * x4, _zero()],
            [x3 - d * x4, _zero(), -x1 - (a + c) * x2],
        ]
    )


def alpha(p: AlphaParams) -> PolyMat:
    return _a_matrix(p.a, p.b, p.c, p.d, p.eps)


def beta(p: AlphaParams) -> PolyMat:
    return transpose(alpha(p))


def alpha_twist(p: AlphaParams) -> AlphaParams:
    """(b, c, d, eps) -> (b*eps, c*eps, d*eps, eps^2); an involution without fixed points."""
    e = p.eps
    return AlphaParams(p.b * e, p.c * e, p.d * e, e * e)


def eta(p: EtaParams) -> PolyMat:
    y1, y2, y3, y4 = _y(1), _y(2), _y(3), _y(4)
    e = p.eps
    return _mat(
        [
            [_zero(), y1 + y2, y3 - p.a * y4],
            [y1 + e * y2, -y3 + p.c * y4, _zero()],
            [y3 - p.b * y4, _zero(), -y1 - (e * e) * y2],
        ]
    )


def theta(p: ThetaParams) -> PolyMat:
    y1, y2, y3, y4 = _y(1), _y(2), _y(3), _y(4)
    a, b, c = p.a, p.b, p.c
    return _mat(
        [
            [_zero(), y1 + y3, y2 - a * y4],
            [y1 - a * a * b * y3, -y2 + c * y4, _zero()],
            [y2 - b * y4, _zero(), -y1 + a * b * b * y3],
        ]
    )


def raw_case(p: RawCaseParams) -> PolyMat:
    """The displayed case matrix; transposed cases are transposes of A, B, C."""
    base = p.case[0]
    if base == "A":
        m = _a_matrix(p.a, p.b, p.c, p.d, p.eps)
    elif base == "B":
        m = _b_matrix(p.a, p.b, p.c, p.d, p.eps)
    elif base == "C":
        m = _c_matrix(p.a, p.b, p.c, p.d, p.eps)
    else:
        m = _def_matrix(base, p.a, p.b, p.c, p.d)
    return transpose(m) if p.case.endswith("t") else m


def def_matrix(case: str, first: Sequence[Scalar], second: Sequence[Scalar]) -> PolyMat:
    """D, E or F in tuple notation, e.g. D((a,b,c),(p,q,r))."""
    return raw_case(RawCaseParams.from_triples(case, first, second))


# The cyclic rearrangement D((a,b,c),(p,q,r)) -> D((c,a,b),(q,r,p)):
# rows (r1, r2, r3) -> (-r3, -r1, r2), columns (c1, c2, c3) -> (-c2, c3, -c1).
D_CYCLE_OPS = (
    ElementaryOp("swap_rows", 0, 2),
    ElementaryOp("swap_rows", 1, 2),
    ElementaryOp("scale_row", 0, scalar=-ONE),
    ElementaryOp("scale_row", 1, scalar=-ONE),
    ElementaryOp("swap_cols", 0, 1),
    ElementaryOp("swap_cols", 1, 2),
    ElementaryOp("scale_col", 0, scalar=-ONE),
    ElementaryOp("scale_col", 2, scalar=-ONE),
)


def d_cycle(m: PolyMat) -> PolyMat:
    return apply_elementaries(m, D_CYCLE_OPS)


# Entries and enumeration


def make_entry(
    name: str,
    family: str,
    params: Tuple[Tuple[str, object], ...],
    matrix: PolyMat,
    verify: bool = False,
) -> CatalogEntry:
    """
    Wrap a matrix as a catalog entry, normalizing det to f4.

    The partner matrix is the adjugate of the normalized matrix.
    """
    phi, scale = normalize_det(matrix, F4)
    psi = adjugate(phi)
    if verify:
        make_mf(phi, psi, F4)
    return CatalogEntry(name, family, params, phi, psi, scale)


def _fmt(*values: CycNum) -> str:
    return ",".join(v.to_text() for v in values)


def enumerate_two_gen() -> List[CatalogEntry]:
    """27 phi_ij(a,b) followed by 27 psi_ij(a,b)."""
    roots = cube_roots_of_minus_one()
    out = []
    for family, build in (("phi", phi_ij), ("psi", psi_ij)):
        for (i, j), a, b in product(TWO_GEN_PAIRS, roots, roots):
            p = TwoGenParams(i, j, a, b)
            out.append(make_entry(f"{family}_{i}{j}({_fmt(a, b)})", family, p.as_tuple(), build(p)))
    return out


def alpha_params_all() -> List[AlphaParams]:
    roots = cube_roots_of_minus_one()
    return [
        AlphaParams(b, c, d, e)
        for b, c, d, e in product(roots, roots, roots, primitive_cube_roots_of_unity())
    ]


def enumerate_M3() -> List[CatalogEntry]:
    """54 alpha(b,c,d,eps) followed by their 54 transposes beta(b,c,d,eps)."""
    params = alpha_params_all()
    out = []
    for family, build in (("alpha", alpha), ("beta", beta)):
        for p in params:
            out.append(
                make_entry(f"{family}({_fmt(p.b, p.c, p.d, p.eps)})", family, p.as_tuple(), build(p))
            )
    return out


def enumerate_N3() -> List[CatalogEntry]:
    """12 eta(a,b,c,eps) followed by 6 theta(a,b,c)."""
    roots = cube_roots_of_minus_one()
    out = []
    for (a, b, c), e in product(permutations(roots), primitive_cube_roots_of_unity()):
        p = EtaParams(a, b, c, e)
        out.append(make_entry(f"eta({_fmt(a, b, c, e)})", "eta", p.as_tuple(), eta(p)))
    for a, b, c in permutations(roots):
        t = ThetaParams(a, b, c)
        out.append(make_entry(f"theta({_fmt(a, b, c)})", "theta", t.as_tuple(), theta(t)))
    return out


def enumerate_all() -> List[CatalogEntry]:
    return enumerate_two_gen() + enumerate_M3() + enumerate_N3()


def fitting_formula_ideal(p: TwoGenParams) -> Ideal:
    """<Y1 - a*Ys, Yi - b*Yj, Ys^2, Yj^2>."""
    y1, yi, yj, ys = _y(1), _y(p.i), _y(p.j), _y(p.s)
    return Ideal([y1 - p.a * ys, yi - p.b * yj, ys**2, yj**2])


def verify_entries(entries: Sequence[CatalogEntry]) -> List[CheckResult]:
    """
    Check every entry: factorization identities, det = f4, rank one, and
    for phi_ij the closed form of the first Fitting ideal.
    """
    results = []
    for entry in entries:
        problems = []
        try:
            mf = entry.as_mf()
            if det(entry.phi) != F4:
                problems.append("det(phi) != f4")
            r = rank_of_mf(mf)
            if r != 1:
                problems.append(f"rank {r} != 1")
        except MatrixFactorizationError as e:
            problems.append(str(e))
        if entry.family == "phi" and not problems:
            p = TwoGenParams(**{k: v for k, v in entry.params})
            if not ideal_equal(fitting_ideal(entry.phi, 1), fitting_formula_ideal(p)):
                problems.append("Fitt_1 differs from <Y1-aYs, Yi-bYj, Ys^2, Yj^2>")
        passed = not problems
        if not passed:
            logger.warning(f"Catalog check failed for {entry.name}: {'; '.join(problems)}")
        results.append(CheckResult(entry.name, passed, "; ".join(problems)))
    logger.info(f"Catalog checks: {sum(r.passed for r in results)}/{len(results)} passed")
    return results


# Completion of [[0, alpha, beta], [gamma, m, n], [delta, w, t]]


def _cubic_monomials() -> List[Tuple[int, ...]]:
    monos = set()
    for combo in combinations_with_replacement(range(4), 3):
        m = [0, 0, 0, 0]
        for k in combo:
            m[k] += 1
        monos.add(tuple(m))
    return sorted(monos, reverse=True)


def completion_system(
    alpha_: Poly, beta_: Poly, gamma_: Poly, delta_: Poly
) -> Tuple[List[List[CycNum]], List[CycNum]]:
    """
    Linear system for the coefficients of m, n, w, t (in that order, each
    over Y1..Y4) expressing -a*g*t + a*d*n + b*g*w - b*d*m = f4.

    Returns:
        20 x 16 coefficient matrix and the right-hand side (coefficients of f4)
    """
    monos = _cubic_monomials()
    blocks = [-(beta_ * delta_), alpha_ * delta_, beta_ * gamma_, -(alpha_ * gamma_)]
    columns = []
    for block in blocks:
        for k in range(1, 5):
            columns.append(block * _y(k))
    A = [[col.terms.get(m, CycNum()) for col in columns] for m in monos]
    rhs = [F4.terms.get(m, CycNum()) for m in monos]
    return A, rhs


def complete_factorization(
    alpha_: Poly, beta_: Poly, gamma_: Poly, delta_: Poly, variant: int = 0
) -> PolyMat:
    """
    Complete [[0, alpha, beta], [gamma, m, n], [delta, w, t]] with linear
    m, n, w, t so that the determinant is f4.

    Args:
        alpha_, beta_, gamma_, delta_: Independent linear forms in Y1..Y4 with
            f4 in (alpha, beta) and f4 in (gamma, delta)
        variant: 0 for the particular solution; k >= 1 adds the k-th
            nullspace vector, giving another completion

    Raises:
        CompletionError: If a hypothesis fails (the message names it) or the
            linear system has no solution
    """
    forms = [q.embed(YVARS) for q in (alpha_, beta_, gamma_, delta_)]
    if not are_independent_linear_forms(forms, Y_NAMES):
        raise CompletionError("alpha, beta, gamma, delta are not linearly independent")
    a, b, g, d = forms
    if not ideal_member(F4, Ideal([a, b])):
        raise CompletionError("f4 is not in (alpha, beta)")
    if not ideal_member(F4, Ideal([g, d])):
        raise CompletionError("f4 is not in (gamma, delta)")
    A, rhs = completion_system(a, b, g, d)
    x = solve(A, rhs)
    if x is None:
        raise CompletionError("completion system is infeasible")
    if variant:
        kernel = nullspace(A)
        if not kernel:
            raise CompletionError("completion is unique; no other variant exists")
        extra = kernel[(variant - 1) % len(kernel)]
        x = [u + v for u, v in zip(x, extra)]
    linear = [
        sum((x[4 * blk + k] * _y(k + 1) for k in range(4)), _zero()) for blk in range(4)
    ]
    m, n, w, t = linear
    result = _mat([[_zero(), a, b], [g, m, n], [d, w, t]])
    logger.debug(f"Completed factorization: {result}")
    return result


# (alpha, beta, gamma, delta) index pairs for each case layout
COMPLETION_SHAPES: Dict[str, Tuple[Tuple[int, int], ...]] = {
    "A": ((1, 4), (2, 3), (1, 2), (3, 4)),
    "B": ((1, 3), (2, 4), (1, 2), (3, 4)),
    "C": ((1, 4), (2, 3), (1, 3), (2, 4)),
    "D": ((1, 2), (3, 4), (1, 2), (3, 4)),
    "E": ((1, 3), (2, 4), (1, 3), (2, 4)),
    "F": ((1, 4), (2, 3), (1, 4), (2, 3)),
}


def random_completion_forms(rng: random.Random) -> Tuple[Poly, Poly, Poly, Poly]:
    """
    Random independent (alpha, beta, gamma, delta) of the shape Yi - r*Yj,
    each multiplied by a random nonzero scalar.
    """
    roots = cube_roots_of_minus_one()
    while True:
        shape = COMPLETION_SHAPES[rng.choice(sorted(COMPLETION_SHAPES))]
        forms = []
        for i, j in shape:
            scale = CycNum(rng.randint(1, 5), rng.randint(-3, 3)) * rng.choice((1, -1))
            forms.append((_y(i) - rng.choice(roots) * _y(j)) * scale)
        if are_independent_linear_forms(forms):
            return forms[0], forms[1], forms[2], forms[3]
