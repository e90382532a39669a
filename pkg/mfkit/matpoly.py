"""
Polynomial matrices and matrix factorizations.

Square matrices over the polynomial ring with products, cofactor
determinants, adjugates, minors and Fitting ideals; the matrix factorization
type with its verification; syzygy, dual and 1x1 tensor constructions; the
rank of the associated module; elementary row and column operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .cyclofield import ONE, CycNum, Scalar
from .groebner import Ideal
from .logger import get_logger
from .multipoly import OrderLike, Poly, VarTable, as_order, exact_div, format_poly, parse_poly

logger = get_logger("matpoly")


class MatrixFactorizationError(ValueError):
    """Raised when a pair of matrices is not a matrix factorization."""


class ElementaryOpError(ValueError):
    """Raised for an invalid elementary operation description."""


@dataclass(frozen=True)
class PolyMat:
    """Square matrix of polynomials sharing one VarTable."""

    rows: Tuple[Tuple[Poly, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("PolyMat must be square and non-empty")
        tables = {p.vars for r in rows for p in r}
        if len(tables) != 1:
            raise ValueError("PolyMat entries use different variable tables")

    @classmethod
    def from_text(cls, rows: Sequence[Sequence[str]], vars: VarTable) -> PolyMat:
        return cls(tuple(tuple(parse_poly(s, vars) for s in r) for r in rows))

    @classmethod
    def identity(cls, n: int, vars: VarTable) -> PolyMat:
        return cls.scalar(n, ONE, vars)

    @classmethod
    def scalar(cls, n: int, c: Scalar, vars: VarTable) -> PolyMat:
        zero = Poly.zero(vars)
        diag = Poly.constant(vars, c)
        return cls(tuple(tuple(diag if i == j else zero for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def vars(self) -> VarTable:
        return self.rows[0][0].vars

    def __getitem__(self, ij: Tuple[int, int]) -> Poly:
        i, j = ij
        return self.rows[i][j]

    def map(self, fn: Callable[[Poly], Poly]) -> PolyMat:
        return PolyMat(tuple(tuple(fn(p) for p in r) for r in self.rows))

    def embed(self, vars: VarTable) -> PolyMat:
        return self.map(lambda p: p.embed(vars))

    def scale(self, c: Scalar) -> PolyMat:
        return self.map(lambda p: p * c)

    def __mul__(self, other: PolyMat) -> PolyMat:
        return mat_mul(self, other)

    def __add__(self, other: PolyMat) -> PolyMat:
        _check_size(self, other)
        return PolyMat(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __sub__(self, other: PolyMat) -> PolyMat:
        return self + other.scale(-1)

    def is_zero(self) -> bool:
        return all(p.is_zero() for r in self.rows for p in r)

    def to_text(self, order: OrderLike = None) -> List[List[str]]:
        return [[format_poly(p, order) for p in r] for r in self.rows]

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(r) + "]" for r in self.to_text()) + "]"


def _check_size(A: PolyMat, B: PolyMat) -> None:
    if A.n != B.n:
        raise ValueError(f"Size mismatch: {A.n}x{A.n} vs {B.n}x{B.n}")


def mat_mul(A: PolyMat, B: PolyMat) -> PolyMat:
    _check_size(A, B)
    n = A.n
    zero = Poly.zero(A.vars)
    return PolyMat(
        tuple(
            tuple(sum((A[i, k] * B[k, j] for k in range(n)), zero) for j in range(n))
            for i in range(n)
        )
    )


def transpose(A: PolyMat) -> PolyMat:
    return PolyMat(tuple(zip(*A.rows)))


def _submatrix(rows: Sequence[Sequence[Poly]], drop_row: int, drop_col: int) -> List[List[Poly]]:
    return [
        [p for j, p in enumerate(r) if j != drop_col] for i, r in enumerate(rows) if i != drop_row
    ]


def _det_rows(rows: Sequence[Sequence[Poly]], vars: VarTable) -> Poly:
    n = len(rows)
    if n == 0:
        return Poly.constant(vars, ONE)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = Poly.zero(vars)
    for j, entry in enumerate(rows[0]):
        if entry.is_zero():
            continue
        minor = _det_rows(_submatrix(rows, 0, j), vars)
        total = total + entry * minor if j % 2 == 0 else total - entry * minor
    return total


def det(A: PolyMat) -> Poly:
    """Determinant by cofactor expansion along the first row."""
    return _det_rows(A.rows, A.vars)


def adjugate(A: PolyMat) -> PolyMat:
    """
    Transpose of the cofactor matrix, so that A * adjugate(A) = det(A) * I.
    """
    n = A.n
    if n == 1:
        return PolyMat.identity(1, A.vars)
    cof = [
        [
            _det_rows(_submatrix(A.rows, i, j), A.vars) * (1 if (i + j) % 2 == 0 else -1)
            for j in range(n)
        ]
        for i in range(n)
    ]
    return PolyMat(tuple(tuple(cof[i][j] for i in range(n)) for j in range(n)))


def minors(A: PolyMat, k: int) -> List[Poly]:
    """All k x k minors, rows and columns taken in increasing order; k = 0 gives [1]."""
    if k < 0 or k > A.n:
        raise ValueError(f"Minor size {k} out of range for a {A.n}x{A.n} matrix")
    if k == 0:
        return [Poly.constant(A.vars, ONE)]
    out = []
    for rs in combinations(range(A.n), k):
        for cs in combinations(range(A.n), k):
            out.append(_det_rows([[A[i, j] for j in cs] for i in rs], A.vars))
    return out


def fitting_ideal(A: PolyMat, t: int, order: OrderLike = None) -> Ideal:
    """
    Fitt_t(A): the ideal of (n - t) x (n - t) minors.

    Fitt_0 is generated by det(A) and Fitt_n is the unit ideal.

    Example:
        >>> V = VarTable.ys()
        >>> A = PolyMat.from_text([["Y1", "Y2"], ["Y3", "Y4"]], V)
        >>> [str(g) for g in fitting_ideal(A, 1)]
        ['Y1', 'Y2', 'Y3', 'Y4']
    """
    if t < 0 or t > A.n:
        raise ValueError(f"Fitting index {t} out of range 0..{A.n}")
    return Ideal(minors(A, A.n - t), as_order(order), A.vars)


# Matrix factorizations


@dataclass(frozen=True)
class MatrixFactorization:
    """A pair (phi, psi) with phi * psi = psi * phi = f * I."""

    phi: PolyMat
    psi: PolyMat
    f: Poly

    @property
    def n(self) -> int:
        return self.phi.n


def _first_mismatch(P: PolyMat, target: PolyMat) -> Optional[Tuple[int, int]]:
    for i in range(P.n):
        for j in range(P.n):
            if P[i, j] != target[i, j]:
                return i, j
    return None


def make_mf(phi: PolyMat, psi: PolyMat, f: Poly) -> MatrixFactorization:
    """
    Build a matrix factorization after checking both products.

    Raises:
        MatrixFactorizationError: Naming the first offending product entry
    """
    _check_size(phi, psi)
    target = PolyMat.scalar(phi.n, ONE, phi.vars).map(lambda p: p * f)
    for label, product in (("phi*psi", mat_mul(phi, psi)), ("psi*phi", mat_mul(psi, phi))):
        bad = _first_mismatch(product, target)
        if bad is not None:
            i, j = bad
            raise MatrixFactorizationError(
                f"{label} entry ({i},{j}) is {product[i, j]}, expected {target[i, j]}"
            )
    return MatrixFactorization(phi, psi, f)


def syzygy_mf(M: MatrixFactorization) -> MatrixFactorization:
    return MatrixFactorization(M.psi, M.phi, M.f)


def dual_mf(M: MatrixFactorization) -> MatrixFactorization:
    return MatrixFactorization(transpose(M.phi), transpose(M.psi), M.f)


def rank_of_mf(M: MatrixFactorization) -> int:
    """
    The f-adic valuation r of det(phi) = unit * f^r.

    Raises:
        MatrixFactorizationError: If det(phi) is zero or not a unit times a power of f
    """
    d = det(M.phi)
    if d.is_zero():
        raise MatrixFactorizationError("det(phi) is zero")
    r = 0
    while True:
        q = exact_div(d, M.f)
        if q is None:
            break
        d = q
        r += 1
    if not d.is_constant():
        raise MatrixFactorizationError(f"det(phi) has a non-unit cofactor {d}")
    return r


def tensor_1x1(
    a1: Poly, a2: Poly, b1: Poly, b2: Poly, f: Optional[Poly] = None, g: Optional[Poly] = None
) -> MatrixFactorization:
    """
    Tensor product of the 1x1 factorizations (a1, a2) of f and (b1, b2) of g.

    Returns the 2x2 factorization of f + g with phi = [[a1, -b1], [b2, a2]]
    and psi = [[a2, b1], [-b2, a1]].

    Raises:
        MatrixFactorizationError: If a1 * a2 != f or b1 * b2 != g
    """
    if f is not None and a1 * a2 != f:
        raise MatrixFactorizationError(f"a1*a2 = {a1 * a2} is not {f}")
    if g is not None and b1 * b2 != g:
        raise MatrixFactorizationError(f"b1*b2 = {b1 * b2} is not {g}")
    phi = PolyMat(((a1, -b1), (b2, a2)))
    psi = PolyMat(((a2, b1), (-b2, a1)))
    return make_mf(phi, psi, a1 * a2 + b1 * b2)


def normalize_det(phi: PolyMat, f: Poly) -> Tuple[PolyMat, CycNum]:
    """
    Rescale the first row so that det = f exactly.

    Returns:
        The rescaled matrix and the scalar applied to the first row

    Raises:
        MatrixFactorizationError: If det(phi) is not a nonzero scalar multiple of f
    """
    d = det(phi)
    q = exact_div(d, f) if not d.is_zero() else None
    if q is None or not q.is_constant():
        raise MatrixFactorizationError(f"det = {d} is not a scalar multiple of {f}")
    s = q.constant_value().inverse()
    if s == 1:
        return phi, s
    logger.debug(f"Rescaling first row by {s.to_text()} to reach det = f")
    rows = list(phi.rows)
    rows[0] = tuple(p * s for p in rows[0])
    return PolyMat(tuple(rows)), s


# Elementary operations

ELEMENTARY_KINDS = ("swap_rows", "swap_cols", "scale_row", "scale_col", "add_row", "add_col")


@dataclass(frozen=True)
class ElementaryOp:
    """
    One elementary transformation, 0-based.

    ``swap_*`` exchanges i and j; ``scale_*`` multiplies i by a nonzero
    scalar; ``add_*`` adds ``multiplier`` times j to i.
    """

    kind: str
    i: int
    j: Optional[int] = None
    scalar: Optional[CycNum] = None
    multiplier: Optional[Poly] = None


def _validate_op(A: PolyMat, op: ElementaryOp) -> None:
    if op.kind not in ELEMENTARY_KINDS:
        raise ElementaryOpError(f"Unknown elementary operation '{op.kind}'")
    indices = [op.i] if op.kind.startswith("scale") else [op.i, op.j]
    for k in indices:
        if k is None or not 0 <= k < A.n:
            raise ElementaryOpError(f"{op.kind}: index {k} out of range for size {A.n}")
    if op.kind.startswith("scale") and (op.scalar is None or not CycNum.coerce(op.scalar)):
        raise ElementaryOpError(f"{op.kind} needs a nonzero scalar")
    if op.kind.startswith("add"):
        if op.i == op.j:
            raise ElementaryOpError(f"{op.kind} needs two different indices")
        if op.multiplier is None:
            raise ElementaryOpError(f"{op.kind} needs a multiplier")


def apply_elementary(A: PolyMat, op: ElementaryOp) -> PolyMat:
    """
    Apply one elementary operation; the cokernel is unchanged up to isomorphism.

    Raises:
        ElementaryOpError: For an unknown kind, bad index, zero scalar or missing multiplier
    """
    _validate_op(A, op)
    cols = op.kind.endswith("col") or op.kind.endswith("cols")
    M = [list(r) for r in (transpose(A).rows if cols else A.rows)]
    if op.kind.startswith("swap"):
        M[op.i], M[op.j] = M[op.j], M[op.i]
    elif op.kind.startswith("scale"):
        M[op.i] = [p * op.scalar for p in M[op.i]]
    else:
        mult = op.multiplier.embed(A.vars)
        M[op.i] = [p + mult * q for p, q in zip(M[op.i], M[op.j])]
    result = PolyMat(tuple(tuple(r) for r in M))
    return transpose(result) if cols else result


def apply_elementaries(A: PolyMat, ops: Iterable[ElementaryOp]) -> PolyMat:
    for op in ops:
        A = apply_elementary(A, op)
    return A
