"""
Exact dense linear algebra over Q(e).

Row reduction, linear solves, nullspaces and independence tests for linear
forms. Matrices are plain lists of rows of CycNum.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .cyclofield import ONE, ZERO, CycNum, Scalar
from .multipoly import Poly, degree, is_homogeneous

ScalarMat = List[List[CycNum]]


class LinearFormError(ValueError):
    """Raised when a polynomial is not a linear form."""


def to_scalar_mat(rows: Sequence[Sequence[Scalar]]) -> ScalarMat:
    mat = [[CycNum.coerce(x) for x in row] for row in rows]
    if mat and any(len(r) != len(mat[0]) for r in mat):
        raise ValueError("Matrix rows have different lengths")
    return mat


def rref_pivots(M: Sequence[Sequence[Scalar]]) -> Tuple[ScalarMat, List[int]]:
    """
    Reduced row-echelon form together with the pivot columns.

    Example:
        >>> R, pivots = rref_pivots([[2, 4], [1, 2]])
        >>> pivots
        [0]
    """
    R = to_scalar_mat(M)
    rows = len(R)
    cols = len(R[0]) if R else 0
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = next((i for i in range(r, rows) if R[i][c]), None)
        if pivot is None:
            continue
        R[r], R[pivot] = R[pivot], R[r]
        inv = R[r][c].inverse()
        R[r] = [x * inv for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c]:
                factor = R[i][c]
                R[i] = [x - factor * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rref(M: Sequence[Sequence[Scalar]]) -> Tuple[ScalarMat, int]:
    """Return (reduced row-echelon form, rank)."""
    R, pivots = rref_pivots(M)
    return R, len(pivots)


def rank(M: Sequence[Sequence[Scalar]]) -> int:
    return rref(M)[1]


def mat_vec(A: Sequence[Sequence[CycNum]], x: Sequence[CycNum]) -> List[CycNum]:
    return [sum((a * b for a, b in zip(row, x)), ZERO) for row in A]


def solve(A: Sequence[Sequence[Scalar]], b: Sequence[Scalar]) -> Optional[List[CycNum]]:
    """
    Solve A x = b, setting free variables to zero.

    Returns:
        A solution vector, or None if the system is inconsistent
    """
    if len(A) != len(b):
        raise ValueError(f"Dimension mismatch: {len(A)} rows but {len(b)} right-hand sides")
    cols = len(A[0]) if A else 0
    augmented = [list(row) + [rhs] for row, rhs in zip(A, b)]
    R, pivots = rref_pivots(augmented)
    if cols in pivots:
        return None
    x = [ZERO] * cols
    for row, c in zip(R, pivots):
        x[c] = row[cols]
    return x


def nullspace(A: Sequence[Sequence[Scalar]]) -> List[List[CycNum]]:
    """Basis of {x : A x = 0}, one vector per free column."""
    R, pivots = rref_pivots(A)
    cols = len(R[0]) if R else 0
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * cols
        v[f] = ONE
        for row, c in zip(R, pivots):
            v[c] = -row[f]
        basis.append(v)
    return basis


def linear_form_coefficients(form: Poly, names: Optional[Sequence[str]] = None) -> List[CycNum]:
    """
    Coefficient vector of a linear form over ``names`` (default: its table).

    Raises:
        LinearFormError: If the form is not homogeneous of degree one
    """
    if form.is_zero():
        raise LinearFormError("Zero polynomial is not a linear form")
    if degree(form) != 1 or not is_homogeneous(form):
        raise LinearFormError(f"{form} is not a linear form")
    names = list(names or form.vars.names)
    coeffs = []
    for name in names:
        i = form.vars.index(name)
        mono = tuple(1 if k == i else 0 for k in range(len(form.vars)))
        coeffs.append(form.terms.get(mono, ZERO))
    if any(v not in names for v in form.variables_used()):
        raise LinearFormError(f"{form} uses variables outside {names}")
    return coeffs


def are_independent_linear_forms(
    forms: Sequence[Poly], names: Optional[Sequence[str]] = None
) -> bool:
    """
    True iff the coefficient vectors of the forms are linearly independent.

    Raises:
        LinearFormError: If an input is not a linear form
    """
    if not forms:
        return True
    vectors = [linear_form_coefficients(f, names) for f in forms]
    return rank(vectors) == len(forms)
