"""
Tests for polynomial matrices and matrix factorizations.
"""

import random
from fractions import Fraction

import pytest

from mfkit.cyclofield import EPS, ONE, CycNum
from mfkit.groebner import buchberger, ideal_equal
from mfkit.matpoly import (
    ElementaryOp,
    ElementaryOpError,
    MatrixFactorization,
    MatrixFactorizationError,
    PolyMat,
    adjugate,
    apply_elementaries,
    apply_elementary,
    det,
    dual_mf,
    fitting_ideal,
    make_mf,
    mat_mul,
    minors,
    normalize_det,
    rank_of_mf,
    syzygy_mf,
    tensor_1x1,
    transpose,
)
from mfkit.multipoly import Poly, VarTable, f4, format_poly, parse_poly


@pytest.fixture
def V():
    return VarTable.ys()


@pytest.fixture
def F4(V):
    return f4(V)


def _random_linear_matrix(rng, V, n=3):
    names = V.names
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            p = Poly.zero(V)
            for name in rng.sample(names, 2):
                p = p + Poly.variable(V, name) * CycNum(rng.randint(-2, 2), rng.randint(-1, 1))
            row.append(p)
        rows.append(row)
    return PolyMat(rows)


@pytest.fixture
def tensor_mf(V, F4):
    y1, y2, y3, y4 = (Poly.variable(V, n) for n in V.names)
    return tensor_1x1(y1 + y2, y1**2 - y1 * y2 + y2**2, y3 + y4, y3**2 - y3 * y4 + y4**2)


def test_polymat_must_be_square(V):
    """Test that ragged or empty input is rejected."""
    with pytest.raises(ValueError):
        PolyMat.from_text([["Y1", "Y2"]], V)
    with pytest.raises(ValueError):
        PolyMat(())


def test_transpose_of_product(V):
    """Test (AB)^t = B^t A^t."""
    rng = random.Random(5)
    A, B = _random_linear_matrix(rng, V), _random_linear_matrix(rng, V)
    assert transpose(mat_mul(A, B)) == mat_mul(transpose(B), transpose(A))


@pytest.mark.slow
def test_adjugate_identity(V):
    """Test A * adj(A) = adj(A) * A = det(A) * I on random matrices."""
    rng = random.Random(9)
    for _ in range(100):
        A = _random_linear_matrix(rng, V)
        d = det(A)
        target = PolyMat.identity(3, V).map(lambda p: p * d)
        assert mat_mul(A, adjugate(A)) == target
        assert mat_mul(adjugate(A), A) == target


def test_det_against_sympy(V):
    """Test the cofactor determinant against sympy on a rational matrix."""
    sympy = pytest.importorskip("sympy")
    rows = [["Y1", "Y2+Y3", "2*Y4"], ["Y3-Y1", "0", "Y2"], ["Y4", "Y1-3*Y2", "Y3"]]
    A = PolyMat.from_text(rows, V)
    S = sympy.Matrix([[sympy.sympify(t) for t in r] for r in rows])
    ours = sympy.sympify(format_poly(det(A)).replace("^", "**"))
    assert sympy.expand(ours - S.det()) == 0


def test_minors_and_fitting_ideal(V):
    """Test minors counts and the Fitting ideal of a generic 2x2 matrix."""
    A = PolyMat.from_text([["Y1", "Y2"], ["Y3", "Y4"]], V)
    assert len(minors(A, 1)) == 4
    assert minors(A, 0) == [Poly.constant(V, ONE)]
    assert [format_poly(g) for g in fitting_ideal(A, 1)] == ["Y1", "Y2", "Y3", "Y4"]
    assert fitting_ideal(A, 0).generators == [det(A)]
    assert buchberger(fitting_ideal(A, 2)).is_trivial()
    with pytest.raises(ValueError):
        fitting_ideal(A, 3)


def test_tensor_of_linear_factors(tensor_mf, F4):
    """Test the tensor product of 1x1 factorizations is a rank-one factorization of f4."""
    assert tensor_mf.f == F4
    assert det(tensor_mf.phi) == F4
    assert rank_of_mf(tensor_mf) == 1


def test_tensor_rejects_wrong_factors(V):
    """Test tensor_1x1 checks the given products."""
    y1, y2 = Poly.variable(V, "Y1"), Poly.variable(V, "Y2")
    with pytest.raises(MatrixFactorizationError):
        tensor_1x1(y1, y2, y1, y2, f=y1**3)


def test_make_mf_names_offending_entry(tensor_mf, F4):
    """Test the verification error names the first bad product entry."""
    bad_psi = PolyMat(
        ((tensor_mf.psi[0, 0] + 1, tensor_mf.psi[0, 1]), (tensor_mf.psi[1, 0], tensor_mf.psi[1, 1]))
    )
    with pytest.raises(MatrixFactorizationError, match=r"phi\*psi entry \(0,0\)"):
        make_mf(tensor_mf.phi, bad_psi, F4)


def test_syzygy_and_dual_are_factorizations(tensor_mf, F4):
    """Test that swapping and transposing keep the factorization property."""
    for M in (syzygy_mf(tensor_mf), dual_mf(tensor_mf)):
        make_mf(M.phi, M.psi, F4)
        assert rank_of_mf(M) == 1


def test_rank_of_mf_edge_cases(V, F4):
    """Test rank 0 for the trivial factorization and errors for bad determinants."""
    one = PolyMat.identity(1, V)
    assert rank_of_mf(make_mf(one, PolyMat(((F4,),)), F4)) == 0
    assert rank_of_mf(make_mf(PolyMat(((F4 * 2,),)), PolyMat(((Poly.constant(V, Fraction(1, 2)),),)), F4)) == 1
    y1 = Poly.variable(V, "Y1")
    with pytest.raises(MatrixFactorizationError):
        rank_of_mf(MatrixFactorization(PolyMat(((y1,),)), PolyMat(((y1,),)), F4))


def test_normalize_det(tensor_mf, F4):
    """Test rescaling the first row to make det exactly f4."""
    scaled = PolyMat((tuple(p * EPS for p in tensor_mf.phi.rows[0]), tensor_mf.phi.rows[1]))
    fixed, s = normalize_det(scaled, F4)
    assert det(fixed) == F4
    assert s == EPS * EPS
    same, s = normalize_det(tensor_mf.phi, F4)
    assert same == tensor_mf.phi and s == 1
    with pytest.raises(MatrixFactorizationError):
        normalize_det(PolyMat.identity(2, tensor_mf.phi.vars), F4)


def test_elementary_operations(V):
    """Test swaps, scalings and additions on rows and columns."""
    A = PolyMat.from_text([["Y1", "Y2"], ["Y3", "Y4"]], V)
    assert apply_elementary(A, ElementaryOp("swap_rows", 0, 1)).to_text() == [["Y3", "Y4"], ["Y1", "Y2"]]
    assert apply_elementary(A, ElementaryOp("swap_cols", 0, 1)).to_text() == [["Y2", "Y1"], ["Y4", "Y3"]]
    assert apply_elementary(A, ElementaryOp("scale_col", 1, scalar=EPS)).to_text() == [
        ["Y1", "e*Y2"],
        ["Y3", "e*Y4"],
    ]
    added = apply_elementary(A, ElementaryOp("add_row", 0, 1, multiplier=parse_poly("2", V)))
    assert added.to_text() == [["Y1+2*Y3", "Y2+2*Y4"], ["Y3", "Y4"]]
    ops = [ElementaryOp("swap_rows", 0, 1), ElementaryOp("swap_rows", 0, 1)]
    assert apply_elementaries(A, ops) == A


def test_elementary_operation_errors(V):
    """Test invalid operation descriptions are rejected."""
    A = PolyMat.from_text([["Y1", "Y2"], ["Y3", "Y4"]], V)
    with pytest.raises(ElementaryOpError):
        apply_elementary(A, ElementaryOp("rotate", 0, 1))
    with pytest.raises(ElementaryOpError):
        apply_elementary(A, ElementaryOp("swap_rows", 0, 2))
    with pytest.raises(ElementaryOpError):
        apply_elementary(A, ElementaryOp("scale_row", 0, scalar=CycNum(0)))
    with pytest.raises(ElementaryOpError):
        apply_elementary(A, ElementaryOp("add_col", 1, 1, multiplier=parse_poly("1", V)))
    with pytest.raises(ElementaryOpError):
        apply_elementary(A, ElementaryOp("add_row", 0, 1))


@pytest.mark.slow
def test_fitting_ideal_invariant_under_elementary_operations(V):
    """Test Fitt_1 is unchanged by invertible row and column operations."""
    rng = random.Random(21)
    A = PolyMat.from_text([["Y1+Y4", "-(Y2^2-Y2*Y3+Y3^2)"], ["Y2+Y3", "Y1^2-Y1*Y4+Y4^2"]], V)
    base = fitting_ideal(A, 1)
    names = list(V.names)
    for _ in range(100):
        ops = [
            ElementaryOp("add_row", 0, 1, multiplier=Poly.variable(V, rng.choice(names))),
            ElementaryOp("scale_col", rng.randint(0, 1), scalar=CycNum(rng.randint(1, 3), rng.randint(-1, 1))),
            ElementaryOp("add_col", 1, 0, multiplier=Poly.constant(V, rng.randint(-2, 2))),
        ]
        B = apply_elementaries(A, ops)
        assert ideal_equal(fitting_ideal(B, 1), base)
