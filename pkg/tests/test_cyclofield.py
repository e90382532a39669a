"""
Tests for Q(e) arithmetic.
"""

import random
from fractions import Fraction

import pytest

from mfkit.cyclofield import (
    EPS,
    ONE,
    ZERO,
    CycNum,
    cube_roots_of_minus_one,
    cyc_add,
    cyc_inv,
    cyc_mul,
    cyc_neg,
    is_cube_root_of_minus_one,
    is_primitive_cube_root_of_unity,
    primitive_cube_roots_of_unity,
)


def _random_cyc(rng: random.Random) -> CycNum:
    return CycNum(Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.randint(-9, 9), rng.randint(1, 5)))


def test_eps_squared_rewrite():
    """Test that e^2 = -1 - e and e^3 = 1."""
    assert EPS * EPS == CycNum(-1, -1)
    assert EPS**3 == 1
    assert 1 + EPS + EPS * EPS == 0


def test_components_are_reduced_fractions():
    """Test that components are stored in lowest terms."""
    x = CycNum(Fraction(2, 4), Fraction(-6, 3))
    assert x.re == Fraction(1, 2)
    assert x.im == -2
    assert x == CycNum(Fraction(1, 2), -2)


def test_field_axioms_on_samples():
    """Test associativity, commutativity, distributivity and inverses on seeded samples."""
    rng = random.Random(1234)
    for _ in range(200):
        x, y, z = _random_cyc(rng), _random_cyc(rng), _random_cyc(rng)
        assert cyc_mul(cyc_mul(x, y), z) == cyc_mul(x, cyc_mul(y, z))
        assert x * y == y * x and x + y == y + x
        assert x * (y + z) == x * y + x * z
        assert cyc_add(x, cyc_neg(x)) == ZERO
        if x:
            assert x * cyc_inv(x) == ONE


def test_inverse_of_eps():
    """Test that 1/e = e^2 = -1 - e."""
    assert cyc_inv(EPS) == CycNum(-1, -1)
    assert 1 / EPS == EPS * EPS


def test_inverse_of_zero_raises():
    """Test that inverting zero raises ZeroDivisionError."""
    with pytest.raises(ZeroDivisionError):
        cyc_inv(ZERO)
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_norm_and_conjugate():
    """Test that x * conj(x) is the rational norm."""
    x = CycNum(3, -2)
    assert x.conjugate() == CycNum(5, 2)
    assert x * x.conjugate() == x.norm()
    assert x.norm() == 9 + 6 + 4


def test_negative_powers():
    """Test integer powers including negative exponents."""
    x = CycNum(2, 1)
    assert x**-2 * x**2 == ONE
    assert x**0 == ONE


def test_cube_roots_of_minus_one_order():
    """Test the fixed order -1, -e, -e^2 and that each cubes to -1."""
    roots = cube_roots_of_minus_one()
    assert roots == [CycNum(-1, 0), CycNum(0, -1), CycNum(1, 1)]
    assert all(r**3 == -1 for r in roots)
    assert len(set(roots)) == 3


def test_primitive_cube_roots():
    """Test e, e^2 are the primitive cube roots of unity."""
    prims = primitive_cube_roots_of_unity()
    assert prims == [EPS, CycNum(-1, -1)]
    assert all(is_primitive_cube_root_of_unity(p) for p in prims)
    assert not is_primitive_cube_root_of_unity(ONE)


def test_root_predicates():
    """Test the root-of-minus-one predicate."""
    assert is_cube_root_of_minus_one(-EPS)
    assert not is_cube_root_of_minus_one(EPS)


def test_mixed_scalar_equality_and_hash():
    """Test comparison and hashing against ints and Fractions."""
    assert CycNum(3) == 3
    assert CycNum(Fraction(1, 2)) == Fraction(1, 2)
    assert CycNum(3, 1) != 3
    assert hash(CycNum(3)) == hash(3)
    assert len({CycNum(1, 1), CycNum(1, 1), ONE}) == 2


def test_to_text():
    """Test rendering in the polynomial grammar."""
    assert CycNum(-1).to_text() == "-1"
    assert EPS.to_text() == "e"
    assert CycNum(0, -2).to_text() == "-2*e"
    assert CycNum(1, 1).to_text() == "(1+e)"
    assert CycNum(Fraction(1, 2), -1).to_text() == "(1/2-e)"


def test_is_rational():
    """Test rational elements print as plain fractions."""
    assert CycNum(Fraction(3, 4)).is_rational()
    assert (EPS + EPS * EPS).is_rational()
    assert not EPS.is_rational()
    assert (EPS + EPS * EPS).to_text() == "-1"
