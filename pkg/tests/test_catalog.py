"""
Tests for the catalog of rank-one factorizations.
"""

import random
from itertools import permutations

import pytest

from mfkit.catalog import (
    F4,
    YVARS,
    AlphaParams,
    CompletionError,
    EtaParams,
    ParameterConstraintError,
    RawCaseParams,
    ThetaParams,
    TwoGenParams,
    alpha,
    alpha_params_all,
    alpha_twist,
    beta,
    complete_factorization,
    d_cycle,
    def_matrix,
    enumerate_all,
    enumerate_M3,
    enumerate_N3,
    enumerate_two_gen,
    eta,
    fitting_formula_ideal,
    make_entry,
    phi_ij,
    random_completion_forms,
    raw_case,
    theta,
    verify_entries,
)
from mfkit.cyclofield import EPS, ONE, cube_roots_of_minus_one
from mfkit.groebner import ideal_equal
from mfkit.matpoly import MatrixFactorizationError, det, fitting_ideal, normalize_det, transpose
from mfkit.multipoly import parse_poly

ROOTS = cube_roots_of_minus_one()


@pytest.fixture(scope="module")
def two_gen():
    return enumerate_two_gen()


@pytest.fixture(scope="module")
def n3():
    return enumerate_N3()


def test_family_sizes(two_gen, n3):
    """Test the enumerators produce 54, 108 and 18 entries with unique names."""
    m3 = enumerate_M3()
    assert len(two_gen) == 54
    assert len(m3) == 108
    assert len(n3) == 18
    names = [e.name for e in two_gen + m3 + n3]
    assert len(set(names)) == len(names)
    assert [e.family for e in two_gen[:27]] == ["phi"] * 27
    assert [e.family for e in n3[12:]] == ["theta"] * 6


def test_entry_names(two_gen):
    """Test entry names carry the family, index pair and roots."""
    assert two_gen[0].name == "phi_23(-1,-1)"
    assert two_gen[27].name == "psi_23(-1,-1)"
    assert two_gen[0].params_text() == {"i": "2", "j": "3", "a": "-1", "b": "-1"}


def test_entries_have_det_f4(two_gen, n3):
    """Test every entry is normalized to det(phi) = f4."""
    for entry in two_gen + n3:
        assert det(entry.phi) == F4


def test_verify_two_generated_and_n3(two_gen, n3):
    """Test the factorization checks pass on the two-generated and N3 entries."""
    results = verify_entries(two_gen + n3)
    assert len(results) == 72
    assert all(r.passed for r in results), [r for r in results if not r.passed]


@pytest.mark.slow
def test_verify_whole_catalog():
    """Test every catalog entry passes its checks."""
    results = verify_entries(enumerate_all())
    assert len(results) == 180
    assert all(r.passed for r in results)


def test_verify_reports_broken_entry(two_gen):
    """Test a corrupted partner matrix is reported with the offending entry."""
    good = two_gen[0]
    bad = type(good)(good.name, good.family, good.params, good.phi, good.phi)
    (result,) = verify_entries([bad])
    assert not result.passed
    assert "entry" in result.detail


def test_entry_as_mf(two_gen):
    """Test an entry converts to a checked factorization and a corrupted one does not."""
    good = two_gen[0]
    mf = good.as_mf()
    assert mf.phi == good.phi and mf.f == F4
    bad = type(good)(good.name, good.family, good.params, good.phi, good.phi)
    with pytest.raises(MatrixFactorizationError):
        bad.as_mf()


def test_fitting_formula_matches_minors():
    """Test Fitt_1(phi_ij) = <Y1 - a*Ys, Yi - b*Yj, Ys^2, Yj^2> for every pair."""
    for i, j in ((2, 3), (2, 4), (3, 4)):
        p = TwoGenParams(i, j, ROOTS[1], ROOTS[2])
        assert ideal_equal(fitting_ideal(phi_ij(p), 1), fitting_formula_ideal(p))


def test_two_gen_parameter_constraints():
    """Test invalid index pairs and non-roots are rejected."""
    with pytest.raises(ParameterConstraintError):
        TwoGenParams(2, 2, -1, -1)
    with pytest.raises(ParameterConstraintError):
        TwoGenParams(3, 2, -1, -1)
    with pytest.raises(ParameterConstraintError):
        TwoGenParams(2, 3, 1, -1)
    assert TwoGenParams(2, 4, -1, -1).s == 3


def test_alpha_parameter_constraints():
    """Test eps must be primitive and a = bcd/eps."""
    with pytest.raises(ParameterConstraintError):
        AlphaParams(-1, -1, -1, 1)
    with pytest.raises(ParameterConstraintError):
        AlphaParams(EPS, -1, -1, EPS)
    p = AlphaParams(-1, -EPS, -1, EPS)
    assert p.b * p.c * p.d == p.eps * p.a
    assert len(alpha_params_all()) == 54


def test_raw_case_constraints():
    """Test the per-case scalar conditions."""
    with pytest.raises(ParameterConstraintError):
        RawCaseParams("G", -1, -1, -1, -1)
    with pytest.raises(ParameterConstraintError):
        RawCaseParams("A", -1, -1, -1, -1, EPS)
    with pytest.raises(ParameterConstraintError):
        RawCaseParams("A", -1, -1, -1, -1)
    with pytest.raises(ParameterConstraintError):
        RawCaseParams("D", -1, -1, -1, -EPS)
    with pytest.raises(ParameterConstraintError):
        RawCaseParams("D", -1, -1, -EPS, -EPS, EPS)
    with pytest.raises(ParameterConstraintError):
        RawCaseParams.from_triples("A", ROOTS, ROOTS)
    with pytest.raises(ParameterConstraintError):
        EtaParams(-1, -1, -EPS, EPS)
    with pytest.raises(ParameterConstraintError):
        ThetaParams(-1, -1, -1)


def test_raw_a_is_alpha():
    """Test the A case with a = bcd/eps is alpha and At is beta."""
    for p in alpha_params_all()[:6]:
        args = (p.a, p.b, p.c, p.d, p.eps)
        assert raw_case(RawCaseParams("A", *args)) == alpha(p)
        assert raw_case(RawCaseParams("At", *args)) == beta(p) == transpose(alpha(p))


def test_raw_cases_are_scalar_multiples_of_f4():
    """Test every D, E, F matrix has det f4 and every A matrix a scalar multiple of it."""
    for case in ("D", "E", "F"):
        for first in permutations(ROOTS):
            for second in permutations(ROOTS):
                assert det(def_matrix(case, first, second)) == F4
    for p in alpha_params_all():
        normalize_det(alpha(p), F4)


def test_alpha_twist_is_involution():
    """Test the twist has order two and no fixed points."""
    for p in alpha_params_all():
        q = alpha_twist(p)
        assert q != p
        assert alpha_twist(q) == p


def test_d_tuple_with_eps_first_triple_is_eta():
    """Test D((-1,-e,-e^2),(p,q,r)) coincides with eta(p,q,r,e)."""
    for e in (EPS, EPS * EPS):
        for p, q, r in permutations(ROOTS):
            assert def_matrix("D", (-ONE, -e, -e * e), (p, q, r)) == eta(EtaParams(p, q, r, e))


def test_e_tuple_is_theta():
    """Test E((-1,-y,-y^2),(p,q,r)) with y = -p^2*q coincides with theta(p,q,r)."""
    for p, q, r in permutations(ROOTS):
        y = -p * p * q
        assert def_matrix("E", (-ONE, -y, -y * y), (p, q, r)) == theta(ThetaParams(p, q, r))


def test_d_cycle_rotates_tuples():
    """Test the elementary operations send D((a,b,c),(p,q,r)) to D((c,a,b),(q,r,p))."""
    for a, b, c in permutations(ROOTS):
        for p, q, r in permutations(ROOTS):
            src = def_matrix("D", (a, b, c), (p, q, r))
            assert d_cycle(src) == def_matrix("D", (c, a, b), (q, r, p))
            assert det(d_cycle(src)) == det(src)


def test_make_entry_partner_is_adjugate():
    """Test make_entry rescales and verifies the factorization."""
    p = TwoGenParams(3, 4, -1, EPS * EPS * -1)
    scaled = phi_ij(p).scale(2)
    entry = make_entry("custom", "phi", p.as_tuple(), scaled, verify=True)
    assert det(entry.phi) == F4
    assert entry.det_scale * 4 == 1


def test_complete_factorization_random_forms():
    """Test completions of random admissible forms have det f4."""
    rng = random.Random(2024)
    for _ in range(20):
        forms = random_completion_forms(rng)
        M = complete_factorization(*forms)
        assert det(M) == F4
        assert M[0, 0].is_zero()
        assert M[0, 1] == forms[0]


def test_complete_factorization_variant():
    """Test a nonzero variant is another completion."""
    forms = [parse_poly(t, YVARS) for t in ("Y1+Y4", "Y2+Y3", "Y1+e*Y2", "Y3+Y4")]
    base = complete_factorization(*forms)
    other = complete_factorization(*forms, variant=1)
    assert det(base) == det(other) == F4
    assert base != other


def test_complete_factorization_rejects_bad_forms():
    """Test dependent forms and forms not killing f4 are refused."""
    dependent = [parse_poly(t, YVARS) for t in ("Y1+Y2", "Y3+Y4", "Y1+e*Y3", "Y2+e*Y4")]
    with pytest.raises(CompletionError, match="not linearly independent"):
        complete_factorization(*dependent)
    plain = [parse_poly(t, YVARS) for t in ("Y1", "Y2", "Y3", "Y4")]
    with pytest.raises(CompletionError, match=r"not in \(alpha, beta\)"):
        complete_factorization(*plain)
