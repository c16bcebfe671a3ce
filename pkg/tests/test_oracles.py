from fractions import Fraction

import pytest

from macwalk.expr import parse_xpoly
from macwalk.oracles import (
    E_via_operators,
    NotEigenvector,
    ZeroDenominator,
    apply_T,
    apply_T_inverse,
    apply_tau,
    apply_Y,
    check_eigen_relations,
    check_relations,
    eigenvalue,
    hall_littlewood,
    height_bounded_weights,
    rep_for,
    symmetrize_1_0,
    weyl_character,
)
from macwalk.ring import ParameterMap, RationalCoefficient, XPolynomial, specialize
from macwalk.rootsys import pairing
from macwalk.walks import E_polynomial, NotDominant, P_polynomial, weights_up_to_length

from strategies import RS

LABELS = ["A1", "A2", "B2", "C2", "G2"]


def test_demazure_lusztig_values_A1():
    a1 = RS["A1"]
    one = XPolynomial.one(1, 1)
    assert apply_T(a1, 1, one) == parse_xpoly("t^{1/2}", a1)
    assert apply_T(a1, 1, XPolynomial.monomial(1, (1,))) == parse_xpoly("t^{-1/2} X^{-w}", a1)
    assert apply_T_inverse(a1, 1, apply_T(a1, 1, XPolynomial.monomial(1, (3,)))) == XPolynomial.monomial(1, (3,))
    assert apply_Y(a1, (1,), one) == parse_xpoly("t", a1)


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "G2"])
def test_daha_relations(label):
    rs = RS[label]
    for mode in ("equal", "orbit"):
        report = check_relations(rs, ParameterMap(rs, mode), bound=8 if label == "G2" else 5, probes=3)
        required = {"quadratic", "inverse", "quadratic_vee0", "commutation_0", "commutation_1"}
        if rs.rank > 1:
            required |= {"braid", "braid_vee"}
        assert required <= set(report)
        for name, (checked, failed) in report.items():
            assert checked > 0, name
            assert failed == 0, name


@pytest.mark.parametrize("label", ["A2", "B2", "G2"])
def test_eigenvectors_and_intertwiners(label):
    rs = RS[label]
    mus = weights_up_to_length(rs, 4, dominant=False)
    report = check_eigen_relations(rs, mus, ParameterMap(rs, "orbit"))
    for name, (checked, failed) in report.items():
        assert checked > 0 and failed == 0, name


def test_eigenvalue_of_constant():
    a2 = RS["A2"]
    params = ParameterMap(a2)
    one = XPolynomial.one(1, 2)
    # Y^{lambda} 1 = t^{<lambda, rho>} for every coweight, here simple coroots and phi^vee
    for lam in [(1, 0), (0, 1), (1, 1)]:
        ev = eigenvalue(a2, (0, 0), lam, params)
        assert apply_Y(a2, lam, one, params) == one.scale(RationalCoefficient(ev))
        assert ev.terms == {(0, 2 * int(pairing(lam, a2.rho))): 1}


def test_not_an_eigenvector():
    a2 = RS["A2"]
    rep = rep_for(a2)
    f = XPolynomial.one(1, 2) + XPolynomial.monomial(1, (1, 0))
    with pytest.raises(NotEigenvector):
        rep.y_scalar((1, 0), 0, f)


def test_intertwiner_rejects_fixed_points():
    a1 = RS["A1"]
    with pytest.raises(ZeroDenominator):
        apply_tau(a1, 1, XPolynomial.one(1, 1), y_minus_alpha=RationalCoefficient.const(1))


@pytest.mark.parametrize("label", ["A1", "A2", "B2"])
def test_operators_agree_with_walks(label):
    rs = RS[label]
    params = ParameterMap(rs, "orbit")
    for mu in weights_up_to_length(rs, 5, dominant=False):
        assert E_via_operators(rs, mu, params) == E_polynomial(rs, mu, params), mu


@pytest.mark.parametrize("label", LABELS)
def test_symmetrizer_gives_raw_P(label):
    rs = RS[label]
    params = ParameterMap(rs, "orbit")
    for mu in weights_up_to_length(rs, 4):
        e = E_polynomial(rs, mu, params)
        assert symmetrize_1_0(rs, e, params) == P_polynomial(rs, mu, params, normalize=False)


def _weyl_dimension(rs, mu):
    num = den = Fraction(1)
    rho = rs.rho
    for g in rs.positive_coroots:
        num *= pairing(g, tuple(a + b for a, b in zip(mu, rho)))
        den *= pairing(g, rho)
    return num / den


@pytest.mark.parametrize("label", LABELS + ["A3"])
def test_weyl_character_dimension_and_symmetry(label):
    rs = RS[label]
    for mu in height_bounded_weights(rs, 4):
        if not rs.is_dominant(mu):
            continue
        ch = weyl_character(rs, mu)
        mults = [c.num.terms.get((0, 0), 0) for c in ch.terms.values()]
        assert all(c.is_laurent() and len(c.num.terms) == 1 for c in ch.terms.values())
        assert sum(mults) == _weyl_dimension(rs, mu)
        assert ch.coefficient(mu) == 1
        for i in range(1, rs.rank + 1):
            assert ch.act(rs.s(i)) == ch


@pytest.mark.parametrize("label", LABELS)
def test_hall_littlewood_at_t_zero_is_weyl_character(label):
    rs = RS[label]
    params = ParameterMap(rs, "orbit")
    for mu in weights_up_to_length(rs, 5):
        hl = hall_littlewood(rs, mu, params)
        assert specialize(hl, None, [0] * params.nv) == weyl_character(rs, mu, params.nv)
        assert hl.coefficient(mu) == 1


@pytest.mark.parametrize("label", LABELS)
def test_P_specializes_to_oracles(label):
    rs = RS[label]
    for mode in ("equal", "orbit"):
        params = ParameterMap(rs, mode)
        for mu in weights_up_to_length(rs, 6):
            p = P_polynomial(rs, mu, params)
            assert specialize(p, 0) == hall_littlewood(rs, mu, params), mu
            assert specialize(p, 0, 0) == weyl_character(rs, mu, params.nv), mu


def test_hall_littlewood_A2_rho():
    a2 = RS["A2"]
    assert hall_littlewood(a2, (1, 1)) == parse_xpoly("m_{w1+w2} + (2+t)(1-t)", a2)
    assert weyl_character(a2, (1, 1)) == parse_xpoly("m_{w1+w2} + 2", a2)
    with pytest.raises(NotDominant):
        hall_littlewood(a2, (-1, 0))
