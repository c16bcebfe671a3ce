import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from macwalk import walks
from macwalk.affine import (
    NonReducedWord,
    from_word,
    identity,
    simple_coroot,
    simple_reflection,
    step_side,
)
from macwalk.expr import parse_xpoly
from macwalk.ring import ParameterMap, t_half, RationalCoefficient
from macwalk.selftest import GOLDEN_E_A1, GOLDEN_E_A2, GOLDEN_P_A1, GOLDEN_P_A2
from macwalk.walks import (
    E_polynomial,
    NotDominant,
    P_polynomial,
    count_walks,
    enumerate_walks,
    expand_intertwiner_product,
    synthetic_sum,
    walk_plan,
    walk_terms,
    weights_up_to_length,
)

from strategies import RS

METHODS = ["kernel", "reference"]
SHORT = {label: weights_up_to_length(RS[label], 8, dominant=False) for label in ["A2", "B2", "G2"]}
SHORT_DOMINANT = {label: weights_up_to_length(RS[label], 8) for label in ["A2", "B2", "G2"]}
labels = st.sampled_from(["A2", "B2", "G2"])


@pytest.mark.parametrize("method", METHODS)
def test_golden_A1(method):
    a1 = RS["A1"]
    assert E_polynomial(a1, (-2,), method=method) == parse_xpoly(GOLDEN_E_A1, a1)
    assert P_polynomial(a1, (2,), method=method) == parse_xpoly(GOLDEN_P_A1, a1)


@pytest.mark.parametrize("method", METHODS)
def test_golden_A2(method):
    a2 = RS["A2"]
    assert P_polynomial(a2, (1, 1), method=method) == parse_xpoly(GOLDEN_P_A2, a2)
    assert E_polynomial(a2, (-2, 1), method=method) == parse_xpoly(GOLDEN_E_A2, a2)


def test_trivial_weight():
    for label in ["A1", "A2", "G2"]:
        rs = RS[label]
        zero = (0,) * rs.rank
        assert E_polynomial(rs, zero) == parse_xpoly("1", rs)
        assert P_polynomial(rs, zero) == parse_xpoly("1", rs)


def test_unnormalized_P_of_zero():
    # the raw sum over W0 starts for the empty word, recorded from brute evaluation
    a1 = RS["A1"]
    for method in METHODS:
        assert P_polynomial(a1, (0,), normalize=False, method=method) == parse_xpoly("t^{-1/2}(1+t)", a1)
    # regular weights need no normalization
    assert P_polynomial(a1, (2,), normalize=False) == P_polynomial(a1, (2,))


def test_walk_counts_from_the_examples():
    a1, a2 = RS["A1"], RS["A2"]
    assert len(list(enumerate_walks(identity(a1), [1, 0]))) == 4
    assert len(list(enumerate_walks(identity(a2), [1, 2, 0]))) == 8
    assert count_walks(a2, (1, 1), "P") == 12
    assert count_walks(a2, (-2, 1), "E") == 8
    assert count_walks(a1, (0,), "E") == 1
    (empty,) = enumerate_walks(identity(a2), [])
    assert empty.end == identity(a2) and empty.steps == ()


def test_intertwiner_expansion_A1():
    a1 = RS["A1"]
    terms = list(expand_intertwiner_product(identity(a1), [1, 0]))
    assert len(terms) == 4
    end, plus, minus = terms[2]
    beta = simple_reflection(a1, 0).act_on_coroot(simple_coroot(a1, 1))
    assert end.mu == (2,) and end.w == a1.s(1)
    assert plus == [(0, beta)] and minus == []
    assert list(expand_intertwiner_product(identity(a1), [])) == [(identity(a1), [], [])]
    with pytest.raises(NonReducedWord):
        list(expand_intertwiner_product(identity(a1), [1, 1]))


@settings(max_examples=25)
@given(labels, st.data())
def test_kernel_matches_reference(label, data):
    rs = RS[label]
    params = ParameterMap(rs, data.draw(st.sampled_from(["equal", "orbit"])))
    mu = data.draw(st.sampled_from(SHORT[label]))
    assert E_polynomial(rs, mu, params) == E_polynomial(rs, mu, params, method="reference")
    dom = data.draw(st.sampled_from([m for m in SHORT_DOMINANT[label] if len(walk_plan(rs, m).word) <= 6]))
    assert P_polynomial(rs, dom, params) == P_polynomial(rs, dom, params, method="reference")


@given(labels, st.data())
def test_walk_count_and_foldless_top_term(label, data):
    rs = RS[label]
    mu = data.draw(st.sampled_from(SHORT[label]))
    params = ParameterMap(rs, "orbit")
    plan = walk_plan(rs, mu)
    all_walks = list(enumerate_walks(plan.g, plan.word))
    assert len(all_walks) == 2 ** len(plan.word) == count_walks(rs, mu)
    assert len({w.steps for w in all_walks}) == len(all_walks)
    foldless = all_walks[0]
    assert all(s.kind == "crossing" for s in foldless.steps)
    assert foldless.end == from_word(rs, plan.word, plan.g)
    assert foldless.wt == mu
    # only the foldless walk ends at X^mu; its weight is t_half(m)
    hits = [t for t in walk_terms(plan, params, plan.g) if t.wt == mu]
    assert len(hits) == 1
    assert hits[0].coefficient == RationalCoefficient.monomial(t_half(foldless.phi, params))


@given(labels, st.data())
def test_P_is_W0_symmetric(label, data):
    rs = RS[label]
    mu = data.draw(st.sampled_from(SHORT_DOMINANT[label]))
    p = P_polynomial(rs, mu, ParameterMap(rs, "orbit"))
    for i in range(1, rs.rank + 1):
        assert p.act(rs.s(i)) == p


def _braid_order(rs, i, j):
    m, prod = 1, from_word(rs, [i, j])
    z = prod
    while z != identity(rs):
        z, m = z * prod, m + 1
    return m


def _braid_moves(rs, word):
    """Words obtained by one braid move; commuting swaps are the ``m = 2`` case."""
    for k in range(len(word)):
        for length in range(2, 7):
            seg = word[k:k + length]
            if len(seg) < length or len(set(seg)) != 2:
                continue
            i, j = seg[0], seg[1]
            if any(seg[n] != (i if n % 2 == 0 else j) for n in range(length)):
                continue
            if _braid_order(rs, i, j) == length:
                other = tuple(j if n % 2 == 0 else i for n in range(length))
                yield word[:k] + other + word[k + length:]


@pytest.mark.parametrize("label", ["A2", "A3", "B2", "G2"])
def test_E_independent_of_reduced_word(label):
    rs = RS[label]
    params = ParameterMap(rs, "orbit")
    tried = commuting = 0
    for mu in weights_up_to_length(rs, 6, dominant=False)[:60]:
        plan = walk_plan(rs, mu)
        e = E_polynomial(rs, mu, params)
        for word in _braid_moves(rs, plan.word):
            tried += 1
            commuting += sum(a != b for a, b in zip(word, plan.word)) == 2
            assert synthetic_sum(rs, word, params, plan.g) == e
    assert tried > 0
    if label != "A2":
        assert commuting > 0


def test_P_requires_dominant_weight():
    with pytest.raises(NotDominant):
        P_polynomial(RS["A2"], (-1, 1))


def test_long_words_fall_back_to_reference(monkeypatch):
    a2 = RS["A2"]
    expected = E_polynomial(a2, (-2, 1))
    monkeypatch.setattr(walks, "MAX_KERNEL_LENGTH", 1)
    assert E_polynomial(a2, (-2, 1)) == expected


def test_threaded_summation_agrees(monkeypatch):
    g2 = RS["G2"]
    expected = P_polynomial(g2, (1, 1))
    monkeypatch.setenv("MACWALK_THREADS", "4")
    assert P_polynomial(g2, (1, 1)) == expected


# ------------------------------------------------------------- mutation tests
def test_flipped_fold_sign_breaks_golden(monkeypatch):
    a1 = RS["A1"]
    monkeypatch.setattr(walks, "step_side", lambda rs, w, j: -step_side(rs, w, j))
    assert E_polynomial(a1, (-2,), method="reference") != parse_xpoly(GOLDEN_E_A1, a1)


def test_reversed_wall_order_breaks_golden(monkeypatch):
    a2 = RS["A2"]
    real = walks.beta_sequence
    monkeypatch.setattr(walks, "beta_sequence", lambda rs, word: list(reversed(real(rs, word))))
    assert E_polynomial(a2, (-2, 1), method="reference") != parse_xpoly(GOLDEN_E_A2, a2)
