import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from macwalk.affine import (
    AffineCoroot,
    ExtendedAffineElement,
    NonReducedWord,
    beta_sequence,
    check_reduced,
    finite,
    from_word,
    identity,
    is_right_descent,
    length,
    minimal_coset_rep,
    reduced_word,
    simple_reflection,
    step_side,
    translation,
    wall_of_step,
)
from macwalk.rootsys import is_positive, pairing

from strategies import RS, root_systems, weights, words


def _positive_affine(beta: AffineCoroot) -> bool:
    return beta.k > 0 or (beta.k == 0 and is_positive(beta.gamma))


@given(root_systems, st.data())
def test_translation_length_formula(rs, data):
    mu = data.draw(weights(rs))
    expected = sum(abs(pairing(g, mu)) for g in rs.positive_coroots)
    assert length(translation(rs, mu)) == expected


@given(root_systems, st.data())
def test_length_changes_by_one(rs, data):
    z = from_word(rs, data.draw(words(rs, 10, affine=True)), translation(rs, data.draw(weights(rs, -1, 1))))
    for j in range(rs.rank + 1):
        zs = z * simple_reflection(rs, j)
        assert abs(length(zs) - length(z)) == 1
        assert (length(zs) < length(z)) == is_right_descent(z, j)


@given(root_systems, st.data())
def test_reduced_word_round_trip(rs, data):
    z = from_word(rs, data.draw(words(rs, 10, affine=True)), translation(rs, data.draw(weights(rs))))
    g, word = reduced_word(z)
    assert length(g) == 0
    assert len(word) == length(z)
    assert from_word(rs, word, g) == z


@given(root_systems, st.data())
def test_side_depends_only_on_finite_part(rs, data):
    w = rs.from_word(data.draw(words(rs)))
    for mu in [(0,) * rs.rank, data.draw(weights(rs)), data.draw(weights(rs))]:
        z = ExtendedAffineElement(rs, mu, w)
        for j in range(rs.rank + 1):
            assert wall_of_step(z, j)[1] == step_side(rs, w, j)


@given(root_systems, st.data())
def test_crossing_switches_side(rs, data):
    z = from_word(rs, data.draw(words(rs, 8, affine=True)))
    for j in range(rs.rank + 1):
        wall, side = wall_of_step(z, j)
        wall2, side2 = wall_of_step(z * simple_reflection(rs, j), j)
        assert wall == wall2 and side == -side2


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "G2"])
def test_minimal_coset_representative_is_minimal(label):
    rs = RS[label]
    for mu in [(1,) * rs.rank, (-2,) + (1,) * (rs.rank - 1), (0,) * rs.rank, (2,) * rs.rank]:
        m = minimal_coset_rep(rs, mu)
        coset = [translation(rs, mu) * finite(rs, w) for w in rs.elements]
        assert m in coset
        assert length(m) == min(length(z) for z in coset)


@given(root_systems, st.data())
def test_betas_of_reduced_word_are_distinct_positive_inversions(rs, data):
    z = from_word(rs, data.draw(words(rs, 10, affine=True)))
    _, word = reduced_word(z)
    betas = beta_sequence(rs, word)
    assert len(set(betas)) == len(betas)
    assert all(_positive_affine(b) for b in betas)


def test_length_zero_elements_count_the_fundamental_group():
    for label, expected in [("A1", 2), ("A2", 3), ("B2", 2), ("G2", 1), ("A3", 4)]:
        rs = RS[label]
        gs = set()
        for mu in np.ndindex(*(4,) * rs.rank):
            gs.add(reduced_word(translation(rs, mu))[0])
        assert len(gs) == expected
        assert abs(round(np.linalg.det(rs.cartan))) == expected


def test_non_reduced_word_rejected():
    with pytest.raises(NonReducedWord):
        check_reduced(RS["A2"], [1, 1])
    assert length(check_reduced(RS["A2"], [1, 2, 0])) == 3


def test_json_round_trips():
    rs = RS["B2"]
    z = from_word(rs, [0, 1, 2], translation(rs, (1, -1)))
    assert ExtendedAffineElement.from_json(rs, z.to_json()) == z
    b = AffineCoroot((1, 2), 3)
    assert AffineCoroot.from_json(b.to_json()) == b
    assert identity(rs).to_json() == {"mu": [0, 0], "w": [[1, 0], [0, 1]]}
