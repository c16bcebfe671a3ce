"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) or under pytest.  Timings
are wall clock after the numba kernels have been compiled once.
"""

import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from macwalk.affine import from_word, identity
from macwalk.expr import parse_xpoly
from macwalk.oracles import (
    E_via_operators,
    apply_Y,
    check_relations,
    eigenvalue,
    hall_littlewood,
    weyl_character,
)
from macwalk.ring import ParameterMap, RationalCoefficient, t_half
from macwalk.rootsys import build_root_system
from macwalk.selftest import (
    GOLDEN_E_A1,
    GOLDEN_E_A2,
    GOLDEN_P_A1,
    GOLDEN_P_A2,
    SPEC_HL_A2,
    SPEC_WEYL_A2,
    structural_checks,
)
from macwalk.ring import specialize
from macwalk.walks import (
    E_polynomial,
    P_polynomial,
    count_walks,
    enumerate_walks,
    synthetic_sum,
    walk_plan,
    weights_up_to_length,
)

ORACLE_SETS = [("A", 1, 10), ("A", 2, 10), ("B", 2, 10), ("G", 2, 10), ("A", 3, 8)]
OPERATOR_SETS = [("A", 1, 8), ("A", 2, 8), ("B", 2, 8)]


def report(number: int, title: str, ok: bool, seconds: float, limit: float | None = None, detail: str = ""):
    within = limit is None or seconds < limit
    status = "PASS" if ok and within else "FAIL"
    budget = f" (limit {limit:g}s)" if limit is not None else ""
    line = f"[{status}] criterion {number:2d}: {title}: {seconds:.3f}s{budget}"
    if detail:
        line += f"  {detail}"
    print(line, flush=True)
    return ok and within


@pytest.fixture(scope="module", autouse=True)
def warm_kernels():
    # compile the kernels on an unrelated input so timings exclude numba compilation
    b2 = build_root_system("B", 2)
    P_polynomial(b2, (1, 1), ParameterMap(b2, "orbit"))
    P_polynomial(b2, (1, 0))


@pytest.fixture(scope="module")
def oracle_weights():
    out = {}
    for t, r, n in ORACLE_SETS:
        rs = build_root_system(t, r)
        out[(t, r)] = (rs, weights_up_to_length(rs, n))
    return out


@pytest.fixture(scope="module")
def operator_weights():
    out = {}
    for t, r, n in OPERATOR_SETS:
        rs = build_root_system(t, r)
        out[(t, r)] = (rs, weights_up_to_length(rs, n, dominant=False))
    return out


def _params(rs):
    return ParameterMap(rs, "orbit" if rs.n_orbits > 1 else "equal")


def test_criterion_01_golden_E_A1(capsys):
    a1 = build_root_system("A", 1)
    expected = parse_xpoly(GOLDEN_E_A1, a1)
    t0 = time.perf_counter()
    e = E_polynomial(a1, (-2,))
    dt = time.perf_counter() - t0
    with capsys.disabled():
        assert report(1, "golden E_{-2w} in A1", e == expected, dt, 0.1)


def test_criterion_02_golden_P_A1(capsys):
    a1 = build_root_system("A", 1)
    expected = parse_xpoly(GOLDEN_P_A1, a1)
    t0 = time.perf_counter()
    p = P_polynomial(a1, (2,))
    dt = time.perf_counter() - t0
    with capsys.disabled():
        assert report(2, "golden P_{2w} in A1", p == expected, dt, 0.1)


def test_criterion_03_golden_P_A2(capsys):
    a2 = build_root_system("A", 2)
    expected = parse_xpoly(GOLDEN_P_A2, a2)
    t0 = time.perf_counter()
    p = P_polynomial(a2, (1, 1))
    n = count_walks(a2, (1, 1), "P")
    dt = time.perf_counter() - t0
    with capsys.disabled():
        assert report(3, "golden P_rho in A2 from 12 walks", p == expected and n == 12, dt, 0.1, f"walks={n}")


def test_criterion_04_golden_E_A2(capsys):
    a2 = build_root_system("A", 2)
    expected = parse_xpoly(GOLDEN_E_A2, a2)
    t0 = time.perf_counter()
    e = E_polynomial(a2, (-2, 1))
    n = count_walks(a2, (-2, 1), "E")
    dt = time.perf_counter() - t0
    with capsys.disabled():
        assert report(4, "golden E_{s1s2rho} in A2 from 8 walks", e == expected and n == 8, dt, 0.1, f"walks={n}")


def test_criterion_05_specializations_A2(capsys):
    a2 = build_root_system("A", 2)
    hl, weyl = parse_xpoly(SPEC_HL_A2, a2), parse_xpoly(SPEC_WEYL_A2, a2)
    t0 = time.perf_counter()
    p = P_polynomial(a2, (1, 1))
    ok = specialize(p, 0) == hl and specialize(p, 0, 0) == weyl
    dt = time.perf_counter() - t0
    with capsys.disabled():
        assert report(5, "P_rho(0,t) and P_rho(0,0) in A2", ok, dt, 0.1)


def test_criterion_06_hall_littlewood_oracle(capsys, oracle_weights):
    t0 = time.perf_counter()
    checked = failed = 0
    for rs, mus in oracle_weights.values():
        params = _params(rs)
        for mu in mus:
            checked += 1
            failed += specialize(P_polynomial(rs, mu, params), 0) != hall_littlewood(rs, mu, params)
    dt = time.perf_counter() - t0
    with capsys.disabled():
        assert report(6, "P(q=0) == Hall-Littlewood", failed == 0, dt, 300, f"weights={checked} failed={failed}")


def test_criterion_07_weyl_character_oracle(capsys, oracle_weights):
    t0 = time.perf_counter()
    checked = failed = 0
    for rs, mus in oracle_weights.values():
        params = _params(rs)
        for mu in mus:
            checked += 1
            failed += specialize(P_polynomial(rs, mu, params), 0, 0) != weyl_character(rs, mu, params.nv)
    dt = time.perf_counter() - t0
    with capsys.disabled():
        assert report(7, "P(q=0,t=0) == Weyl character", failed == 0, dt, 300, f"weights={checked} failed={failed}")


def test_criterion_08_operator_oracle(capsys, operator_weights):
    t0 = time.perf_counter()
    checked = failed = 0
    for rs, mus in operator_weights.values():
        params = _params(rs)
        for mu in mus:
            checked += 1
            failed += E_via_operators(rs, mu, params) != E_polynomial(rs, mu, params)
    dt = time.perf_counter() - t0
    with capsys.disabled():
        assert report(8, "operator E == walk E", failed == 0, dt, 300, f"weights={checked} failed={failed}")


def test_criterion_09_eigenvectors(capsys, operator_weights):
    t0 = time.perf_counter()
    checked = failed = 0
    for rs, mus in operator_weights.values():
        params = _params(rs)
        lams = [tuple(int(i == j) for j in range(rs.rank)) for i in range(rs.rank)] + [tuple(rs.highest_coroot)]
        for mu in mus:
            e = E_polynomial(rs, mu, params)
            for lam in lams:
                checked += 1
                ev = RationalCoefficient(eigenvalue(rs, mu, lam, params))
                failed += apply_Y(rs, lam, e, params).normalize() != e.scale(ev).normalize()
    dt = time.perf_counter() - t0
    with capsys.disabled():
        assert report(9, "Y^lambda E_mu == eigenvalue * E_mu", failed == 0, dt, None, f"checks={checked} failed={failed}")


def test_criterion_10_daha_relations(capsys):
    t0 = time.perf_counter()
    checked = failed = 0
    names = set()
    for t, r in [("A", 1), ("A", 2), ("B", 2)]:
        rs = build_root_system(t, r)
        for name, (c, f) in check_relations(rs, _params(rs), bound=8).items():
            names.add(name)
            checked += c
            failed += f
    dt = time.perf_counter() - t0
    ok = failed == 0 and {"quadratic", "braid", "commutation_0", "commutation_1"} <= names
    with capsys.disabled():
        assert report(10, "quadratic, braid and X-commutation relations", ok, dt, None, f"checks={checked} violations={failed}")


def _braid_variants(rs, word):
    """Words differing from ``word`` by one commuting swap."""
    for k in range(len(word) - 1):
        i, j = word[k], word[k + 1]
        if i != j and from_word(rs, [i, j]) == from_word(rs, [j, i]):
            yield word[:k] + (j, i) + word[k + 2:]


def test_criterion_11_structural_invariants(capsys, oracle_weights):
    t0 = time.perf_counter()
    checked = failed = 0
    for (t, r), (rs, mus) in oracle_weights.items():
        params = _params(rs)
        for mu in mus[:12]:
            for ok in structural_checks(rs, mu, params):
                checked += 1
                failed += not ok
    swaps = 0
    for t, r in [("A", 3), ("B", 2), ("G", 2)]:
        rs = build_root_system(t, r)
        params = _params(rs)
        for mu in weights_up_to_length(rs, 6, dominant=False)[:40]:
            plan = walk_plan(rs, mu)
            e = E_polynomial(rs, mu, params)
            for word in _braid_variants(rs, plan.word):
                swaps += 1
                failed += synthetic_sum(rs, word, params, plan.g) != e
    checked += swaps
    dt = time.perf_counter() - t0
    with capsys.disabled():
        assert report(
            11, "walk counts, top terms, W0-symmetry, word independence", failed == 0 and swaps > 0, dt, None,
            f"checks={checked} failed={failed}",
        )


def test_criterion_12_scale(capsys):
    a2 = build_root_system("A", 2)
    t0 = time.perf_counter()
    p = P_polynomial(a2, (2, 2))
    ok = all(p.act(w) == p for w in a2.elements)
    ok &= specialize(p, 0) == hall_littlewood(a2, (2, 2))
    t_big = time.perf_counter() - t0
    # a reduced word of length 16: the minimal coset representative of X^{-8 w1}
    plan = walk_plan(a2, (-8, 0))
    assert len(plan.word) == 16
    t1 = time.perf_counter()
    walks = sum(1 for _ in enumerate_walks(identity(a2), plan.word))
    total = synthetic_sum(a2, plan.word, ParameterMap(a2), plan.g)
    dt = time.perf_counter() - t1
    top = RationalCoefficient.monomial(t_half(from_word(a2, plan.word, plan.g).w, ParameterMap(a2)))
    ok &= walks == 65536 and total.coefficient((-8, 0)) == top
    with capsys.disabled():
        assert report(
            12, "A2 P_{2rho} and a length-16 word (65536 walks)", ok, dt, 60,
            f"P_2rho={t_big:.3f}s walks={walks} terms={len(total.terms)}",
        )


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
