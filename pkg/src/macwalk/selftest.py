"""Built-in check suites behind ``macwalk selftest``.

Each suite returns ``(checked, failed)``; ``run_all`` yields one row per suite
with its wall time.
"""

from __future__ import annotations

import time
from unittest import mock

from . import walks as walks_mod
from .affine import from_word, length, reduced_word, step_side
from .expr import parse_xpoly
from .oracles import (
    E_via_operators,
    check_eigen_relations,
    check_relations,
    hall_littlewood,
    weyl_character,
)
from .ring import ParameterMap, XPolynomial, specialize
from .rootsys import build_root_system
from .walks import E_polynomial, P_polynomial, count_walks, walk_plan, weights_up_to_length

GOLDEN_E_A1 = "X^{-2w} + (1-t)/(1-q t) + X^{2w}(1-t)/(1-q^2 t) + q(1-t)^2/((1-q^2 t)(1-q t))"
GOLDEN_P_A1 = "X^{2w} + X^{-2w} + (1+q)(1-t)/(1-q t)"
GOLDEN_P_A2 = "m_{w1+w2} + (t+2+2 t q+q)(1-t)/(1-t^2 q)"
GOLDEN_E_A2 = (
    "t^{1/2}(X^{-2w1+w2} + (1-t)/(1-t^2 q) + X^{-w1+2w2}(1-t)/(1-t q)"
    " + t (1-t)q/(1-t^2 q) (1-t)/(1-t q) + X^{2w1-w2}(1-t)/(1-t^2 q^2)"
    " + t (1-t)q/(1-t^2 q) (1-t)/(1-t^2 q^2) + X^{w1+w2}(1-t)/(1-t q) (1-t)/(1-t^2 q^2)"
    " + (1-t)q/(1-t^2 q) (1-t)/(1-t q) (1-t)/(1-t^2 q^2))"
)
SPEC_HL_A2 = "m_{w1+w2} + (2+t)(1-t)"
SPEC_WEYL_A2 = "m_{w1+w2} + 2"

SMALL_TYPES = (("A", 1), ("A", 2), ("B", 2), ("G", 2))


def _rs(t, r):
    return build_root_system(t, r)


def golden_checks(method: str = "kernel") -> dict:
    a1, a2 = _rs("A", 1), _rs("A", 2)
    results = {
        "E_A1_-2w": E_polynomial(a1, (-2,), method=method) == parse_xpoly(GOLDEN_E_A1, a1),
        "P_A1_2w": P_polynomial(a1, (2,), method=method) == parse_xpoly(GOLDEN_P_A1, a1),
        "P_A2_rho": P_polynomial(a2, (1, 1), method=method) == parse_xpoly(GOLDEN_P_A2, a2)
        and count_walks(a2, (1, 1), "P") == 12,
        "E_A2_s1s2rho": E_polynomial(a2, (-2, 1), method=method) == parse_xpoly(GOLDEN_E_A2, a2)
        and count_walks(a2, (-2, 1), "E") == 8,
    }
    return results


def suite_goldens():
    r = golden_checks()
    return len(r), sum(not ok for ok in r.values())


def suite_specializations():
    a2 = _rs("A", 2)
    p = P_polynomial(a2, (1, 1))
    checks = [
        specialize(p, 0) == parse_xpoly(SPEC_HL_A2, a2),
        specialize(p, 0, 0) == parse_xpoly(SPEC_WEYL_A2, a2),
        specialize(XPolynomial.one(1, 2), 3, 4) == XPolynomial.one(1, 2),
    ]
    return len(checks), sum(not c for c in checks)


def suite_symmetric_oracles(max_len: int):
    checked = failed = 0
    for t, r in SMALL_TYPES:
        rs = _rs(t, r)
        for mode in ("equal", "orbit"):
            params = ParameterMap(rs, mode)
            for mu in weights_up_to_length(rs, max_len):
                p = P_polynomial(rs, mu, params)
                checked += 2
                failed += specialize(p, 0) != hall_littlewood(rs, mu, params)
                failed += specialize(p, 0, 0) != weyl_character(rs, mu, params.nv)
    return checked, failed


def suite_operator_oracle(max_len: int):
    checked = failed = 0
    for t, r in SMALL_TYPES[:3]:
        rs = _rs(t, r)
        params = ParameterMap(rs, "orbit")
        for mu in weights_up_to_length(rs, max_len, dominant=False):
            checked += 1
            failed += E_via_operators(rs, mu, params) != E_polynomial(rs, mu, params)
    return checked, failed


def suite_relations(bound: int):
    checked = failed = 0
    for t, r in SMALL_TYPES[:3]:
        rs = _rs(t, r)
        for c, f in check_relations(rs, ParameterMap(rs, "orbit"), bound=bound).values():
            checked += c
            failed += f
    return checked, failed


def suite_eigen(max_len: int):
    checked = failed = 0
    for t, r in SMALL_TYPES[:3]:
        rs = _rs(t, r)
        mus = weights_up_to_length(rs, max_len, dominant=False)
        for c, f in check_eigen_relations(rs, mus, ParameterMap(rs, "orbit")).values():
            checked += c
            failed += f
    return checked, failed


def structural_checks(rs, mu, params) -> list[bool]:
    """Walk counts, W0-symmetry of P, foldless top term of E."""
    plan = walk_plan(rs, mu)
    out = [
        count_walks(rs, mu, "E") == 2 ** len(plan.word),
        count_walks(rs, mu, "P") == len(rs.elements) * 2 ** len(plan.word),
    ]
    e = E_polynomial(rs, mu, params)
    foldless = next(walks_mod.walk_terms(plan, params, plan.g))
    out.append(foldless.wt == tuple(mu) and e.coefficient(mu) == foldless.coefficient)
    if rs.is_dominant(mu):
        p = P_polynomial(rs, mu, params)
        out.append(all(p.act(w) == p for w in rs.elements))
    return out


def suite_structure(max_len: int):
    checks = []
    for t, r in SMALL_TYPES:
        rs = _rs(t, r)
        params = ParameterMap(rs, "orbit")
        for mu in weights_up_to_length(rs, max_len, dominant=False):
            checks += structural_checks(rs, mu, params)
    return len(checks), sum(not c for c in checks)


def suite_reduced_words(max_len: int):
    checked = failed = 0
    for t, r in SMALL_TYPES:
        rs = _rs(t, r)
        for mu in weights_up_to_length(rs, max_len, dominant=False):
            plan = walk_plan(rs, mu)
            z = from_word(rs, plan.word, plan.g)
            g2, word2 = reduced_word(z)
            checked += 1
            failed += not (g2 == plan.g and tuple(word2) == plan.word and length(z) == len(plan.word))
    return checked, failed


def suite_mutations():
    """The goldens must notice a flipped fold sign and a reversed wall order."""
    a1, a2 = _rs("A", 1), _rs("A", 2)
    detected = []
    with mock.patch.object(walks_mod, "step_side", lambda rs, w, j: -step_side(rs, w, j)):
        detected.append(E_polynomial(a1, (-2,), method="reference") != parse_xpoly(GOLDEN_E_A1, a1))
    real = walks_mod.beta_sequence
    with mock.patch.object(walks_mod, "beta_sequence", lambda rs, word: list(reversed(real(rs, word)))):
        detected.append(E_polynomial(a2, (-2, 1), method="reference") != parse_xpoly(GOLDEN_E_A2, a2))
    return len(detected), sum(not d for d in detected)


def suites(quick: bool = False):
    n = 4 if quick else 6
    return [
        ("goldens", suite_goldens),
        ("specializations", suite_specializations),
        ("hall_littlewood_and_weyl_oracles", lambda: suite_symmetric_oracles(n)),
        ("operator_oracle", lambda: suite_operator_oracle(n - 1)),
        ("daha_relations", lambda: suite_relations(n)),
        ("eigenvector_and_intertwiners", lambda: suite_eigen(n - 2)),
        ("walk_structure", lambda: suite_structure(n - 1)),
        ("reduced_word_round_trip", lambda: suite_reduced_words(n)),
        ("mutation_sensitivity", suite_mutations),
    ]


def run_all(quick: bool = False):
    for name, fn in suites(quick):
        t0 = time.perf_counter()
        checked, failed = fn()
        yield name, int(checked), int(failed), time.perf_counter() - t0
