"""Alcove walks and the walk expansions of ``E_mu`` and ``P_mu``.

A walk of type ``(i_1, ..., i_l)`` starts at an alcove and at step ``k``
either crosses its ``i_k``-wall or folds back off it.  Each fold carries the
factor ``v^{-1}(1 - t)/(1 - Y_k)``, with an extra ``Y_k`` in the numerator
when the walker sits on the negative side, where ``Y_k = Y^{-beta_k} 1``.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import _kernels
from .affine import (
    ExtendedAffineElement,
    NonReducedWord,
    beta_sequence,
    finite,
    from_word,
    identity,
    length,
    minimal_coset_rep,
    reduced_word,
    simple_reflection,
    step_side,
)
from .ring import (
    LaurentPoly,
    ParameterMap,
    RationalCoefficient,
    XPolynomial,
    eval_Y_one,
    t_half,
)
from .rootsys import FiniteWeylElement, RootSystem

MAX_KERNEL_LENGTH = 24


class NotDominant(ValueError):
    pass


@dataclass(frozen=True)
class Step:
    i: int
    kind: str  # "crossing" or "fold"
    sign: int = 0  # side of the walker for folds: +1 or -1

    def to_json(self) -> dict:
        d = {"i": self.i, "kind": self.kind}
        if self.kind == "fold":
            d["sign"] = "+" if self.sign > 0 else "-"
        return d


@dataclass
class AlcoveWalk:
    start: ExtendedAffineElement
    word: tuple
    steps: tuple
    end: ExtendedAffineElement

    @property
    def folds_plus(self) -> list[int]:
        return [k for k, s in enumerate(self.steps) if s.kind == "fold" and s.sign > 0]

    @property
    def folds_minus(self) -> list[int]:
        return [k for k, s in enumerate(self.steps) if s.kind == "fold" and s.sign < 0]

    @property
    def wt(self) -> tuple:
        return self.end.mu

    @property
    def phi(self) -> FiniteWeylElement:
        return self.end.w


@dataclass
class WalkTerm:
    wt: tuple
    phi: FiniteWeylElement
    coefficient: RationalCoefficient
    walk: AlcoveWalk | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        out = {
            "start": self.walk.start.to_json() if self.walk else None,
            "steps": [s.to_json() for s in self.walk.steps] if self.walk else [],
            "wt": list(self.wt),
            "phi_word": self.phi.reduced_word(),
            "coeff": self.coefficient.to_json(),
        }
        return out


def enumerate_walks(start: ExtendedAffineElement, word) -> Iterator[AlcoveWalk]:
    """All ``2^l`` walks of the given type, depth first, crossing before fold."""
    rs = start.rs
    word = tuple(word)
    gens = {j: simple_reflection(rs, j) for j in set(word)}

    def rec(k, cur, steps):
        if k == len(word):
            yield AlcoveWalk(start, word, tuple(steps), cur)
            return
        j = word[k]
        steps.append(Step(j, "crossing"))
        yield from rec(k + 1, cur * gens[j], steps)
        steps[-1] = Step(j, "fold", step_side(rs, cur.w, j))
        yield from rec(k + 1, cur, steps)
        steps.pop()

    yield from rec(0, start, [])


def expand_intertwiner_product(v: ExtendedAffineElement, word):
    """``X^v tau_w`` as ``(end, [(k, beta_k)] positive folds, [(k, beta_k)] negative folds)``."""
    rs = v.rs
    if length(from_word(rs, word)) != len(word):
        raise NonReducedWord(f"word {list(word)} is not reduced")
    betas = beta_sequence(rs, word)
    for p in enumerate_walks(v, word):
        yield (
            p.end,
            [(k, betas[k]) for k in p.folds_plus],
            [(k, betas[k]) for k in p.folds_minus],
        )


@dataclass(frozen=True)
class WalkPlan:
    """Everything about ``X^mu m`` the expansions need."""

    rs: RootSystem
    mu: tuple
    g: ExtendedAffineElement
    word: tuple
    betas: tuple


def walk_plan(rs: RootSystem, mu) -> WalkPlan:
    mu = tuple(int(x) for x in mu)
    if len(mu) != rs.rank:
        raise ValueError(f"weight {mu} has the wrong length for rank {rs.rank}")
    g, word = reduced_word(minimal_coset_rep(rs, mu))
    return WalkPlan(rs, mu, g, tuple(word), tuple(beta_sequence(rs, word)))


def _fold_factor(params: ParameterMap, node: int, y: tuple, negative: bool) -> RationalCoefficient:
    nv = params.nv
    vm = params.v_of_node(node, -1)
    vp = params.v_of_node(node, 1)
    num = LaurentPoly(nv, {vm: 1, vp: -1})
    if negative:
        num = num.shift(y)
    return RationalCoefficient(num, {(y[0], tuple(y[1:])): 1})


def walk_terms(plan: WalkPlan, params: ParameterMap, start: ExtendedAffineElement, prefactor=None):
    """Per-walk terms ``X^wt t_half(phi) prod(fold factors)`` (times ``prefactor``)."""
    rs = plan.rs
    ys = [eval_Y_one(b, rs, params) for b in plan.betas]
    for p in enumerate_walks(start, plan.word):
        c = RationalCoefficient.monomial(t_half(p.phi, params))
        if prefactor is not None:
            c = c * prefactor
        for k, s in enumerate(p.steps):
            if s.kind == "fold":
                c = c * _fold_factor(params, s.i, ys[k], s.sign < 0)
        yield WalkTerm(p.wt, p.phi, c, p)


def _sum_terms(terms, nv, rank) -> XPolynomial:
    acc: dict = {}
    for t in terms:
        acc[t.wt] = acc[t.wt] + t.coefficient if t.wt in acc else t.coefficient
    return XPolynomial(nv, rank, acc).normalize()


def _prefactor_exp(rs, params, v: FiniteWeylElement) -> tuple:
    return tuple(-x for x in t_half(rs.longest_element * v, params))


def _check_dominant(rs, mu):
    if not rs.is_dominant(mu):
        raise NotDominant(f"weight {tuple(mu)} is not dominant")


# ----------------------------------------------------------------- reference
def E_polynomial_reference(rs: RootSystem, mu, params: ParameterMap) -> XPolynomial:
    """Walk-by-walk symbolic summation (slow, independent of the kernels)."""
    plan = walk_plan(rs, mu)
    return _sum_terms(walk_terms(plan, params, plan.g), params.nv, rs.rank)


def P_polynomial_reference(rs: RootSystem, mu, params: ParameterMap, normalize: bool = True) -> XPolynomial:
    _check_dominant(rs, mu)
    plan = walk_plan(rs, mu)

    def all_terms():
        for v in rs.elements:
            pref = RationalCoefficient.monomial(_prefactor_exp(rs, params, v))
            yield from walk_terms(plan, params, finite(rs, v) * plan.g, pref)

    raw = _sum_terms(all_terms(), params.nv, rs.rank)
    return _monic(raw, plan.mu) if normalize else raw


# ------------------------------------------------------------------- kernels
class _Tables:
    """Integer tables over W_0 used by the kernels."""

    def __init__(self, rs: RootSystem, params: ParameterMap):
        elems = rs.elements
        self.elems = elems
        self.index = {w: i for i, w in enumerate(elems)}
        n = rs.rank
        size = len(elems)
        self.right_mult = np.zeros((size, n + 1), dtype=np.int64)
        self.shift = np.zeros((size, n + 1, n), dtype=np.int64)
        self.side = np.zeros((size, n + 1), dtype=np.int64)
        self.tl = np.zeros((size, 2), dtype=np.int64)
        gens = [simple_reflection(rs, j) for j in range(n + 1)]
        for a, w in enumerate(elems):
            z = finite(rs, w)
            for j in range(n + 1):
                zz = z * gens[j]
                self.right_mult[a, j] = self.index[zz.w]
                self.shift[a, j] = zz.mu
                self.side[a, j] = step_side(rs, w, j)
            self.tl[a, : params.nv] = t_half(w, params)[1:]


_TABLE_CACHE: dict = {}


def _get_tables(rs, params) -> _Tables:
    key = (id(rs), params.mode, params.nv)
    hit = _TABLE_CACHE.get(key)
    if hit is None or hit[0] is not rs:
        hit = (rs, _Tables(rs, params))
        _TABLE_CACHE[key] = hit
    return hit[1]


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("MACWALK_THREADS", "1")))
    except ValueError:
        return 1


def _kernel_sum(plan: WalkPlan, params: ParameterMap, starts) -> XPolynomial:
    """Sum walk terms from the given ``(start element, prefactor exponents)`` list."""
    rs = plan.rs
    nv = params.nv
    L = len(plan.word)
    if L > MAX_KERNEL_LENGTH:
        raise ValueError(f"word length {L} exceeds the kernel limit {MAX_KERNEL_LENGTH}")
    tab = _get_tables(rs, params)
    word = np.array(plan.word, dtype=np.int64)
    ys = [eval_Y_one(b, rs, params) for b in plan.betas]
    yq = np.array([y[0] for y in ys], dtype=np.int64).reshape(L)
    yv = np.zeros((L, 2), dtype=np.int64)
    for k, y in enumerate(ys):
        yv[k, :nv] = y[1:]
    var = np.array([params.node_var(i) for i in plan.word], dtype=np.int64).reshape(L)

    # exponent box: q in [0, sum j], v_o in [-(folds in o) - pref, sum e + folds + tl]
    qmax = int(yq.sum())
    lo = np.zeros(2, dtype=np.int64)
    hi = np.zeros(2, dtype=np.int64)
    prefs = [np.array(list(p) + [0] * (2 - nv), dtype=np.int64) for _, p in starts]
    for o in range(2):
        steps_o = int((var == o).sum()) if o < nv else 0
        lo[o] = -steps_o + min(int(p[o]) for p in prefs)
        hi[o] = int(yv[:, o].sum()) + steps_o + int(tab.tl[:, o].max()) + max(int(p[o]) for p in prefs)
    shape = np.array([qmax + 1, hi[0] - lo[0] + 1, hi[1] - lo[1] + 1], dtype=np.int64)
    offset = np.array([-lo[0], -lo[1]], dtype=np.int64)

    # pass 1: end weights of every walk from every start, then bins
    ends = []
    for (start, _), pref in zip(starts, prefs):
        end_mu, _ = _kernels.walk_ends(
            np.array(start.mu, dtype=np.int64), tab.index[start.w], word, tab.right_mult, tab.shift
        )
        ends.append(end_mu)
    keys, inverse = np.unique(np.concatenate(ends), axis=0, return_inverse=True)
    inverse = inverse.reshape(-1).astype(np.int64)
    nbins = keys.shape[0]
    per = 1 << L

    def run(a):
        start, _ = starts[a]
        return _kernels.walk_numerators(
            tab.index[start.w], word, tab.right_mult, tab.side, yq, yv, var, tab.tl,
            prefs[a], inverse[a * per:(a + 1) * per], nbins, shape, offset,
        )

    threads = min(_threads(), len(starts))
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(run, range(len(starts))))
    else:
        parts = [run(a) for a in range(len(starts))]
    total = parts[0]
    for p in parts[1:]:
        total = total + p

    # common denominator, cancelled per bin by exact dense division
    atoms: dict = {}
    for y in ys:
        a = (y[0], tuple(y[1:]))
        atoms[a] = atoms.get(a, 0) + 1
    out = {}
    for b in range(nbins):
        arr = total[b]
        if not arr.any():
            continue
        den = dict(atoms)
        for (j, e), m in atoms.items():
            ev = list(e) + [0] * (2 - nv)
            for _ in range(m):
                quot, ok = _kernels.divide_atom(arr, j, ev[0], ev[1])
                if not ok:
                    break
                arr = quot
                den[(j, e)] -= 1
        out[tuple(int(x) for x in keys[b])] = RationalCoefficient(_dense_to_poly(arr, offset, nv), den)
    return XPolynomial(nv, rs.rank, out)


def _dense_to_poly(arr, offset, nv) -> LaurentPoly:
    terms = {}
    for qi, a, b in zip(*np.nonzero(arr)):
        exp = (int(qi), int(a) - int(offset[0]), int(b) - int(offset[1]))[: nv + 1]
        terms[exp] = int(arr[qi, a, b])
    return LaurentPoly(nv, terms)


def _monic(p: XPolynomial, mu) -> XPolynomial:
    lead = p.coefficient(mu)
    if lead.is_zero():
        raise AssertionError(f"expansion has no X^{list(mu)} term")
    if lead == 1:
        return p
    return p.map(lambda c: (c / lead).normalize())


# --------------------------------------------------------------------- public
def E_polynomial(rs: RootSystem, mu, params: ParameterMap | None = None, method: str = "kernel") -> XPolynomial:
    """Nonsymmetric Macdonald polynomial ``E_mu`` from walks starting at the length-zero part."""
    params = params or ParameterMap(rs)
    if method == "reference":
        return E_polynomial_reference(rs, mu, params)
    plan = walk_plan(rs, mu)
    if len(plan.word) > MAX_KERNEL_LENGTH:
        return E_polynomial_reference(rs, mu, params)
    return _kernel_sum(plan, params, [(plan.g, (0,) * params.nv)])


def P_polynomial(
    rs: RootSystem, mu, params: ParameterMap | None = None, normalize: bool = True, method: str = "kernel"
) -> XPolynomial:
    """Symmetric Macdonald polynomial ``P_mu``: walks from every ``v g`` with ``v`` in ``W_0``.

    The raw sum equals ``P_mu`` times the coefficient of ``X^mu``, which is 1
    for regular ``mu``; ``normalize`` divides it out.
    """
    params = params or ParameterMap(rs)
    if method == "reference":
        return P_polynomial_reference(rs, mu, params, normalize)
    _check_dominant(rs, mu)
    plan = walk_plan(rs, mu)
    if len(plan.word) > MAX_KERNEL_LENGTH:
        return P_polynomial_reference(rs, mu, params, normalize)
    starts = [(finite(rs, v) * plan.g, _prefactor_exp(rs, params, v)[1:]) for v in rs.elements]
    raw = _kernel_sum(plan, params, starts)
    return _monic(raw, plan.mu) if normalize else raw


def count_walks(rs: RootSystem, mu, kind: str = "E") -> int:
    plan = walk_plan(rs, mu)
    n = 1 << len(plan.word)
    return n * len(rs.elements) if kind == "P" else n


def synthetic_sum(rs: RootSystem, word, params: ParameterMap | None = None, start=None) -> XPolynomial:
    """Kernel summation of ``X^start tau_word 1`` for an arbitrary reduced word."""
    params = params or ParameterMap(rs)
    start = start or identity(rs)
    plan = WalkPlan(rs, start.mu, start, tuple(word), tuple(beta_sequence(rs, word)))
    return _kernel_sum(plan, params, [(start, (0,) * params.nv)])


def weights_up_to_length(rs: RootSystem, max_len: int, dominant: bool = True) -> list[tuple]:
    """Weights ``mu`` (dominant only, by default) with ``l(X^mu m) <= max_len``, sorted."""
    lo = 0 if dominant else -max_len
    lengths = {}
    for mu in itertools.product(range(lo, max_len + 1), repeat=rs.rank):
        n = len(walk_plan(rs, mu).word)
        if n <= max_len:
            lengths[mu] = n
    return sorted(lengths, key=lambda m: (lengths[m], m))
