"""Extended affine Weyl group ``W = {X^mu w}`` and its alcove geometry.

An element ``(mu, w)`` is also an alcove: the image of the fundamental
alcove under ``x -> mu + w x``, on the sheet indexed by the class of ``mu``
modulo the root lattice.  Every side and length decision is made exactly by
evaluating wall functionals at the interior sample point
``x0 = rho / (1 + <phi^vee, rho>)`` and its images.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .rootsys import FiniteWeylElement, RootSystem, is_positive, pairing


@dataclass(frozen=True)
class AffineCoroot:
    """``gamma^vee + k d``."""

    gamma: tuple
    k: int

    def __neg__(self):
        return AffineCoroot(tuple(-x for x in self.gamma), -self.k)

    def to_json(self) -> dict:
        return {"gamma": [int(x) for x in self.gamma], "k": int(self.k)}

    @classmethod
    def from_json(cls, d) -> "AffineCoroot":
        return cls(tuple(d["gamma"]), int(d["k"]))


@dataclass(frozen=True)
class Wall:
    """Hyperplane ``<x, gamma^vee> + k = 0`` with ``gamma^vee`` a positive coroot.

    The positive side is ``<x, gamma^vee> + k > 0``.
    """

    gamma: tuple
    k: int

    def value(self, x) -> Fraction:
        return pairing(self.gamma, x) + self.k

    @classmethod
    def from_coroot(cls, beta: AffineCoroot) -> "Wall":
        if is_positive(beta.gamma):
            return cls(beta.gamma, beta.k)
        return cls(tuple(-x for x in beta.gamma), -beta.k)


class NonReducedWord(ValueError):
    pass


class ExtendedAffineElement:
    __slots__ = ("rs", "mu", "w", "_key")

    def __init__(self, rs: RootSystem, mu, w: FiniteWeylElement):
        self.rs = rs
        self.mu = tuple(int(x) for x in mu)
        self.w = w
        self._key = (self.mu, w._key)

    def __eq__(self, other):
        return isinstance(other, ExtendedAffineElement) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"X^{list(self.mu)} w{self.w.reduced_word()}"

    def __mul__(self, other: "ExtendedAffineElement") -> "ExtendedAffineElement":
        wmu = self.w.act(other.mu)
        return ExtendedAffineElement(
            self.rs, tuple(a + b for a, b in zip(self.mu, wmu)), self.w * other.w
        )

    def inverse(self) -> "ExtendedAffineElement":
        winv = self.w.inverse()
        return ExtendedAffineElement(self.rs, tuple(-x for x in winv.act(self.mu)), winv)

    def act_on_coroot(self, beta: AffineCoroot) -> AffineCoroot:
        """``X^mu w (gamma + k d) = w gamma + (k - <w gamma, mu>) d``."""
        g = self.w.coact(beta.gamma)
        return AffineCoroot(g, beta.k - pairing(g, self.mu))

    def act_on_point(self, x) -> tuple:
        """The affine map ``x -> mu + w x`` on rational points of weight space."""
        n = len(x)
        wx = tuple(sum(int(self.w.mat[r, c]) * x[c] for c in range(n)) for r in range(n))
        return tuple(m + y for m, y in zip(self.mu, wx))

    def sample_point(self) -> tuple:
        return self.act_on_point(fundamental_point(self.rs))

    def sheet(self) -> tuple:
        """Class of the translation part in weight lattice / root lattice."""
        return sheet_of(self.rs, self.mu)

    def to_json(self) -> dict:
        return {"mu": list(self.mu), "w": self.w.mat.tolist()}

    @classmethod
    def from_json(cls, rs: RootSystem, d) -> "ExtendedAffineElement":
        return cls(rs, d["mu"], weyl_from_matrix(rs, d["w"]))


def weyl_from_matrix(rs: RootSystem, mat) -> FiniteWeylElement:
    """Recover a W_0 element (with both matrices) from its action on weights."""
    mat = np.array(mat, dtype=np.int64)
    inv = rs.inverse_cartan
    word = []
    cur = mat.copy()
    for _ in range(len(rs.positive_roots) + 1):
        for i in range(rs.rank):
            img = cur @ rs.cartan[:, i]
            # root-basis coordinates of w(alpha_i); negative means a right descent
            if any(sum(inv[r][c] * int(img[c]) for c in range(rs.rank)) < 0 for r in range(rs.rank)):
                word.append(i + 1)
                cur = cur @ rs.s(i + 1).mat
                break
        else:
            break
    word.reverse()
    w = rs.from_word(word)
    if w.mat.tolist() != mat.tolist():
        raise ValueError("matrix is not an element of W_0")
    return w


_FUNDAMENTAL_POINT_CACHE: dict = {}


def fundamental_point(rs: RootSystem) -> tuple:
    """Interior point ``rho / (1 + <phi^vee, rho>)`` of the fundamental alcove."""
    # holding rs keeps its id from being reused by another root system
    hit = _FUNDAMENTAL_POINT_CACHE.get(id(rs))
    if hit is None or hit[0] is not rs:
        h = rs.height(rs.highest_coroot)
        hit = (rs, tuple(Fraction(1, 1 + h) for _ in range(rs.rank)))
        _FUNDAMENTAL_POINT_CACHE[id(rs)] = hit
    return hit[1]


def sheet_of(rs: RootSystem, mu) -> tuple:
    inv = rs.inverse_cartan
    coords = [sum(inv[i][j] * mu[j] for j in range(rs.rank)) for i in range(rs.rank)]
    return tuple(c - (c.numerator // c.denominator) for c in coords)


def identity(rs: RootSystem) -> ExtendedAffineElement:
    return ExtendedAffineElement(rs, (0,) * rs.rank, rs.identity())


def translation(rs: RootSystem, mu) -> ExtendedAffineElement:
    return ExtendedAffineElement(rs, mu, rs.identity())


def finite(rs: RootSystem, w: FiniteWeylElement) -> ExtendedAffineElement:
    return ExtendedAffineElement(rs, (0,) * rs.rank, w)


def simple_reflection(rs: RootSystem, j: int) -> ExtendedAffineElement:
    """``s_j^vee``; for ``j = 0`` this is ``X^theta s_theta`` with ``theta^vee = phi^vee``."""
    if j == 0:
        return ExtendedAffineElement(rs, rs.theta, rs.reflection(rs.highest_coroot))
    return finite(rs, rs.s(j))


def simple_coroot(rs: RootSystem, j: int) -> AffineCoroot:
    """``alpha_j^vee``; ``alpha_0^vee = -phi^vee + d``."""
    if j == 0:
        return AffineCoroot(tuple(-x for x in rs.highest_coroot), 1)
    return AffineCoroot(tuple(int(j - 1 == i) for i in range(rs.rank)), 0)


def multiply(a: ExtendedAffineElement, b: ExtendedAffineElement) -> ExtendedAffineElement:
    return a * b


def act_on_affine_coroot(z: ExtendedAffineElement, beta: AffineCoroot) -> AffineCoroot:
    return z.act_on_coroot(beta)


def wall_of_step(z: ExtendedAffineElement, j: int) -> tuple[Wall, int]:
    """Wall between the alcoves ``z`` and ``z s_j^vee`` and the side (+1/-1) of ``z``."""
    wall = Wall.from_coroot(z.act_on_coroot(simple_coroot(z.rs, j)))
    val = wall.value(z.sample_point())
    return wall, (1 if val > 0 else -1)


def step_side(rs: RootSystem, w: FiniteWeylElement, j: int) -> int:
    """Side of any alcove with finite part ``w`` relative to its ``j``-wall.

    At the alcove the unnormalized functional of ``z alpha_j^vee`` is positive
    (for ``j = 0`` because ``<x0, phi^vee> < 1``); normalizing the wall flips
    the sign exactly when ``w gamma_j`` is a negative coroot.  Translations
    therefore never matter.
    """
    return 1 if is_positive(w.coact(simple_coroot(rs, j).gamma)) else -1


def length(z: ExtendedAffineElement) -> int:
    """Number of walls strictly between the alcove ``z`` and the fundamental alcove."""
    p = z.sample_point()
    total = 0
    for c in z.rs.positive_coroots:
        v = pairing(c, p)
        total += abs(v.numerator // v.denominator)
    return total


def is_right_descent(z: ExtendedAffineElement, j: int) -> bool:
    """``l(z s_j^vee) < l(z)``: the ``j``-wall of ``z`` separates it from ``1``."""
    wall, side = wall_of_step(z, j)
    base = wall.value(fundamental_point(z.rs))
    return (base > 0) != (side > 0)


def reduced_word(z: ExtendedAffineElement) -> tuple[ExtendedAffineElement, list[int]]:
    """``z = g * s_{word[0]} ... s_{word[-1]}`` with ``l(g) = 0``.

    Peels right descents with the smallest index first.
    """
    rs = z.rs
    word = []
    while True:
        for j in range(rs.rank + 1):
            if is_right_descent(z, j):
                word.append(j)
                z = z * simple_reflection(rs, j)
                break
        else:
            break
    word.reverse()
    return z, word


def from_word(rs: RootSystem, word, start: ExtendedAffineElement | None = None) -> ExtendedAffineElement:
    z = identity(rs) if start is None else start
    for j in word:
        z = z * simple_reflection(rs, j)
    return z


def minimal_coset_rep(rs: RootSystem, mu) -> ExtendedAffineElement:
    """Minimal length element ``X^mu m`` of the coset ``X^mu W_0``."""
    z = translation(rs, mu)
    while True:
        for i in range(1, rs.rank + 1):
            if is_right_descent(z, i):
                z = z * simple_reflection(rs, i)
                break
        else:
            return z


def beta_sequence(rs: RootSystem, word) -> list[AffineCoroot]:
    """``beta_k = s_{i_l} ... s_{i_{k+1}} alpha_{i_k}`` for ``k = 1..l``."""
    out = [None] * len(word)
    u = identity(rs)
    for k in range(len(word) - 1, -1, -1):
        out[k] = u.act_on_coroot(simple_coroot(rs, word[k]))
        u = u * simple_reflection(rs, word[k])
    return out


def check_reduced(rs: RootSystem, word, start: ExtendedAffineElement | None = None):
    z = from_word(rs, word)
    if length(z) != len(word):
        raise NonReducedWord(f"word {list(word)} is not reduced")
    return z
