"""Finite root systems and their Weyl groups.

Weights are integer vectors in the fundamental-weight basis, so
``mu[i] == <mu, alpha_i^vee>``.  Dual vectors (coroots, coweights) are
vectors in the simple-coroot basis, which makes the pairing a plain dot
product.  The Cartan matrix follows ``cartan[i][j] == <alpha_j, alpha_i^vee>``,
so column ``j`` is the simple root ``alpha_j`` written in weights.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from functools import cached_property
from math import lcm

import numpy as np

Weight = tuple  # tuple[int, ...] in the fundamental weight basis
DualVector = tuple  # tuple[int | Fraction, ...] in the simple coroot basis

MAX_RANK = 8


class UnsupportedType(ValueError):
    pass


def cartan_matrix(type_label: str, rank: int) -> np.ndarray:
    """Bourbaki-numbered Cartan matrix with ``a[i, j] = <alpha_j, alpha_i^vee>``."""
    t = type_label.upper()
    n = rank
    valid = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 4,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }
    if t not in valid or not valid[t] or n > MAX_RANK:
        raise UnsupportedType(f"unsupported root system {type_label}{rank}")
    a = 2 * np.eye(n, dtype=np.int64)
    if t in "ABC":
        for i in range(n - 1):
            a[i, i + 1] = a[i + 1, i] = -1
        if t == "B":
            # alpha_n short
            a[n - 1, n - 2] = -2
        elif t == "C":
            a[n - 2, n - 1] = -2
    elif t == "D":
        for i in range(n - 2):
            a[i, i + 1] = a[i + 1, i] = -1
        a[n - 3, n - 1] = a[n - 1, n - 3] = -1
    elif t == "E":
        # 1-3-4-5-6(-7-8) with 2 attached to 4
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        for i, j in edges:
            a[i, j] = a[j, i] = -1
    elif t == "F":
        a[0, 1] = a[1, 0] = -1
        a[2, 3] = a[3, 2] = -1
        a[1, 2] = -1
        a[2, 1] = -2
    elif t == "G":
        a[0, 1] = -3
        a[1, 0] = -1
    return a


def parse_type(label: str) -> tuple[str, int]:
    """``"A2"`` -> ``("A", 2)``."""
    label = label.strip()
    if len(label) < 2 or not label[1:].isdigit():
        raise UnsupportedType(f"cannot parse root system {label!r}")
    return label[0].upper(), int(label[1:])


def _reflect_matrix(cartan: np.ndarray, i: int) -> np.ndarray:
    n = cartan.shape[0]
    m = np.eye(n, dtype=np.int64)
    m[:, i] -= cartan[:, i]
    return m


def _coreflect_matrix(cartan: np.ndarray, i: int) -> np.ndarray:
    n = cartan.shape[0]
    m = np.eye(n, dtype=np.int64)
    m[i, :] -= cartan[:, i]
    return m


class FiniteWeylElement:
    """An element of W_0, stored by its matrices on weights and on coroots."""

    __slots__ = ("mat", "comat", "_key", "_length", "_rs")

    def __init__(self, rs: "RootSystem", mat: np.ndarray, comat: np.ndarray):
        self._rs = rs
        self.mat = mat
        self.comat = comat
        self._key = mat.tobytes()
        self._length = None

    def __eq__(self, other):
        return isinstance(other, FiniteWeylElement) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __mul__(self, other: "FiniteWeylElement") -> "FiniteWeylElement":
        return FiniteWeylElement(self._rs, self.mat @ other.mat, self.comat @ other.comat)

    def __repr__(self):
        return f"FiniteWeylElement({self.reduced_word()})"

    def act(self, mu) -> Weight:
        return tuple(int(x) for x in self.mat @ np.asarray(mu, dtype=np.int64))

    def coact(self, lam) -> DualVector:
        if any(isinstance(x, Fraction) for x in lam):
            return tuple(
                sum(int(self.comat[r, c]) * lam[c] for c in range(len(lam)))
                for r in range(len(lam))
            )
        return tuple(int(x) for x in self.comat @ np.asarray(lam, dtype=np.int64))

    def inverse(self) -> "FiniteWeylElement":
        # W_0 preserves the pairing, so w^{-1} on weights is comat^T
        return FiniteWeylElement(self._rs, self.comat.T.copy(), self.mat.T.copy())

    @property
    def length(self) -> int:
        if self._length is None:
            self._length = sum(
                1 for c in self._rs.positive_coroots if not is_positive(self.coact(c))
            )
        return self._length

    def is_identity(self) -> bool:
        return bool((self.mat == np.eye(self.mat.shape[0], dtype=np.int64)).all())

    def descent(self, i: int) -> bool:
        """Right descent: ``l(w s_i) < l(w)``, i.e. ``w alpha_i^vee`` negative."""
        e = [0] * self._rs.rank
        e[i - 1] = 1
        return not is_positive(self.coact(tuple(e)))

    def reduced_word(self) -> list[int]:
        """Reduced word, peeling the smallest right descent each time."""
        word = []
        w = self
        while True:
            for i in range(1, self._rs.rank + 1):
                if w.descent(i):
                    word.append(i)
                    w = w * self._rs.s(i)
                    break
            else:
                break
        word.reverse()
        return word

    def det(self) -> int:
        return -1 if self.length % 2 else 1


def is_positive(vec) -> bool:
    """True for a nonzero vector with all coordinates >= 0."""
    return any(x != 0 for x in vec) and all(x >= 0 for x in vec)


def pairing(lam, mu) -> Fraction | int:
    """``<lam^vee, mu>`` for a dual vector in coroot coordinates and a weight."""
    if len(lam) != len(mu):
        raise ValueError("rank mismatch")
    return sum(a * b for a, b in zip(lam, mu))


class RootSystem:
    """Root datum for a finite crystallographic root system.

    Built from a Cartan matrix; positive roots and coroots are generated
    together by closing the simple ones under simple reflections.
    """

    def __init__(self, cartan, type_label: str = "?"):
        self.cartan = np.asarray(cartan, dtype=np.int64)
        self.rank = self.cartan.shape[0]
        self.type_label = type_label
        self._check_cartan()
        self._generate_roots()

    @classmethod
    def build(cls, type_label: str, rank: int | None = None) -> "RootSystem":
        if rank is None:
            type_label, rank = parse_type(type_label)
        return cls(cartan_matrix(type_label, rank), f"{type_label.upper()}{rank}")

    def _check_cartan(self):
        a = self.cartan
        n = self.rank
        if a.shape != (n, n) or (np.diag(a) != 2).any():
            raise UnsupportedType("Cartan matrix must have 2 on the diagonal")
        for i in range(n):
            for j in range(n):
                if i != j and (a[i, j] > 0 or (a[i, j] == 0) != (a[j, i] == 0)):
                    raise UnsupportedType("invalid off-diagonal Cartan entries")

    def _generate_roots(self):
        n = self.rank
        a = self.cartan
        roots = {}  # root-basis coords -> coroot coords
        queue = deque()
        for i in range(n):
            e = tuple(int(i == j) for j in range(n))
            roots[e] = e
            queue.append(e)
        while queue:
            beta = queue.popleft()
            cob = roots[beta]
            b = np.array(beta)
            cb = np.array(cob)
            for i in range(n):
                c = int((a @ b)[i])
                new = b.copy()
                new[i] -= c
                if (new < 0).any():
                    continue
                new = tuple(int(x) for x in new)
                if new in roots:
                    continue
                cnew = cb.copy()
                cnew[i] -= int(cb @ a[:, i])
                roots[new] = tuple(int(x) for x in cnew)
                queue.append(new)
        order = sorted(roots, key=lambda r: (sum(r), tuple(-x for x in r)))
        self.positive_roots_rootbasis = order
        self.positive_roots = [tuple(int(x) for x in a @ np.array(r)) for r in order]
        self.positive_coroots = [roots[r] for r in order]
        self.coroot_of = dict(zip(self.positive_roots, self.positive_coroots))
        self.root_of = dict(zip(self.positive_coroots, self.positive_roots))

    # ------------------------------------------------------------------ data
    @cached_property
    def highest_root(self) -> Weight:
        i = max(range(len(self.positive_roots)), key=lambda k: sum(self.positive_roots_rootbasis[k]))
        return self.positive_roots[i]

    @cached_property
    def highest_coroot(self) -> DualVector:
        return max(self.positive_coroots, key=sum)

    @cached_property
    def theta(self) -> Weight:
        """The root whose coroot is the highest coroot (bounds the fundamental alcove)."""
        return self.root_of[self.highest_coroot]

    @cached_property
    def highest_root_coroot(self) -> DualVector:
        return self.coroot_of[self.highest_root]

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @cached_property
    def inverse_cartan(self) -> list[list[Fraction]]:
        return _fraction_inverse(self.cartan.tolist())

    @cached_property
    def rho_check(self) -> DualVector:
        """Sum of fundamental coweights, in coroot coordinates."""
        # omega_i^vee = sum_j (A^{-T})_{ij} alpha_j^vee since <omega_i^vee, alpha_k> = delta
        inv = self.inverse_cartan
        n = self.rank
        return tuple(sum(inv[i][j] for i in range(n)) for j in range(n))

    @cached_property
    def e_denominator(self) -> int:
        return lcm(*[x.denominator for row in self.inverse_cartan for x in row])

    def height(self, coroot) -> int:
        """``ht(gamma^vee) = <gamma^vee, rho>``."""
        return int(sum(coroot))

    def root_pairing(self, lam, root_index: int):
        return pairing(lam, self.positive_roots[root_index])

    def coroot_alpha_pairing(self, lam, i: int):
        """``<lam^vee, alpha_i>`` for a coroot-coordinate vector."""
        return sum(lam[j] * int(self.cartan[j, i - 1]) for j in range(self.rank))

    # -------------------------------------------------------------- orbits
    @cached_property
    def coroot_class(self) -> dict:
        """Map positive coroot -> W_0-orbit representative index (by length class)."""
        parent = {c: c for c in self.positive_coroots}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in self.positive_coroots:
            for i in range(1, self.rank + 1):
                img = self.s(i).coact(c)
                if not is_positive(img):
                    img = tuple(-x for x in img)
                parent[find(img)] = find(c)
        simple = [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]
        ids = {}
        for c in simple + list(self.positive_coroots):
            r = find(c)
            if r not in ids:
                ids[r] = len(ids)
        return {c: ids[find(c)] for c in self.positive_coroots}

    @cached_property
    def orbit_of_node(self) -> dict:
        out = {0: self.coroot_class[self.highest_coroot]}
        for i in range(1, self.rank + 1):
            out[i] = self.coroot_class[tuple(int(i - 1 == j) for j in range(self.rank))]
        return out

    def node_orbit(self, i: int) -> int:
        return self.orbit_of_node[i]

    @property
    def n_orbits(self) -> int:
        return len(set(self.coroot_class.values()))

    @cached_property
    def rho_orbit_pairing(self) -> list[tuple]:
        """For each orbit o, the weight ``2 rho_o = sum of positive roots in o``."""
        out = []
        for o in range(self.n_orbits):
            tot = np.zeros(self.rank, dtype=np.int64)
            for r, c in zip(self.positive_roots, self.positive_coroots):
                if self.coroot_class[c] == o:
                    tot += np.array(r)
            out.append(tuple(int(x) for x in tot))
        return out

    # ---------------------------------------------------------- Weyl group
    def identity(self) -> FiniteWeylElement:
        eye = np.eye(self.rank, dtype=np.int64)
        return FiniteWeylElement(self, eye, eye.copy())

    def s(self, i: int) -> FiniteWeylElement:
        if not 1 <= i <= self.rank:
            raise ValueError(f"node {i} out of range 1..{self.rank}")
        return self._simple[i - 1]

    @cached_property
    def _simple(self):
        return [
            FiniteWeylElement(self, _reflect_matrix(self.cartan, i), _coreflect_matrix(self.cartan, i))
            for i in range(self.rank)
        ]

    def from_word(self, word) -> FiniteWeylElement:
        w = self.identity()
        for i in word:
            w = w * self.s(i)
        return w

    def reflection(self, coroot) -> FiniteWeylElement:
        """The reflection ``s_gamma`` for a positive coroot."""
        root = self.root_of[tuple(coroot)]
        n = self.rank
        mat = np.eye(n, dtype=np.int64) - np.outer(root, coroot)
        comat = np.eye(n, dtype=np.int64) - np.outer(coroot, root)
        return FiniteWeylElement(self, mat, comat)

    def reflect(self, i: int, x, kind: str = "weight"):
        """Apply ``s_i`` to a weight (``kind="weight"``) or a dual vector."""
        w = self.s(i)
        return w.act(x) if kind == "weight" else w.coact(x)

    @cached_property
    def longest_element(self) -> FiniteWeylElement:
        w = self.identity()
        while True:
            for i in range(1, self.rank + 1):
                if not w.descent(i):
                    w = w * self.s(i)
                    break
            else:
                return w

    @cached_property
    def elements(self) -> list[FiniteWeylElement]:
        """All of W_0 in breadth-first order from the identity (small groups only)."""
        if self.order > 200_000:
            raise ValueError(f"W_0 of {self.type_label} too large to enumerate")
        seen = {self.identity(): None}
        queue = deque([self.identity()])
        while queue:
            w = queue.popleft()
            for i in range(1, self.rank + 1):
                u = w * self.s(i)
                if u not in seen:
                    seen[u] = None
                    queue.append(u)
        return list(seen)

    @cached_property
    def order(self) -> int:
        # product of (1 + exponent) via degrees: |W| = prod over heights count formula
        heights = [sum(r) for r in self.positive_roots_rootbasis]
        n = self.rank
        # number of roots of height k minus height k+1 gives exponents partition
        counts = [heights.count(k) for k in range(1, max(heights) + 2)]
        exps = []
        for k in range(len(counts) - 1):
            exps += [k + 1] * (counts[k] - counts[k + 1])
        assert len(exps) == n
        out = 1
        for e in exps:
            out *= e + 1
        return out

    def stabilizer(self, mu) -> list[FiniteWeylElement]:
        return [w for w in self.elements if w.act(mu) == tuple(mu)]

    def is_dominant(self, mu) -> bool:
        return all(x >= 0 for x in mu)

    def to_json(self) -> dict:
        return {"type": self.type_label[0], "rank": self.rank}

    def dual(self) -> "RootSystem":
        """The root system with roots and coroots exchanged."""
        return RootSystem(self.cartan.T.copy(), self.type_label + "^vee")

    def __repr__(self):
        return f"RootSystem({self.type_label})"


def build_root_system(type_label: str, rank: int | None = None) -> RootSystem:
    return RootSystem.build(type_label, rank)


def _fraction_inverse(m: list[list[int]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]
