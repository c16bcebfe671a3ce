"""Exact coefficient arithmetic in ``q`` and ``v_o = t_o^{1/2}``.

Monomials are integer exponent tuples ``(q, v_0, ..., v_{r-1})``.  A
:class:`RationalCoefficient` keeps its denominator factored into atoms
``1 - q^j v^e`` (``j >= 1``), which is the only shape the walk expansions
produce; an optional general polynomial denominator covers the rare division
by anything else.
"""

from __future__ import annotations

from fractions import Fraction

from .rootsys import FiniteWeylElement, RootSystem, pairing


class DivisionByZero(ZeroDivisionError):
    pass


class NonpositiveLevel(ValueError):
    pass


class PoleAtSpecialization(ArithmeticError):
    pass


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub_exp(a, b):
    return tuple(x - y for x, y in zip(a, b))


class LaurentPoly:
    """Sparse Laurent polynomial over Q; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("nv", "terms", "_hash")

    def __init__(self, nv: int, terms=None):
        self.nv = nv
        self.terms = {k: _clean(c) for k, c in (terms or {}).items() if c != 0}
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, nv: int) -> "LaurentPoly":
        return cls(nv)

    @classmethod
    def const(cls, nv: int, c=1) -> "LaurentPoly":
        return cls(nv, {(0,) * (nv + 1): c})

    @classmethod
    def monomial(cls, exp, c=1) -> "LaurentPoly":
        exp = tuple(int(x) for x in exp)
        return cls(len(exp) - 1, {exp: c})

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_one(self) -> bool:
        return self.terms == {(0,) * (self.nv + 1): 1}

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self.terms})"

    # arithmetic
    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(self.nv, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nv, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return LaurentPoly(self.nv, {k: c * other for k, c in self.terms.items()})
        if len(other.terms) < len(self.terms):
            self, other = other, self
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = _add_exp(k1, k2)
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly(self.nv, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (k, c), = self.terms.items()
            return LaurentPoly(self.nv, {tuple(n * x for x in k): Fraction(c) ** n})
        out = LaurentPoly.const(self.nv)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, exp) -> "LaurentPoly":
        return LaurentPoly(self.nv, {_add_exp(k, exp): c for k, c in self.terms.items()})

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """``self / other`` if it is a Laurent polynomial, else ``None``.

        Long division in the lex order on exponent vectors.  Degrees in each
        variable are additive, so every quotient exponent lies in a box fixed
        by the extreme degrees of both operands; leaving it proves failure.
        """
        if other.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly(self.nv)
        if other.is_monomial():
            (k, c), = other.terms.items()
            return LaurentPoly(self.nv, {_sub_exp(a, k): Fraction(b) / c for a, b in self.terms.items()})
        n = self.nv + 1
        lo = [min(k[i] for k in self.terms) - min(k[i] for k in other.terms) for i in range(n)]
        hi = [max(k[i] for k in self.terms) - max(k[i] for k in other.terms) for i in range(n)]
        if any(a > b for a, b in zip(lo, hi)):
            return None
        olead = max(other.terms)
        oc = Fraction(other.terms[olead])
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            lead = max(rem)
            qk = _sub_exp(lead, olead)
            if any(x < a or x > b for x, a, b in zip(qk, lo, hi)):
                return None
            qc = rem[lead] / oc
            quot[qk] = qc
            for k, c in other.terms.items():
                kk = _add_exp(qk, k)
                val = rem.get(kk, 0) - qc * c
                if val == 0:
                    rem.pop(kk, None)
                else:
                    rem[kk] = val
        return LaurentPoly(self.nv, quot)

    def subs(self, q=None, v=None) -> "LaurentPoly":
        """Substitute numbers for ``q`` and/or each ``v_o`` (``None`` keeps a variable)."""
        v = list(v) if v is not None else [None] * self.nv
        out: dict = {}
        for k, c in self.terms.items():
            nk = list(k)
            val = Fraction(c)
            vals = [q] + v
            for idx, x in enumerate(vals):
                if x is None or k[idx] == 0:
                    continue
                if x == 0 and k[idx] < 0:
                    raise PoleAtSpecialization("negative power of a variable set to zero")
                val *= Fraction(x) ** k[idx]
                nk[idx] = 0
            nk = tuple(nk)
            out[nk] = out.get(nk, 0) + val
        return LaurentPoly(self.nv, out)

    def min_exponents(self) -> tuple:
        return tuple(min(k[i] for k in self.terms) for i in range(self.nv + 1))

    def to_json(self) -> list:
        return [
            {"q": k[0], "v": list(k[1:]), "c": str(Fraction(c))}
            for k, c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, nv: int, data) -> "LaurentPoly":
        return cls(nv, {(int(d["q"]), *map(int, d["v"])): Fraction(d["c"]) for d in data})


def atom_poly(nv: int, atom) -> LaurentPoly:
    """``1 - q^j v^e`` for ``atom = (j, e)``."""
    j, e = atom
    return LaurentPoly(nv, {(0,) * (nv + 1): 1, (j, *e): -1})


class RationalCoefficient:
    """``num / (den_poly * prod(atom ** mult))`` with atoms ``1 - q^j v^e``."""

    __slots__ = ("num", "den", "den_poly")

    def __init__(self, num: LaurentPoly, den=None, den_poly: LaurentPoly | None = None):
        self.num = num
        items = dict(den or {})
        self.den = tuple(sorted((a, m) for a, m in items.items() if m))
        if den_poly is not None and den_poly.is_one():
            den_poly = None
        if den_poly is not None and den_poly.is_monomial():
            # a unit denominator is absorbed into the numerator
            self.num = num.exact_div(den_poly)
            den_poly = None
        self.den_poly = den_poly
        if self.num.is_zero():
            self.den, self.den_poly = (), None

    @property
    def nv(self) -> int:
        return self.num.nv

    @classmethod
    def const(cls, nv: int, c=1) -> "RationalCoefficient":
        return cls(LaurentPoly.const(nv, c))

    @classmethod
    def zero(cls, nv: int) -> "RationalCoefficient":
        return cls(LaurentPoly(nv))

    @classmethod
    def monomial(cls, exp, c=1) -> "RationalCoefficient":
        return cls(LaurentPoly.monomial(exp, c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def den_dict(self) -> dict:
        return dict(self.den)

    def den_full(self) -> LaurentPoly:
        out = self.den_poly if self.den_poly is not None else LaurentPoly.const(self.nv)
        for a, m in self.den:
            out = out * atom_poly(self.nv, a) ** m
        return out

    def __repr__(self):
        return f"RationalCoefficient({format_coefficient(self)})"

    # arithmetic
    def __add__(self, other) -> "RationalCoefficient":
        other = _coerce(other, self.nv)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        da, db = self.den_dict(), other.den_dict()
        common = {a: max(da.get(a, 0), db.get(a, 0)) for a in set(da) | set(db)}

        def lift(x: RationalCoefficient, d: dict) -> LaurentPoly:
            out = x.num
            for a, m in common.items():
                extra = m - d.get(a, 0)
                if extra:
                    out = out * atom_poly(self.nv, a) ** extra
            return out

        na, nb = lift(self, da), lift(other, db)
        pa, pb = self.den_poly, other.den_poly
        if pa is None and pb is None:
            return RationalCoefficient(na + nb, common)
        if pa is not None and pb is not None and pa == pb:
            return RationalCoefficient(na + nb, common, pa)
        one = LaurentPoly.const(self.nv)
        pa = pa or one
        pb = pb or one
        return RationalCoefficient(na * pb + nb * pa, common, pa * pb)

    __radd__ = __add__

    def __neg__(self) -> "RationalCoefficient":
        return RationalCoefficient(-self.num, self.den_dict(), self.den_poly)

    def __sub__(self, other) -> "RationalCoefficient":
        return self + (-_coerce(other, self.nv))

    def __rsub__(self, other) -> "RationalCoefficient":
        return _coerce(other, self.nv) - self

    def __mul__(self, other) -> "RationalCoefficient":
        if isinstance(other, LaurentPoly):
            return RationalCoefficient(self.num * other, self.den_dict(), self.den_poly)
        other = _coerce(other, self.nv)
        if self.is_zero() or other.is_zero():
            return RationalCoefficient.zero(self.nv)
        d = self.den_dict()
        for a, m in other.den:
            d[a] = d.get(a, 0) + m
        if self.den_poly is None:
            dp = other.den_poly
        elif other.den_poly is None:
            dp = self.den_poly
        else:
            dp = self.den_poly * other.den_poly
        return RationalCoefficient(self.num * other.num, d, dp)

    __rmul__ = __mul__

    def divide_by_atom(self, atom, mult: int = 1) -> "RationalCoefficient":
        d = self.den_dict()
        d[atom] = d.get(atom, 0) + mult
        return RationalCoefficient(self.num, d, self.den_poly)

    def __truediv__(self, other) -> "RationalCoefficient":
        other = _coerce(other, self.nv)
        if other.is_zero():
            raise DivisionByZero("division by a zero coefficient")
        # multiply by the reciprocal: other.den / other.num
        num = self.num * other.den_full()
        d = self.den_dict()
        denom = other.num
        # peel atom factors off the divisor's numerator where possible
        changed = True
        while changed and not denom.is_monomial():
            changed = False
            for a in sorted(_candidate_atoms(denom)):
                q = denom.exact_div(atom_poly(self.nv, a))
                if q is not None:
                    denom = q
                    d[a] = d.get(a, 0) + 1
                    changed = True
                    break
        quotient = num.exact_div(denom)
        if quotient is not None:
            return RationalCoefficient(quotient, d, self.den_poly).normalize()
        dp = denom if self.den_poly is None else self.den_poly * denom
        return RationalCoefficient(num, d, dp).normalize()

    def __rtruediv__(self, other) -> "RationalCoefficient":
        return _coerce(other, self.nv) / self

    def __eq__(self, other):
        if not isinstance(other, (RationalCoefficient, int, Fraction)):
            return NotImplemented
        other = _coerce(other, self.nv)
        if self.den == other.den and self.den_poly == other.den_poly:
            return self.num == other.num
        return self.num * other.den_full() == other.num * self.den_full()

    def __hash__(self):
        raise TypeError("RationalCoefficient is unhashable; equality is by cross-multiplication")

    def normalize(self) -> "RationalCoefficient":
        """Cancel denominator factors that divide the numerator exactly."""
        num = self.num
        d = self.den_dict()
        for a in list(d):
            ap = atom_poly(self.nv, a)
            while d[a]:
                q = num.exact_div(ap)
                if q is None:
                    break
                num = q
                d[a] -= 1
        dp = self.den_poly
        if dp is not None:
            q = num.exact_div(dp)
            if q is not None:
                num, dp = q, None
        return RationalCoefficient(num, d, dp)

    def subs(self, q=None, v=None) -> "RationalCoefficient":
        """Substitute numbers into numerator and denominator (``None`` keeps a variable)."""
        num = self.num.subs(q, v)
        den = self.den_full().subs(q, v)
        if den.is_zero():
            raise PoleAtSpecialization("denominator vanishes at the specialization point")
        if num.is_zero():
            return RationalCoefficient.zero(self.nv)
        # keep unspecialized atoms factored
        keep: dict = {}
        rest = LaurentPoly.const(self.nv)
        if self.den_poly is not None:
            rest = self.den_poly.subs(q, v)
        for a, m in self.den:
            ap = atom_poly(self.nv, a).subs(q, v)
            if ap.is_zero():
                raise PoleAtSpecialization(f"factor 1 - q^{a[0]} v^{a[1]} vanishes")
            j, e = a
            still_atom = (q is None and j >= 1) and len(ap.terms) == 2
            if still_atom and (v is None or all(x is None or ei == 0 for x, ei in zip(v, e))):
                keep[a] = m
            else:
                rest = rest * ap ** m
        out = RationalCoefficient(num, keep)
        if not rest.is_one():
            out = out / RationalCoefficient(rest)
        return out.normalize()

    def is_laurent(self) -> bool:
        return not self.den and self.den_poly is None

    def to_json(self) -> dict:
        out = {
            "num": self.num.to_json(),
            "den": [{"j": a[0], "v": list(a[1]), "mult": m} for a, m in self.den],
            "unit": {"q": 0, "v": [0] * self.nv},
        }
        if self.den_poly is not None:
            out["den_poly"] = self.den_poly.to_json()
        return out

    @classmethod
    def from_json(cls, nv: int, d) -> "RationalCoefficient":
        num = LaurentPoly.from_json(nv, d["num"])
        unit = d.get("unit")
        if unit:
            num = num.shift((-int(unit["q"]), *(-int(x) for x in unit["v"])))
        den = {(int(a["j"]), tuple(int(x) for x in a["v"])): int(a["mult"]) for a in d["den"]}
        dp = LaurentPoly.from_json(nv, d["den_poly"]) if "den_poly" in d else None
        return cls(num, den, dp)


def _coerce(x, nv: int) -> RationalCoefficient:
    if isinstance(x, RationalCoefficient):
        return x
    if isinstance(x, LaurentPoly):
        return RationalCoefficient(x)
    if isinstance(x, (int, Fraction)):
        return RationalCoefficient.const(nv, x)
    raise TypeError(f"cannot use {type(x).__name__} as a coefficient")


def _candidate_atoms(p: LaurentPoly):
    """Atoms ``1 - m`` that could divide ``p`` given its extreme q-degrees."""
    zero = (0,) * (p.nv + 1)
    out = set()
    for k in p.terms:
        if k[0] >= 1 and k != zero:
            out.add((k[0], tuple(k[1:])))
    return out


# ------------------------------------------------------------------ parameters
class ParameterMap:
    """How parameter orbits map to the ``v`` variables of the ring.

    ``mode="equal"`` uses a single ``t`` for every orbit; ``mode="orbit"``
    gives each orbit its own ``t_o``.
    """

    def __init__(self, rs: RootSystem, mode: str = "equal", names=None, bindings=None):
        if mode not in ("equal", "orbit"):
            raise ValueError(f"unknown parameter mode {mode!r}")
        self.rs = rs
        self.mode = mode
        n_orb = rs.n_orbits
        if mode == "equal":
            self.var_of_orbit = [0] * n_orb
            self.nv = 1
            default = ["t"]
        else:
            self.var_of_orbit = list(range(n_orb))
            self.nv = n_orb
            default = []
            for o in range(n_orb):
                node = min(i for i in range(1, rs.rank + 1) if rs.node_orbit(i) == o)
                default.append(f"t{node}")
        self.names = list(names) if names else default
        if len(self.names) != self.nv:
            raise ValueError(f"expected {self.nv} parameter names, got {len(self.names)}")
        self.bindings = dict(bindings or {})

    @classmethod
    def parse(cls, rs: RootSystem, spec: str) -> "ParameterMap":
        """``"equal"``, ``"orbit"`` or ``"orbit:a,b"`` (custom variable names)."""
        if spec == "equal":
            return cls(rs, "equal")
        if spec == "orbit":
            return cls(rs, "orbit")
        if spec.startswith("orbit:"):
            names = [s.strip() for s in spec[6:].split(",") if s.strip()]
            return cls(rs, "orbit", names)
        raise ValueError(f"bad parameter specification {spec!r}")

    def var(self, orbit: int) -> int:
        return self.var_of_orbit[orbit]

    def node_var(self, i: int) -> int:
        return self.var_of_orbit[self.rs.node_orbit(i)]

    def mono(self, qexp: int = 0, vexp=None) -> tuple:
        return (int(qexp), *(vexp if vexp is not None else (0,) * self.nv))

    def v_of_node(self, i: int, power: int = 1) -> tuple:
        e = [0] * self.nv
        e[self.node_var(i)] = power
        return (0, *e)

    def one(self) -> RationalCoefficient:
        return RationalCoefficient.const(self.nv)

    def zero(self) -> RationalCoefficient:
        return RationalCoefficient.zero(self.nv)

    def t_of_node(self, i: int) -> LaurentPoly:
        return LaurentPoly.monomial(self.v_of_node(i, 2))

    def to_json(self) -> dict:
        return {"mode": self.mode, "names": self.names}

    @classmethod
    def from_json(cls, rs: RootSystem, d) -> "ParameterMap":
        return cls(rs, d["mode"], d.get("names"))


def rho_c_vexp(rs: RootSystem, params: ParameterMap, coroot) -> tuple:
    """v-exponents of ``q^{<coroot, rho_c>}``, i.e. ``sum_o <coroot, 2 rho_o>`` per variable."""
    out = [0] * params.nv
    for o, two_rho in enumerate(rs.rho_orbit_pairing):
        out[params.var(o)] += int(pairing(coroot, two_rho))
    return tuple(out)


def normalize_level(beta) -> tuple:
    """Write ``beta`` as ``-gamma + j d`` with ``gamma`` positive; returns ``(gamma, j)``."""
    from .rootsys import is_positive

    gamma = tuple(-x for x in beta.gamma)
    j = beta.k
    if not is_positive(gamma):
        gamma = tuple(-x for x in gamma)
        j = -j
    return gamma, j


def eval_Y_one(beta, rs: RootSystem, params: ParameterMap) -> tuple:
    """Monomial exponent of ``Y^{-beta} 1`` for ``beta = -gamma + j d`` with ``j >= 1``."""
    gamma, j = normalize_level(beta)
    if j <= 0:
        raise NonpositiveLevel(f"affine coroot {beta} has level {j} <= 0")
    return (j, *rho_c_vexp(rs, params, gamma))


def t_half(w: FiniteWeylElement, params: ParameterMap) -> tuple:
    """Exponent tuple of ``t_w^{1/2}``: one ``v`` per letter of a reduced word."""
    e = [0] * params.nv
    for i in w.reduced_word():
        e[params.node_var(i)] += 1
    return (0, *e)


# ---------------------------------------------------------------- X-polynomials
class XPolynomial:
    """Finite sum ``sum_mu c_mu X^mu`` with :class:`RationalCoefficient` values."""

    __slots__ = ("nv", "rank", "terms")

    def __init__(self, nv: int, rank: int, terms=None):
        self.nv = nv
        self.rank = rank
        self.terms = {}
        for k, c in (terms or {}).items():
            c = _coerce(c, nv)
            if not c.is_zero():
                self.terms[tuple(int(x) for x in k)] = c

    @classmethod
    def one(cls, nv: int, rank: int) -> "XPolynomial":
        return cls(nv, rank, {(0,) * rank: 1})

    @classmethod
    def monomial(cls, nv: int, mu, coeff=1) -> "XPolynomial":
        return cls(nv, len(mu), {tuple(mu): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mu) -> RationalCoefficient:
        return self.terms.get(tuple(mu), RationalCoefficient.zero(self.nv))

    def __add__(self, other: "XPolynomial") -> "XPolynomial":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return XPolynomial(self.nv, self.rank, out)

    def __neg__(self) -> "XPolynomial":
        return XPolynomial(self.nv, self.rank, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "XPolynomial") -> "XPolynomial":
        return self + (-other)

    def scale(self, c) -> "XPolynomial":
        c = _coerce(c, self.nv)
        return XPolynomial(self.nv, self.rank, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "XPolynomial") -> "XPolynomial":
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out[k] + c1 * c2 if k in out else c1 * c2
        return XPolynomial(self.nv, self.rank, out)

    def shift(self, mu) -> "XPolynomial":
        return XPolynomial(self.nv, self.rank, {tuple(a + b for a, b in zip(k, mu)): c for k, c in self.terms.items()})

    def act(self, w: FiniteWeylElement) -> "XPolynomial":
        """The W_0 action permuting the keys."""
        return XPolynomial(self.nv, self.rank, {w.act(k): c for k, c in self.terms.items()})

    def normalize(self) -> "XPolynomial":
        return XPolynomial(self.nv, self.rank, {k: c.normalize() for k, c in self.terms.items()})

    def map(self, fn) -> "XPolynomial":
        return XPolynomial(self.nv, self.rank, {k: fn(c) for k, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, XPolynomial):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        z = RationalCoefficient.zero(self.nv)
        return all(self.terms.get(k, z) == other.terms.get(k, z) for k in keys)

    def __repr__(self):
        return f"XPolynomial({format_xpoly(self)})"

    def to_json(self) -> list:
        return [{"weight": list(k), "coeff": c.to_json()} for k, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, nv: int, rank: int, data) -> "XPolynomial":
        return cls(nv, rank, {tuple(d["weight"]): RationalCoefficient.from_json(nv, d["coeff"]) for d in data})


def specialize(p: XPolynomial, q_val=None, t_vals=None) -> XPolynomial:
    """Substitute ``q = q_val`` and ``t_o = t_vals[o]`` (``None`` keeps a variable symbolic).

    A ``t`` value must be zero or a rational square, since the ring variable is ``t^{1/2}``.
    """
    v_vals = None
    if t_vals is not None:
        if not isinstance(t_vals, (list, tuple)):
            t_vals = [t_vals] * p.nv
        v_vals = [None if t is None else _rational_sqrt(t) for t in t_vals]
    return p.map(lambda c: c.subs(q_val, v_vals))


def _rational_sqrt(x) -> Fraction:
    x = Fraction(x)
    if x < 0:
        raise ValueError("t values must be nonnegative")
    from math import isqrt

    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a != x.numerator or b * b != x.denominator:
        raise ValueError(f"t = {x} has no rational square root")
    return Fraction(a, b)


# ----------------------------------------------------------------- text output
def format_monomial(exp, names) -> str:
    parts = []
    q = exp[0]
    if q:
        parts.append("q" if q == 1 else f"q^{q}" if q > 0 else f"q^{{{q}}}")
    for name, e in zip(names, exp[1:]):
        if not e:
            continue
        if e == 2:
            parts.append(name)
        elif e % 2 == 0:
            k = e // 2
            parts.append(f"{name}^{k}" if k > 0 else f"{name}^{{{k}}}")
        else:
            parts.append(f"{name}^{{{e}/2}}")
    return " ".join(parts)


def _format_poly(p: LaurentPoly, names) -> str:
    items = sorted(p.terms.items(), key=lambda kc: (sum(abs(x) for x in kc[0]), kc[0]))
    out = ""
    for idx, (k, c) in enumerate(items):
        m = format_monomial(k, names)
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = m if a == 1 and m else (f"{a}" + (f" {m}" if m else "")) if a.denominator == 1 else f"({a})" + (f" {m}" if m else "")
        if idx == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += sign + body
    return out


def _factor_one_minus(p: LaurentPoly, nv: int):
    """Pull out powers of ``(1 - t_o)`` from ``p``; returns ``(rest, {var: power})``."""
    powers = {}
    for var in range(nv):
        e = [0] * (nv + 1)
        e[var + 1] = 2
        f = LaurentPoly(nv, {(0,) * (nv + 1): 1, tuple(e): -1})
        n = 0
        while not p.is_zero() and not p.is_monomial():
            q = p.exact_div(f)
            if q is None:
                break
            p, n = q, n + 1
        if n:
            powers[var] = n
    return p, powers


def _pull_monomial(p: LaurentPoly):
    """``p = m * rest`` with ``m`` the gcd monomial (and sign of the first term)."""
    low = p.min_exponents()
    rest = p.shift(tuple(-x for x in low))
    return low, rest


def format_coefficient(c: RationalCoefficient, names=None) -> str:
    names = names or (["t"] if c.nv == 1 else [f"t{i + 1}" for i in range(c.nv)])
    if c.is_zero():
        return "0"
    num, powers = _factor_one_minus(c.num, c.nv)
    low, rest = _pull_monomial(num)
    if rest.is_monomial():
        (_, k), = rest.terms.items()
        scalar = Fraction(k)
        rest_str = ""
    else:
        scalar = Fraction(1)
        rest_str = "(" + _format_poly(rest, names) + ")"
    mono = format_monomial(low, names)
    head = ""
    if scalar < 0:
        head = "-"
        scalar = -scalar
    if scalar != 1:
        head += str(scalar) if scalar.denominator == 1 else f"({scalar})"
        if mono:
            head += " "
    head += mono
    factors = rest_str
    for var, n in sorted(powers.items()):
        factors += f"(1-{names[var]})" + (f"^{n}" if n > 1 else "")
    s = head + factors
    if s in ("", "-"):
        s += "1"
    dens = []
    for (j, e), m in c.den:
        mono = format_monomial((j, *e), names)
        dens.append(f"(1-{mono})" + (f"^{m}" if m > 1 else ""))
    if c.den_poly is not None:
        dens.append("(" + _format_poly(c.den_poly, names) + ")")
    if not dens:
        return s
    den = dens[0] if len(dens) == 1 else "(" + "".join(dens) + ")"
    return f"{s}/{den}"


def format_weight(mu) -> str:
    if len(mu) == 1:
        names = ["w"]
    else:
        names = [f"w{i + 1}" for i in range(len(mu))]
    out = ""
    for c, n in zip(mu, names):
        if not c:
            continue
        body = n if abs(c) == 1 else f"{abs(c)}{n}"
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += ("-" if c < 0 else "+") + body
    return out or "0"


def _orbit_key(rs, mu):
    dom = dominant_rep(mu, rs)
    return (-sum(dom), tuple(-x for x in dom), tuple(-x for x in mu))


def dominant_rep(mu, rs=None) -> tuple:
    """Dominant element of the W_0-orbit of ``mu`` (needs the root system)."""
    mu = list(mu)
    if rs is None:
        return tuple(mu)
    while True:
        for i in range(rs.rank):
            if mu[i] < 0:
                mu = list(rs.s(i + 1).act(mu))
                break
        else:
            return tuple(mu)


def format_xpoly(p: XPolynomial, names=None, rs: RootSystem | None = None, orbit_sums: bool = False) -> str:
    if p.is_zero():
        return "0"
    keys = sorted(p.terms, key=(lambda m: _orbit_key(rs, m)) if rs is not None else (lambda m: tuple(-x for x in m)))
    pieces = []
    done = set()
    for mu in keys:
        if mu in done:
            continue
        c = p.terms[mu]
        label = None
        if orbit_sums and rs is not None:
            orbit = {w.act(mu) for w in rs.elements}
            if len(orbit) > 1 and all(o in p.terms and p.terms[o] == c for o in orbit):
                done |= orbit
                label = f"m_{{{format_weight(dominant_rep(mu, rs))}}}"
        if label is None:
            done.add(mu)
            label = None if not any(mu) else f"X^{{{format_weight(mu)}}}"
        cs = format_coefficient(c, names)
        if label is None:
            term = cs
        elif cs == "1":
            term = label
        elif cs == "-1":
            term = "-" + label
        else:
            term = f"{cs} {label}"
        pieces.append(term)
    out = pieces[0]
    for t in pieces[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out

