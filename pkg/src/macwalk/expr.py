"""Parser for X-polynomials written the way they are printed.

Accepts sums of products of integers, ``q``, parameter names (``t``, ``t1``,
... with integer or ``{k/2}`` powers), parenthesized subexpressions,
``X^{2w1-w2}`` monomials and ``m_{w1+w2}`` orbit sums; ``/`` divides by a
scalar expression.  Juxtaposition multiplies.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .ring import LaurentPoly, ParameterMap, RationalCoefficient, XPolynomial
from .rootsys import RootSystem

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(\{[^}]*\})|(.))")


class ParseError(ValueError):
    pass


def parse_weight(text: str, rank: int) -> tuple:
    """``"2w1-w2"``, ``"-2w"``, ``"0"`` or ``"1,-1"`` to fundamental-weight coordinates."""
    s = text.strip().strip("[]").replace(" ", "")
    if "," in s or re.fullmatch(r"-?\d+", s):
        vals = tuple(int(x) for x in s.split(","))
        if len(vals) == rank:
            return vals
        if s == "0":
            return (0,) * rank
        raise ParseError(f"weight {text!r} needs {rank} coordinates")
    out = [0] * rank
    for sign, coef, idx in re.findall(r"([+-]?)(\d*)w(\d*)", s):
        i = int(idx) - 1 if idx else 0
        if not 0 <= i < rank:
            raise ParseError(f"no fundamental weight w{idx} in rank {rank}")
        out[i] += (-1 if sign == "-" else 1) * (int(coef) if coef else 1)
    if re.sub(r"([+-]?)(\d*)w(\d*)", "", s):
        raise ParseError(f"cannot read weight {text!r}")
    return tuple(out)


class _Parser:
    def __init__(self, text: str, rs: RootSystem, params: ParameterMap):
        self.rs = rs
        self.params = params
        self.nv = params.nv
        self.toks = []
        for num, name, brace, sym in _TOKEN.findall(text):
            if num:
                self.toks.append(("num", int(num)))
            elif name:
                self.toks.append(("name", name))
            elif brace:
                self.toks.append(("brace", brace[1:-1]))
            elif sym.strip():
                self.toks.append(("sym", sym))
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, sym):
        kind, val = self.take()
        if val != sym:
            raise ParseError(f"expected {sym!r}, got {val!r}")

    def scalar(self, c) -> XPolynomial:
        return XPolynomial(self.nv, self.rs.rank, {(0,) * self.rs.rank: c})

    def parse(self) -> XPolynomial:
        out = self.expr()
        if self.pos != len(self.toks):
            raise ParseError(f"unexpected token {self.peek()[1]!r}")
        return out

    def expr(self) -> XPolynomial:
        sign = 1
        if self.peek() == ("sym", "-"):
            self.take()
            sign = -1
        out = self.term()
        if sign < 0:
            out = -out
        while self.peek() in (("sym", "+"), ("sym", "-")):
            _, op = self.take()
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def _starts_factor(self) -> bool:
        kind, val = self.peek()
        return kind in ("num", "name") or val == "("

    def term(self) -> XPolynomial:
        out = self.factor()
        while True:
            kind, val = self.peek()
            if val == "/":
                self.take()
                den = self.factor()
                out = _divide(out, den)
            elif val == "*":
                self.take()
                out = out * self.factor()
            elif self._starts_factor():
                out = out * self.factor()
            else:
                return out

    def exponent(self) -> Fraction:
        kind, val = self.take()
        if kind == "num":
            return Fraction(val)
        if kind == "brace":
            return Fraction(val.replace(" ", ""))
        if val == "-":
            k2, v2 = self.take()
            return -Fraction(v2)
        raise ParseError(f"bad exponent {val!r}")

    def factor(self) -> XPolynomial:
        kind, val = self.take()
        if kind == "num":
            base = self.scalar(val)
        elif val == "(":
            base = self.expr()
            self.expect(")")
        elif kind == "name" and val == "X":
            self.expect("^")
            k2, w = self.take()
            if k2 not in ("brace", "num"):
                raise ParseError("X^ needs a braced weight")
            mu = parse_weight(str(w), self.rs.rank)
            return XPolynomial(self.nv, self.rs.rank, {mu: 1})
        elif kind == "name" and val == "m":
            self.expect("_")
            k2, w = self.take()
            mu = parse_weight(str(w), self.rs.rank)
            orbit = {wv.act(mu) for wv in self.rs.elements}
            return XPolynomial(self.nv, self.rs.rank, {nu: 1 for nu in orbit})
        elif kind == "name":
            return self._name(val)
        else:
            raise ParseError(f"unexpected {val!r}")
        if self.peek() == ("sym", "^"):
            self.take()
            e = self.exponent()
            if e.denominator != 1 or e < 0:
                raise ParseError("only nonnegative integer powers of compound factors")
            out = self.scalar(1)
            for _ in range(int(e)):
                out = out * base
            return out
        return base

    def _name(self, name) -> XPolynomial:
        e = Fraction(1)
        if self.peek() == ("sym", "^"):
            self.take()
            e = self.exponent()
        exp = [0] * (self.nv + 1)
        if name == "q":
            if e.denominator != 1:
                raise ParseError("q takes integer powers only")
            exp[0] = int(e)
        elif name in self.params.names:
            two = 2 * e
            if two.denominator != 1:
                raise ParseError(f"{name} takes half-integer powers only")
            exp[self.params.names.index(name) + 1] = int(two)
        else:
            raise ParseError(f"unknown symbol {name!r}")
        return self.scalar(RationalCoefficient(LaurentPoly.monomial(exp)))


def _divide(num: XPolynomial, den: XPolynomial) -> XPolynomial:
    zero = (0,) * num.rank
    if set(den.terms) - {zero}:
        raise ParseError("can only divide by scalars")
    c = den.coefficient(zero)
    return num.map(lambda x: (x / c).normalize())


def parse_xpoly(text: str, rs: RootSystem, params: ParameterMap | None = None) -> XPolynomial:
    params = params or ParameterMap(rs)
    return _Parser(text, rs, params).parse().normalize()
