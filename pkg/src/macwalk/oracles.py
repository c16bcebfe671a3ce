"""Independent routes to the same polynomials.

* The polynomial representation of the double affine Hecke algebra: explicit
  Demazure-Lusztig operators ``T_i``, the X-side ``T_0^vee``, intertwiners and
  ``Y^{lambda}`` built from signed reduced words in the dual affine Weyl group.
* Hall-Littlewood symmetrization (``q = 0``) and the Weyl character formula
  (``q = t = 0``), computed by exact Laurent division by the Weyl denominator.
"""

from __future__ import annotations

from itertools import product

from .affine import (
    ExtendedAffineElement,
    minimal_coset_rep,
    reduced_word,
    simple_reflection,
    step_side,
    translation,
)
from .ring import (
    LaurentPoly,
    ParameterMap,
    RationalCoefficient,
    XPolynomial,
    rho_c_vexp,
    t_half,
)
from .rootsys import RootSystem, pairing
from .walks import NotDominant, walk_plan


class ZeroDenominator(ZeroDivisionError):
    pass


class NotEigenvector(ArithmeticError):
    pass


class PolynomialRep:
    """Operators on ``C[X]`` for one root system and parameter map."""

    def __init__(self, rs: RootSystem, params: ParameterMap | None = None):
        self.rs = rs
        self.params = params or ParameterMap(rs)
        self.nv = self.params.nv
        self.dual = rs.dual()
        n = rs.rank
        self.simple_roots = [tuple(int(x) for x in rs.cartan[:, i]) for i in range(n)]
        # Y-side node 0: reflection in the highest root, parameter of its coroot
        self.phi = tuple(rs.highest_root)
        self.phi_coroot = tuple(rs.highest_root_coroot)
        self._var = {i: self.params.node_var(i) for i in range(1, n + 1)}
        self._var[0] = self.params.var(rs.coroot_class[self.phi_coroot])
        self._var_vee0 = self.params.node_var(0)
        self._sym_word = rs.reflection(rs.highest_coroot).reduced_word()
        self._ywords: dict = {}

    # ------------------------------------------------------------ scalars
    def v(self, var: int, power: int = 1) -> LaurentPoly:
        e = [0] * (self.nv + 1)
        e[var + 1] = power
        return LaurentPoly.monomial(e)

    def mono(self, qexp: int = 0, vexp=None) -> LaurentPoly:
        return LaurentPoly.monomial((qexp, *(vexp or (0,) * self.nv)))

    def _vdiff(self, var: int) -> LaurentPoly:
        return self.v(var, 1) - self.v(var, -1)

    def one(self) -> XPolynomial:
        return XPolynomial.one(self.nv, self.rs.rank)

    def monomial(self, mu, coeff=1) -> XPolynomial:
        return XPolynomial(self.nv, self.rs.rank, {tuple(mu): coeff})

    # ------------------------------------------------------- T generators
    def _reflection_data(self, i: int, mu):
        """``(m, a_q, a)`` with ``m = <mu, alpha_i^vee>`` and ``X^{alpha_i} = q^{a_q} X^a``."""
        if i == 0:
            return -int(pairing(self.phi_coroot, mu)), 1, tuple(-x for x in self.phi)
        return int(mu[i - 1]), 0, self.simple_roots[i - 1]

    def T(self, i: int, f: XPolynomial) -> XPolynomial:
        """Demazure-Lusztig operator
        ``T_i = t^{1/2} s_i + (t^{1/2} - t^{-1/2}) (1 - s_i) / (1 - X^{alpha_i})``.
        """
        var = self._var[i]
        vp = self.v(var, 1)
        vd = self._vdiff(var)
        out: dict = {}

        def put(nu, c):
            out[nu] = out[nu] + c if nu in out else c

        for mu, c in f.terms.items():
            m, aq, a = self._reflection_data(i, mu)
            if m == 0:
                put(mu, c * vp)
                continue
            smu = tuple(x - m * y for x, y in zip(mu, a))
            put(smu, c * (vp * self.mono(-m * aq)))
            if m > 0:
                for k in range(1, m + 1):
                    nu = tuple(x - k * y for x, y in zip(mu, a))
                    put(nu, c * (vd * self.mono(-k * aq)) * -1)
            else:
                for k in range(0, -m):
                    nu = tuple(x + k * y for x, y in zip(mu, a))
                    put(nu, c * (vd * self.mono(k * aq)))
        return XPolynomial(self.nv, self.rs.rank, out)

    def T_inv(self, i: int, f: XPolynomial) -> XPolynomial:
        return self.T(i, f) - f.scale(RationalCoefficient(self._vdiff(self._var[i])))

    def T_word(self, word, f: XPolynomial, inverse: bool = False) -> XPolynomial:
        """``T_{i_1} ... T_{i_l} f`` (or its inverse ``T_{i_l}^{-1} ... T_{i_1}^{-1} f``)."""
        if inverse:
            for i in word:
                f = self.T_inv(i, f)
        else:
            for i in reversed(word):
                f = self.T(i, f)
        return f

    def X(self, mu, f: XPolynomial) -> XPolynomial:
        return f.shift(mu)

    def T_vee(self, i: int, f: XPolynomial) -> XPolynomial:
        """``T_i^vee``; for ``i = 0`` it is ``T_{s_theta}^{-1} X^{-theta}``."""
        if i:
            return self.T(i, f)
        return self.T_word(self._sym_word, f.shift(tuple(-x for x in self.rs.theta)), inverse=True)

    def T_vee_inv(self, i: int, f: XPolynomial) -> XPolynomial:
        if i:
            return self.T_inv(i, f)
        return self.T_word(self._sym_word, f).shift(self.rs.theta)

    def vee_var(self, i: int) -> int:
        return self._var_vee0 if i == 0 else self._var[i]

    def apply_length_zero(self, g: ExtendedAffineElement, f: XPolynomial) -> XPolynomial:
        """``X^{mu_g} T_{w_g}`` for a length-zero element ``g = X^{mu_g} w_g``."""
        return self.T_word(g.w.reduced_word(), f).shift(g.mu)

    # ----------------------------------------------------------------- Y
    def y_word(self, lam) -> list[tuple[int, int]]:
        """Signed reduced word ``[(i, eps)]`` of ``Y^{lam}`` for ``lam`` in the coroot lattice."""
        lam = tuple(int(x) for x in lam)
        if lam not in self._ywords:
            n = self.rs.rank
            # coroot coordinates -> fundamental coweight coordinates of the dual system
            coords = tuple(sum(lam[i] * int(self.rs.cartan[i, j]) for i in range(n)) for j in range(n))
            g, word = reduced_word(translation(self.dual, coords))
            if g.mu != (0,) * n or not g.w.is_identity():
                raise ValueError("Y^lambda needs lambda in the coroot lattice")
            out = []
            z = translation(self.dual, (0,) * n)
            for j in word:
                side = step_side(self.dual, z.w, j)
                out.append((j, 1 if side < 0 else -1))
                z = z * simple_reflection(self.dual, j)
            self._ywords[lam] = out
        return self._ywords[lam]

    def Y(self, lam, f: XPolynomial) -> XPolynomial:
        for i, eps in reversed(self.y_word(lam)):
            f = self.T(i, f) if eps > 0 else self.T_inv(i, f)
        return f

    def Y_affine(self, lam, k: int, f: XPolynomial) -> XPolynomial:
        """``Y^{lam + k d} = q^{-k} Y^{lam}``."""
        return self.Y(lam, f).scale(RationalCoefficient(self.mono(-k)))

    def y_scalar(self, lam, k: int, f: XPolynomial) -> RationalCoefficient:
        """Eigenvalue of ``Y^{lam + k d}`` on ``f``, read off from the operator."""
        g = self.Y_affine(lam, k, f)
        key = max(f.terms)
        c = (g.coefficient(key) / f.coefficient(key)).normalize()
        if g != f.scale(c):
            raise NotEigenvector(f"input is not a Y^{list(lam)} eigenvector")
        return c

    # ------------------------------------------------------- intertwiners
    def tau(self, i: int, f: XPolynomial, y_minus_alpha: RationalCoefficient) -> XPolynomial:
        """``tau_i^vee f`` given the scalar by which ``Y^{-alpha_i^vee}`` acts on ``f``."""
        var = self.vee_var(i)
        den = RationalCoefficient.const(self.nv) - y_minus_alpha
        if den.is_zero():
            raise ZeroDenominator(f"tau_{i} applied where Y^(-alpha_{i}) acts by 1")
        num = RationalCoefficient(self.v(var, -1) - self.v(var, 1))
        return self.T_vee(i, f) + f.scale((num / den).normalize())

    def y_minus_alpha(self, i: int, f: XPolynomial) -> RationalCoefficient:
        """Operator-computed eigenvalue of ``Y^{-alpha_i^vee}`` (``alpha_0^vee = -phi^vee + d``)."""
        if i == 0:
            return self.y_scalar(self.rs.highest_coroot, -1, f)
        e = tuple(-int(j == i - 1) for j in range(self.rs.rank))
        return self.y_scalar(e, 0, f)

    def E_via_operators(self, mu) -> XPolynomial:
        """``E_mu = g^vee tau_{i_1} ... tau_{i_l} 1`` with every Y-eigenvalue computed by operators."""
        plan = walk_plan(self.rs, mu)
        f = self.one()
        for i in reversed(plan.word):
            f = self.tau(i, f, self.y_minus_alpha(i, f)).normalize()
        return self.apply_length_zero(plan.g, f).normalize()

    def eigenvalue(self, mu, lam) -> LaurentPoly:
        """``q^{-<lam, mu>} q^{<m^{-1} lam, rho_c>}`` for ``X^mu m`` minimal in its coset."""
        m = minimal_coset_rep(self.rs, mu).w
        mlam = m.inverse().coact(lam)
        return LaurentPoly.monomial((-int(pairing(lam, mu)), *rho_c_vexp(self.rs, self.params, mlam)))

    def symmetrize_1_0(self, f: XPolynomial) -> XPolynomial:
        """``sum_w t_{w_0 w}^{-1/2} T_w f``."""
        rs = self.rs
        w0 = rs.longest_element
        out = XPolynomial(self.nv, rs.rank)
        for w in rs.elements:
            pref = t_half(w0 * w, self.params)
            c = RationalCoefficient.monomial((0, *(-x for x in pref[1:])))
            out = out + self.T_word(w.reduced_word(), f).scale(c)
        return out.normalize()

    # ---------------------------------------------------- relation checks
    def braid_order(self, i: int, j: int, dual_side: bool = False):
        """``m_ij`` for nodes of the affine diagram (``None`` if infinite)."""
        a = self._affine_pair(i, j, dual_side) * self._affine_pair(j, i, dual_side)
        return {0: 2, 1: 3, 2: 4, 3: 6}.get(a)

    def _affine_pair(self, i, j, dual_side):
        # <alpha_j, alpha_i^vee> on the Y side (alpha_0 = -phi) or X side (alpha_0^vee = -phi^vee)
        rs = self.rs
        if dual_side:
            root = [tuple(-x for x in rs.theta)] + self.simple_roots
            cor = [tuple(-x for x in rs.highest_coroot)] + [tuple(int(k == m) for k in range(rs.rank)) for m in range(rs.rank)]
        else:
            root = [tuple(-x for x in self.phi)] + self.simple_roots
            cor = [tuple(-x for x in self.phi_coroot)] + [tuple(int(k == m) for k in range(rs.rank)) for m in range(rs.rank)]
        return int(pairing(cor[i], root[j]))


# ------------------------------------------------------------------ helpers
_REPS: dict = {}


def rep_for(rs: RootSystem, params: ParameterMap | None = None) -> PolynomialRep:
    params = params or ParameterMap(rs)
    key = (id(rs), params.mode, tuple(params.names))
    hit = _REPS.get(key)
    if hit is None or hit.rs is not rs:
        hit = PolynomialRep(rs, params)
        _REPS[key] = hit
    return hit


def apply_T(rs, i, f, params=None):
    return rep_for(rs, params).T(i, f)


def apply_T_inverse(rs, i, f, params=None):
    return rep_for(rs, params).T_inv(i, f)


def apply_tau(rs, i, f, params=None, y_minus_alpha=None):
    rep = rep_for(rs, params)
    if y_minus_alpha is None:
        y_minus_alpha = rep.y_minus_alpha(i, f)
    return rep.tau(i, f, y_minus_alpha)


def apply_Y(rs, lam, f, params=None):
    return rep_for(rs, params).Y(lam, f)


def eigenvalue(rs, mu, lam, params=None) -> LaurentPoly:
    return rep_for(rs, params).eigenvalue(mu, lam)


def E_via_operators(rs, mu, params=None) -> XPolynomial:
    return rep_for(rs, params).E_via_operators(mu)


def symmetrize_1_0(rs, f, params=None) -> XPolynomial:
    return rep_for(rs, params).symmetrize_1_0(f)


def height_bounded_weights(rs: RootSystem, bound: int = 8) -> list[tuple]:
    """Weights ``mu`` whose dominant representative has ``<mu + rho, phi^vee> <= bound``."""
    phi = rs.highest_coroot
    out = set()
    dom = []
    for mu in product(range(0, bound + 1), repeat=rs.rank):
        if pairing(phi, tuple(x + 1 for x in mu)) <= bound:
            dom.append(mu)
    for mu in dom:
        for w in rs.elements:
            out.add(w.act(mu))
    return sorted(out)


# ------------------------------------------------------ symmetric formulas
def _laurent_divide_x(num: dict, den: dict, nv: int):
    """Exact division of X-Laurent polynomials with ``LaurentPoly`` coefficients.

    The divisor's lex-leading coefficient must be a unit ``+-1``; every quotient
    exponent is confined to the per-coordinate degree box.
    """
    if not num:
        return {}
    n = len(next(iter(den)))
    lead = max(den)
    lc = den[lead]
    if lc.is_one():
        sign = 1
    elif (-lc).is_one():
        sign = -1
    else:
        raise ValueError("divisor needs a unit leading coefficient")
    lo = [min(k[i] for k in num) - min(k[i] for k in den) for i in range(n)]
    hi = [max(k[i] for k in num) - max(k[i] for k in den) for i in range(n)]
    rem = dict(num)
    quot = {}
    while rem:
        top = max(rem)
        qk = tuple(a - b for a, b in zip(top, lead))
        if any(x < a or x > b for x, a, b in zip(qk, lo, hi)):
            raise ArithmeticError("Weyl-denominator division is not exact")
        qc = rem[top] * sign
        quot[qk] = qc
        for k, c in den.items():
            kk = tuple(a + b for a, b in zip(qk, k))
            val = rem.get(kk, LaurentPoly(nv)) - qc * c
            if val.is_zero():
                rem.pop(kk, None)
            else:
                rem[kk] = val
    return quot


def _alternant(rs: RootSystem, base: dict, nv: int) -> dict:
    """``sum_w det(w) w(base)``."""
    out: dict = {}
    for w in rs.elements:
        d = w.det()
        for mu, c in base.items():
            k = w.act(mu)
            val = out.get(k, LaurentPoly(nv)) + c * d
            if val.is_zero():
                out.pop(k, None)
            else:
                out[k] = val
    return out


def _weyl_denominator(rs: RootSystem, nv: int) -> dict:
    return _alternant(rs, {tuple(rs.rho): LaurentPoly.const(nv)}, nv)


def hall_littlewood(rs: RootSystem, mu, params: ParameterMap | None = None) -> XPolynomial:
    """``(1/W_mu(t)) sum_w w(X^mu prod_{a>0} (1 - t_a X^{-a}) / (1 - X^{-a}))``."""
    params = params or ParameterMap(rs)
    mu = tuple(int(x) for x in mu)
    if not rs.is_dominant(mu):
        raise NotDominant(f"weight {mu} is not dominant")
    nv = params.nv
    base = {tuple(a + b for a, b in zip(mu, rs.rho)): LaurentPoly.const(nv)}
    for root, cor in zip(rs.positive_roots, rs.positive_coroots):
        e = [0] * (nv + 1)
        e[params.var(rs.coroot_class[cor]) + 1] = 2
        t_a = LaurentPoly.monomial(e)
        nxt: dict = {}
        for k, c in base.items():
            nxt[k] = nxt.get(k, LaurentPoly(nv)) + c
            kk = tuple(x - y for x, y in zip(k, root))
            nxt[kk] = nxt.get(kk, LaurentPoly(nv)) - c * t_a
        base = {k: c for k, c in nxt.items() if not c.is_zero()}
    quot = _laurent_divide_x(_alternant(rs, base, nv), _weyl_denominator(rs, nv), nv)
    norm = LaurentPoly(nv)
    for w in rs.stabilizer(mu):
        norm = norm + LaurentPoly.monomial(tuple(2 * x for x in t_half(w, params)))
    out = {}
    for k, c in quot.items():
        d = c.exact_div(norm)
        if d is None:
            raise ArithmeticError("Hall-Littlewood sum is not divisible by W_mu(t)")
        out[k] = d
    return XPolynomial(nv, rs.rank, out)


def weyl_character(rs: RootSystem, mu, nv: int = 1) -> XPolynomial:
    """``sum_w det(w) X^{w(mu+rho)} / sum_w det(w) X^{w rho}``."""
    mu = tuple(int(x) for x in mu)
    if not rs.is_dominant(mu):
        raise NotDominant(f"weight {mu} is not dominant")
    base = {tuple(a + b for a, b in zip(mu, rs.rho)): LaurentPoly.const(nv)}
    quot = _laurent_divide_x(_alternant(rs, base, nv), _weyl_denominator(rs, nv), nv)
    return XPolynomial(nv, rs.rank, quot)


# ------------------------------------------------------------ relation suite
def _s_X(rep: PolynomialRep, i: int, mu) -> tuple[int, tuple]:
    """``X^{s_i mu} = q^k X^nu`` as ``(k, nu)`` for the Y-side reflections."""
    m, aq, a = rep._reflection_data(i, mu)
    return -m * aq, tuple(x - m * y for x, y in zip(mu, a))


def check_relations(rs: RootSystem, params: ParameterMap | None = None, bound: int = 8, probes: int = 6) -> dict:
    """Count violations of the quadratic, braid and X-commutation relations.

    Operators are compared on every monomial of height at most ``bound``;
    commutation relations use the first ``probes`` of those monomials as
    right-hand inputs.  Returns ``{name: (checked, failed)}``.
    """
    rep = rep_for(rs, params)
    n = rs.rank
    mons = height_bounded_weights(rs, bound)
    fs = [rep.monomial(mu) for mu in mons]
    out = {}

    def tally(name, ok):
        c, f = out.get(name, (0, 0))
        out[name] = (c + 1, f + (not ok))

    for i in range(n + 1):
        vd = RationalCoefficient(rep._vdiff(rep._var[i]))
        vdv = RationalCoefficient(rep._vdiff(rep.vee_var(i)))
        for f in fs:
            tf = rep.T(i, f)
            tally("quadratic", rep.T(i, tf) == tf.scale(vd) + f)
            tally("inverse", rep.T_inv(i, tf) == f)
            if i == 0:
                tv = rep.T_vee(0, f)
                tally("quadratic_vee0", rep.T_vee(0, tv) == tv.scale(vdv) + f)
                tally("inverse_vee0", rep.T_vee_inv(0, tv) == f)

    for dual_side, op in ((False, rep.T), (True, rep.T_vee)):
        name = "braid_vee" if dual_side else "braid"
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                if dual_side and i != 0:
                    continue  # T_i^vee = T_i for i >= 1
                m = rep.braid_order(i, j, dual_side)
                if m is None:
                    continue
                wa = [i if k % 2 == 0 else j for k in range(m)]
                wb = [j if k % 2 == 0 else i for k in range(m)]
                for f in fs:
                    ga, gb = f, f
                    for a, b in zip(reversed(wa), reversed(wb)):
                        ga, gb = op(a, ga), op(b, gb)
                    tally(name, ga == gb)

    probe = fs[:probes]
    for i in range(n + 1):
        for mu in mons:
            m, _, _ = rep._reflection_data(i, mu)
            if m not in (0, 1):
                continue
            k, nu = _s_X(rep, i, mu)
            qk = RationalCoefficient(rep.mono(k))
            for f in probe:
                if m == 0:
                    lhs = rep.T(i, f.shift(mu))
                    rhs = rep.T(i, f).shift(nu).scale(qk)
                else:
                    lhs = rep.T(i, rep.T(i, f).shift(mu))
                    rhs = f.shift(nu).scale(qk)
                tally(f"commutation_{m}", lhs == rhs)
    return out


def check_eigen_relations(rs: RootSystem, mus, params: ParameterMap | None = None, lams=None) -> dict:
    """Eigenvector, Lusztig and intertwining relations on walk-computed ``E_mu``."""
    from .walks import E_polynomial

    rep = rep_for(rs, params)
    n = rs.rank
    if lams is None:
        lams = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple(rs.highest_coroot)]
    out = {}

    def tally(name, ok):
        c, f = out.get(name, (0, 0))
        out[name] = (c + 1, f + (not ok))

    for mu in mus:
        E = E_polynomial(rs, mu, rep.params)
        for lam in lams:
            ev = RationalCoefficient(rep.eigenvalue(mu, lam))
            tally("eigenvector", rep.Y(lam, E) == E.scale(ev))
        for i in range(1, n + 1):
            # Lusztig: T_i Y^lam E = Y^{s_i lam} T_i E + (v - v^-1)(c_lam - c_{s_i lam})/(1 - c_{-alpha_i}) E
            c_neg = RationalCoefficient(rep.eigenvalue(mu, tuple(-int(i - 1 == j) for j in range(n))))
            vd = RationalCoefficient(rep._vdiff(rep._var[i]))
            TE = rep.T(i, E)
            for lam in lams:
                slam = rs.s(i).coact(lam)
                c_l = RationalCoefficient(rep.eigenvalue(mu, lam))
                c_s = RationalCoefficient(rep.eigenvalue(mu, slam))
                lhs = TE.scale(c_l)
                rhs = rep.Y(slam, TE)
                if not (c_l - c_s).is_zero():
                    rhs = rhs + E.scale((vd * (c_l - c_s) / (1 - c_neg)).normalize())
                tally("lusztig", lhs == rhs)
                if (1 - c_neg).is_zero():
                    continue
                tE = rep.tau(i, E, c_neg)
                tally("intertwiner", rep.Y(slam, tE) == tE.scale(c_l))
    return out
