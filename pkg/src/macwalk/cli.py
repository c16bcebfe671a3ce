"""``macwalk`` command line: compute, walks, specialize, selftest.

Exit codes: 0 ok, 1 selftest failure, 2 bad input, 3 weight not dominant,
4 internal invariant breach, 5 pole at the requested specialization.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .affine import NonReducedWord, finite
from .expr import ParseError, parse_weight
from .oracles import NotEigenvector, ZeroDenominator
from .ring import (
    DivisionByZero,
    ParameterMap,
    PoleAtSpecialization,
    RationalCoefficient,
    XPolynomial,
    format_xpoly,
    specialize,
)
from .rootsys import RootSystem, UnsupportedType, build_root_system, parse_type
from .svg import RankTooLargeForSvg, walks_svg
from .walks import (
    NotDominant,
    E_polynomial,
    P_polynomial,
    _prefactor_exp,
    count_walks,
    walk_plan,
    walk_terms,
)

EXIT_OK, EXIT_SELFTEST, EXIT_INPUT, EXIT_NOT_DOMINANT, EXIT_INVARIANT, EXIT_POLE = 0, 1, 2, 3, 4, 5


class InvariantBreach(RuntimeError):
    pass


# ------------------------------------------------------------------ documents
def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def polynomial_document(kind: str, rs: RootSystem, mu, params: ParameterMap, p: XPolynomial, extra=None) -> dict:
    doc = {
        "format": "macwalk-polynomial",
        "kind": kind,
        "root_system": rs.to_json(),
        "weight": list(mu),
        "params": params.to_json(),
        "terms": p.to_json(),
    }
    if extra:
        doc.update(extra)
    return doc


def read_document(doc: dict) -> tuple[RootSystem, ParameterMap, XPolynomial]:
    try:
        rs = build_root_system(doc["root_system"]["type"], doc["root_system"]["rank"])
        params = ParameterMap.from_json(rs, doc["params"])
        p = XPolynomial.from_json(params.nv, rs.rank, doc["terms"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"not a macwalk polynomial document: {exc}") from exc
    return rs, params, p


def _root_system(args) -> RootSystem:
    label = args.type_opt or args.type
    if label is None:
        raise ValueError("a root system type is required")
    if args.rank is not None:
        letter = re.sub(r"\d+$", "", label)
        return build_root_system(letter, args.rank)
    letter, rank = parse_type(label)
    return build_root_system(letter, rank)


def _weight(args, rs: RootSystem) -> tuple:
    text = args.weight_opt if args.weight_opt is not None else args.weight
    if text is None:
        raise ValueError("a weight is required")
    return parse_weight(text, rs.rank)


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _format(p: XPolynomial, params: ParameterMap, rs: RootSystem, orbit_sums: str) -> str:
    # rank 1 orbits are just X^{l} + X^{-l}; spell them out unless asked
    group = orbit_sums == "on" or (orbit_sums == "auto" and rs.rank >= 2)
    return format_xpoly(p, params.names, rs, group) + "\n"


# ------------------------------------------------------------------- commands
def cmd_compute(args) -> int:
    rs = _root_system(args)
    params = ParameterMap.parse(rs, args.params)
    mu = _weight(args, rs)
    if args.kind == "E":
        p = E_polynomial(rs, mu, params)
    else:
        p = P_polynomial(rs, mu, params)
        if any(p.coefficient(w.act(mu)) != p.coefficient(mu) for w in rs.elements):
            raise InvariantBreach("computed P is not W0-symmetric")
    if args.format == "json":
        _emit(args, dumps(polynomial_document(args.kind, rs, mu, params, p)))
    else:
        _emit(args, _format(p, params, rs, args.orbit_sums))
    return EXIT_OK


def walk_listing(rs: RootSystem, mu, kind: str, params: ParameterMap):
    """``(walk, term)`` pairs in enumeration order for ``E_mu`` or ``P_mu``."""
    plan = walk_plan(rs, mu)
    if kind == "E":
        starts = [(plan.g, None)]
    else:
        if not rs.is_dominant(mu):
            raise NotDominant(f"weight {tuple(mu)} is not dominant")
        starts = [
            (finite(rs, v) * plan.g, RationalCoefficient.monomial(_prefactor_exp(rs, params, v)))
            for v in rs.elements
        ]
    for start, pref in starts:
        for term in walk_terms(plan, params, start, pref):
            yield term


def _steps_text(term) -> str:
    parts = []
    for s in term.walk.steps:
        if s.kind == "crossing":
            parts.append(f"c{s.i}")
        else:
            parts.append(f"f{s.i}{'+' if s.sign > 0 else '-'}")
    return " ".join(parts) if parts else "(empty)"


def cmd_walks(args) -> int:
    rs = _root_system(args)
    params = ParameterMap.parse(rs, args.params)
    mu = _weight(args, rs)
    if args.kind == "P" and not rs.is_dominant(mu):
        raise NotDominant(f"weight {mu} is not dominant")
    if args.count:
        n = count_walks(rs, mu, args.kind)
        if args.format == "json":
            _emit(args, dumps({"count": n, "kind": args.kind, "weight": list(mu)}))
        else:
            _emit(args, f"{n}\n")
        return EXIT_OK
    if args.svg:
        if rs.rank > 2:
            raise RankTooLargeForSvg(f"cannot draw rank {rs.rank}")
        walks = [t.walk for t in walk_listing(rs, mu, args.kind, params)]
        with open(args.svg, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(walks_svg(rs, walks))
        return EXIT_OK
    terms = list(walk_listing(rs, mu, args.kind, params))
    if args.format == "json":
        _emit(args, dumps({"kind": args.kind, "weight": list(mu), "params": params.to_json(), "walks": [t.to_json() for t in terms]}))
        return EXIT_OK
    lines = []
    for n, t in enumerate(terms):
        one = XPolynomial(params.nv, rs.rank, {t.wt: t.coefficient})
        lines.append(f"{n:4d}  start {list(t.walk.start.mu)} {t.walk.start.w.reduced_word()}  {_steps_text(t)}  ->  {format_xpoly(one, params.names, rs)}")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _parse_values(text: str | None):
    if text is None:
        return None
    vals = [None if v.strip() in ("", "*") else Fraction(v.strip()) for v in text.split(",")]
    return vals


def cmd_specialize(args) -> int:
    with open(args.input, encoding="utf-8") as fh:
        doc = json.load(fh)
    rs, params, p = read_document(doc)
    qv = _parse_values(args.q)
    q_val = qv[0] if qv else None
    t_vals = _parse_values(args.t)
    if t_vals is not None:
        if len(t_vals) == 1:
            t_vals = t_vals * params.nv
        if len(t_vals) != params.nv:
            raise ValueError(f"expected {params.nv} t values, got {len(t_vals)}")
    s = specialize(p, q_val, t_vals)
    if args.format == "json":
        extra = {"specialization": {"q": None if q_val is None else str(q_val), "t": None if t_vals is None else [None if x is None else str(x) for x in t_vals]}}
        _emit(args, dumps(polynomial_document(doc.get("kind", "?"), rs, doc.get("weight", []), params, s, extra)))
    else:
        _emit(args, _format(s, params, rs, args.orbit_sums))
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_all

    ok = True
    for name, checked, failed, seconds in run_all(quick=args.quick):
        status = "PASS" if failed == 0 else "FAIL"
        ok &= failed == 0
        print(f"{status}  {name:<40s} checked={checked:<6d} failed={failed:<4d} {seconds:7.2f}s", flush=True)
    return EXIT_OK if ok else EXIT_SELFTEST


# ----------------------------------------------------------------------- main
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="macwalk", description="Macdonald polynomials by alcove walks")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, weight=True):
        sp.add_argument("type", nargs="?", help="root system, e.g. A2, B2, G2")
        sp.add_argument("weight", nargs="?", help="fundamental-weight coordinates, e.g. 1,1 or [-2]")
        sp.add_argument("--type", dest="type_opt")
        sp.add_argument("--rank", type=int)
        sp.add_argument("--weight", dest="weight_opt")
        sp.add_argument("--params", default="equal", help="equal | orbit | orbit:a,b")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--out")

    c = sub.add_parser("compute", help="E_mu or P_mu")
    c.add_argument("kind", choices=("E", "P"))
    common(c)
    c.add_argument("--orbit-sums", choices=("auto", "on", "off"), default="auto", help="group W0-orbits as m_lambda")
    c.set_defaults(func=cmd_compute)

    w = sub.add_parser("walks", help="list, count or draw the alcove walks")
    common(w)
    w.add_argument("--kind", choices=("E", "P"), default="E")
    mode = w.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true")
    mode.add_argument("--svg", metavar="PATH")
    w.set_defaults(func=cmd_walks)

    s = sub.add_parser("specialize", help="substitute values for q and t in a computed document")
    s.add_argument("input")
    s.add_argument("--q")
    s.add_argument("--t", help="one value, or one per parameter orbit; * keeps a variable")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--out")
    s.add_argument("--orbit-sums", choices=("auto", "on", "off"), default="auto")
    s.set_defaults(func=cmd_specialize)

    t = sub.add_parser("selftest", help="run the built-in check suites")
    t.add_argument("--quick", action="store_true")
    t.set_defaults(func=cmd_selftest)
    return parser


_NEG_WEIGHT = re.compile(r"^-\d+(,-?\d+)+$|^-\d*w")


def _protect_negative_weights(argv):
    # argparse would read "-2,1" as an option
    return [f"[{a}]" if _NEG_WEIGHT.match(a) else a for a in argv]


def main(argv=None) -> int:
    argv = _protect_negative_weights(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except NotDominant as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_DOMINANT
    except PoleAtSpecialization as exc:
        print(f"error: pole at specialization: {exc}", file=sys.stderr)
        return EXIT_POLE
    except (InvariantBreach, NotEigenvector, ZeroDenominator, DivisionByZero, AssertionError) as exc:
        print(f"error: invariant breach: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ValueError, ParseError, UnsupportedType, RankTooLargeForSvg, NonReducedWord, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
