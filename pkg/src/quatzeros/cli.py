"""Command-line front end: expression grammar for quaternion polynomials and
points, command dispatch, deterministic seeding, JSON/text reporting.

Grammar (LL(1), explicit `*`, unary minus binds tighter than `*`):

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | power
    power  := atom ('^' INT)?
    atom   := NUMBER | NAME | '(' expr ')'

Division is only defined by nonzero central scalars.  NAMEs are the
quaternion units I, J, K, the variables x1..xn (x, y, z alias x1..x3), and
the function-field generators when the scalar field has them.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .central import blow_up, central_presentation
from .ideal import (central_grid, IncommensurableRadii, verify_blowup,
                    verify_central_zeros)
from .msphere import cutting_generators, restrict, vanishes_on, verify_cut
from .poly import ArityMismatch, QPoly
from .qform import verify_counterexample
from .quat import QuaternionAlgebra
from .scalars import FLOAT64, RAT, FunctionField

SCHEMA_VERSION = 1


class ParseError(ValueError):
    """Syntax or arity error, carrying the offending position."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class ArityError(ParseError):
    pass


_OPS = set("+-*/^(),")


def tokenize(src):
    """(kind, value, pos) triples; kind in {num, name, op, end}."""
    out = []
    m = 0
    while m < len(src):
        ch = src[m]
        if ch.isspace():
            m += 1
            continue
        if ch in _OPS:
            out.append(("op", ch, m))
            m += 1
            continue
        if ch.isdigit() or ch == ".":
            start = m
            while m < len(src) and (src[m].isdigit() or src[m] == "."):
                m += 1
            if m < len(src) and src[m] in "eE" and "." in src[start:m]:
                m += 1
                if m < len(src) and src[m] in "+-":
                    m += 1
                while m < len(src) and src[m].isdigit():
                    m += 1
            out.append(("num", src[start:m], start))
            continue
        if ch.isalpha() or ch == "_":
            start = m
            while m < len(src) and (src[m].isalnum() or src[m] == "_"):
                m += 1
            out.append(("name", src[start:m], start))
            continue
        raise ParseError(f"unexpected character {ch!r}", m)
    out.append(("end", "", len(src)))
    return out


class _Parser:
    """Recursive-descent evaluation straight into QPoly values."""

    def __init__(self, src, alg, n, var_map=None):
        self.src = src
        self.toks = tokenize(src)
        self.pos = 0
        self.alg = alg
        self.n = n
        self.var_map = var_map if var_map is not None else _default_vars(n)

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind=None, value=None):
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", tok[2])
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1]!r}", tok[2])
        self.pos += 1
        return tok

    def parse_expr(self):
        v = self.parse_term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.parse_term()
            v = v + w if op == "+" else v - w
        return v

    def parse_term(self):
        v = self.parse_factor()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            _, op, pos = self.take()
            w = self.parse_factor()
            if op == "*":
                v = v * w
            else:
                v = self._divide(v, w, pos)
        return v

    def parse_factor(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.parse_factor()
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, value, pos = self.peek()
            if kind != "num" or not value.isdigit():
                raise ParseError("exponent must be a non-negative integer", pos)
            self.take()
            return base ** int(value)
        return base

    def parse_atom(self):
        kind, value, pos = self.peek()
        if kind == "op" and value == "(":
            self.take()
            v = self.parse_expr()
            self.take("op", ")")
            return v
        if kind == "num":
            self.take()
            return self._const(self._number(value, pos))
        if kind == "name":
            self.take()
            return self._name(value, pos)
        raise ParseError(f"unexpected token {value!r}", pos)

    def _number(self, text, pos):
        field = self.alg.field
        try:
            if field.name == "f64":
                return field.coerce(float(text))
            if "." in text or "e" in text or "E" in text:
                raise ParseError("decimal literals need --field f64", pos)
            return field.coerce(int(text))
        except (ValueError, TypeError):
            raise ParseError(f"bad numeric literal {text!r}", pos) from None

    def _const(self, scalar):
        return QPoly.const(self.alg, self.n, self.alg.scalar(scalar))

    def _name(self, name, pos):
        if name == "I":
            return QPoly.const(self.alg, self.n, self.alg.i)
        if name == "J":
            return QPoly.const(self.alg, self.n, self.alg.j)
        if name == "K":
            return QPoly.const(self.alg, self.n, self.alg.k)
        if name in self.var_map:
            idx = self.var_map[name]
            if idx >= self.n:
                raise ArityError(f"variable {name!r} exceeds arity {self.n}", pos)
            return QPoly.variable(self.alg, self.n, idx)
        field = self.alg.field
        if isinstance(field, FunctionField) and name in field.variables:
            return self._const(field.gen(name))
        raise ArityError(f"unknown name {name!r}", pos)

    def _divide(self, v, w, pos):
        const = _as_central_scalar(w)
        if const is None:
            raise ParseError("division is only defined by central scalars", pos)
        if const == 0:
            raise ParseError("division by zero", pos)
        return v.scale_right(1 / const)


def _default_vars(n):
    out = {f"x{m + 1}": m for m in range(n)}
    for alias, idx in (("x", 0), ("y", 1), ("z", 2)):
        if idx < n:
            out.setdefault(alias, idx)
    return out


def _as_central_scalar(p):
    if p.is_zero():
        return p.alg.field.zero
    if list(p.terms.keys()) != [(0,) * p.n]:
        return None
    c = p.terms[(0,) * p.n]
    if not c.is_scalar():
        return None
    return c.scalar_part()


def parse_poly(src, n, alg):
    """Parse into left-coefficient normal form: quaternion literals collect
    in written order, variables commute out to the right."""
    parser = _Parser(src, alg, n)
    v = parser.parse_expr()
    parser.take("end")
    return v


def parse_point(src, alg):
    """Parenthesized comma-separated quaternion expressions."""
    parser = _Parser(src, alg, 0, var_map={})
    parser.take("op", "(")
    coords = [_point_coord(parser)]
    while parser.peek()[:2] == ("op", ","):
        parser.take()
        coords.append(_point_coord(parser))
    parser.take("op", ")")
    parser.take("end")
    return tuple(coords)


def _point_coord(parser):
    v = parser.parse_expr()
    if v.is_zero():
        return parser.alg.zero
    if list(v.terms.keys()) != [()]:
        raise ParseError("point coordinates must be constant", 0)
    return v.terms[()]


def parse_scalar_expr(src, field):
    """A bare scalar (used for --algebra constants)."""
    alg = QuaternionAlgebra(-1, -1, field) if field.name != "func" else \
        QuaternionAlgebra(field.gen(field.variables[0]),
                          field.gen(field.variables[0]), field)
    parser = _Parser(src, alg, 0, var_map={})
    v = parser.parse_expr()
    parser.take("end")
    c = _as_central_scalar(v)
    if c is None:
        raise ParseError("expected a scalar expression", 0)
    return c


def poly_to_text(p, var_names=None):
    return p.text(var_names)


def point_to_text(v):
    return "(" + ", ".join(q.text() for q in v) + ")"


def _build_field(name):
    if name == "rat":
        return RAT
    if name == "f64":
        return FLOAT64
    if name == "func":
        return FunctionField(("al", "be", "t"))
    raise ValueError(f"unknown field {name!r}")


def _build_algebra(args):
    field = _build_field(args.field)
    parts = args.algebra.split(",")
    if len(parts) != 2:
        raise ParseError("--algebra expects two comma-separated constants", 0)
    a = parse_scalar_expr(parts[0], field)
    b = parse_scalar_expr(parts[1], field)
    return QuaternionAlgebra(a, b, field)


def _emit(args, payload, text_lines):
    if args.json:
        body = {"schema": SCHEMA_VERSION}
        body.update(payload)
        print(json.dumps(body, sort_keys=False))
    else:
        for line in text_lines:
            print(line)


def _report_exit(args, report, extra=None):
    payload = {"command": args.command, "report": report.to_json()}
    if extra:
        payload.update(extra)
    _emit(args, payload, report.lines())
    return 0 if report.passed else 1


def _cmd_eval(args):
    alg = _build_algebra(args)
    point = parse_point(args.at, alg)
    n = args.n or len(point)
    p = parse_poly(args.poly, n, alg)
    value = p.evaluate(point)
    _emit(args, {"command": "eval", "value": value.text()}, [value.text()])
    return 0


def _cmd_present(args):
    alg = _build_algebra(args)
    v = parse_point(args.point, alg)
    pres = central_presentation(v)
    payload = {
        "command": "present",
        "v0": [q.text() for q in pres.v0],
        "blocks": [[q.text() for q in b] for b in pres.block_tuples],
        "r": pres.r,
    }
    lines = [f"v0 = ({', '.join(q.text() for q in pres.v0)})"]
    for m, b in enumerate(pres.block_tuples, 1):
        lines.append(f"block {m}: ({', '.join(q.text() for q in b)})")
    lines.append(f"r = {pres.r}")
    _emit(args, payload, lines)
    return 0


def _cmd_blowup(args):
    alg = _build_algebra(args)
    v = parse_point(args.point, alg)
    S = blow_up(v)
    data = S.to_json()
    lines = [f"v0 = ({', '.join(q.text() for q in S.v0)})"]
    for m, b in enumerate(S.blocks, 1):
        lines.append(
            f"block {m}: A=({', '.join(map(str, b.A))}) "
            f"lambda=({', '.join(map(str, b.lam))}) rho={b.rho}")
    _emit(args, {"command": "blowup", "multisphere": data}, lines)
    return 0


def _cmd_restrict(args):
    alg = _build_algebra(args)
    v = parse_point(args.at, alg)
    S = blow_up(v)
    p = parse_poly(args.poly, S.dim, alg)
    q = restrict(p, S)
    terms = [{"subset": [m + 1 for m in key], "coeff": c.text()}
             for key, c in sorted(q.terms.items())]
    lines = [repr(q)]
    _emit(args, {"command": "restrict", "r": q.r, "terms": terms}, lines)
    return 0


def _cmd_vanish(args):
    alg = _build_algebra(args)
    v = parse_point(args.at, alg)
    S = blow_up(v)
    p = parse_poly(args.poly, S.dim, alg)
    result = vanishes_on(S, p)
    _emit(args, {"command": "vanish", "vanishes": result},
          ["vanishes" if result else "does not vanish"])
    return 0


def _cmd_cut_ideal(args):
    alg = _build_algebra(args)
    v = parse_point(args.point, alg)
    S = blow_up(v)
    gens = cutting_generators(S)
    _emit(args, {"command": "cut-ideal",
                 "generators": [g.to_json() for g in gens]},
          [g.text() for g in gens])
    return 0


def _cmd_grid(args):
    alg = _build_algebra(args)
    v = parse_point(args.point, alg)
    try:
        grid = central_grid(v)
    except IncommensurableRadii as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    pts = [point_to_text(p) for p in grid.points]
    _emit(args, {"command": "grid", "points": pts}, pts)
    return 0


def _cmd_verify(args):
    alg = _build_algebra(args)
    if args.what == "counterexample":
        return _report_exit(args, verify_counterexample(seed=args.seed))
    if args.what == "blowup":
        reports = []
        for v in _verify_points(args, alg):
            reports.append(verify_blowup(v, seed=args.seed))
        return _merge_reports(args, reports)
    if args.what == "cut":
        reports = []
        for v in _verify_points(args, alg):
            reports.append(verify_cut(blow_up(v), seed=args.seed))
        return _merge_reports(args, reports)
    if args.what == "central-zeros":
        from .ideal import LeftIdeal, sample_member
        reports = []
        for v in _verify_points(args, alg):
            if args.poly:
                f = parse_poly(args.poly, len(v), alg)
            else:
                S = blow_up(v)
                ideal = LeftIdeal.of(*cutting_generators(S))
                f = sample_member(ideal, 2, args.seed)
            reports.append(verify_central_zeros(f, v, seed=args.seed))
        return _merge_reports(args, reports)
    raise AssertionError(args.what)


def _verify_points(args, alg):
    if args.point:
        return [parse_point(args.point, alg)]
    from .ideal import random_commensurable_point
    rng = random.Random(args.seed)
    out = []
    for _ in range(args.instances):
        n = rng.randint(2, 5)
        out.append(random_commensurable_point(alg, n, rng))
    return out


def _merge_reports(args, reports):
    merged = {"command": args.command,
              "reports": [r.to_json() for r in reports]}
    lines = []
    for r in reports:
        lines.extend(r.lines())
    ok = all(r.passed for r in reports)
    _emit(args, merged, lines + [f"{'PASS' if ok else 'FAIL'}  {len(reports)} instance(s)"])
    return 0 if ok else 1


def build_arg_parser():
    ap = argparse.ArgumentParser(
        prog="quatzeros",
        description="Exact computer algebra for zero sets of left ideals "
                    "over quaternion algebras.")
    ap.add_argument("--algebra", default="-1,-1", metavar="A,B",
                    help="structure constants (default Hamilton: -1,-1)")
    ap.add_argument("--field", default="rat", choices=("rat", "f64", "func"),
                    help="scalar field (default exact rationals)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true", help="JSON output")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a polynomial at a point")
    p.add_argument("poly")
    p.add_argument("--at", required=True, metavar="POINT")
    p.add_argument("--n", type=int, default=0, help="arity override")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("present", help="central presentation of a point")
    p.add_argument("point")
    p.set_defaults(func=_cmd_present)

    p = sub.add_parser("blowup", help="blow-up multisphere of a point")
    p.add_argument("point")
    p.set_defaults(func=_cmd_blowup)

    p = sub.add_parser("restrict", help="multi-affine restriction to a blow-up")
    p.add_argument("poly")
    p.add_argument("--at", required=True, metavar="POINT")
    p.set_defaults(func=_cmd_restrict)

    p = sub.add_parser("vanish", help="does the polynomial vanish on the blow-up")
    p.add_argument("poly")
    p.add_argument("--at", required=True, metavar="POINT")
    p.set_defaults(func=_cmd_vanish)

    p = sub.add_parser("cut-ideal", help="generators cutting out the blow-up")
    p.add_argument("point")
    p.set_defaults(func=_cmd_cut_ideal)

    p = sub.add_parser("grid", help="the 2^r central grid of a point")
    p.add_argument("point")
    p.set_defaults(func=_cmd_grid)

    p = sub.add_parser("verify", help="run a verification harness")
    p.add_argument("what", choices=("blowup", "central-zeros", "cut",
                                    "counterexample"))
    p.add_argument("--point", default=None)
    p.add_argument("--poly", default=None)
    p.add_argument("--instances", type=int, default=5)
    p.set_defaults(func=_cmd_verify)
    return ap


def dispatch(argv):
    ap = build_arg_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ParseError, ArityMismatch, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
