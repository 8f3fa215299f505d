"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a verification fails (the
report is still printed), 2 for input or schema errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import schemas
from .berkdomain import FtDomainP1, euler_char
from .exactval import INFTY, DegenerateInputError, InputError, check_prime, format_q, parse_center, parse_q
from .fixtures import frobenius_summary
from .laurent import LaurentPoly, RationalMap
from .ledger import LedgerError, TriangGraph, assemble_global_rh, vertex_residuals
from .ramification import (
    GermOrientationError,
    InternalConsistencyError,
    TangentDirection,
    analyze_germ,
    different_value,
    discriminant_value,
)
from .rhcheck import MorphismSpec, VerificationError, char_p_divisor, check_rh, validate_morphism
from .valpolygon import INSIDE, build_polygon, count_zero_valuations

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _prime(text):
    try:
        return check_prime(int(text))
    except (ValueError, InputError):
        raise argparse.ArgumentTypeError(f"p must be a prime integer, got {text!r}") from None


def _show(phi):
    if phi.den == LaurentPoly.constant(1):
        return repr(phi.num)
    return f"({phi.num!r})/({phi.den!r})"


def _emit(obj, as_json, human, out):
    if as_json:
        out.write(json.dumps(obj, indent=2) + "\n")
    else:
        out.write(human.rstrip("\n") + "\n")


def cmd_polygon(args, out):
    f = LaurentPoly.from_json(schemas.load_json_file(args.poly, "poly"), "poly")
    if f.is_zero():
        raise InputError("poly: the zero polynomial has no polygon")
    P = build_polygon(f, args.p)
    rep = P.to_json()
    lines = [f"polygon of {f!r} at p = {args.p}"]
    lines += [f"  vertex ({i}, {format_q(v)})" for i, v in P.hull]
    lines.append("  breakpoints: " + (", ".join(format_q(s) for s in P.breakpoints()) or "none"))
    if args.range:
        lo, hi = (parse_q(x, "--range") for x in args.range)
        if lo > hi:
            raise InputError("--range: lower end exceeds upper end")
        n = count_zero_valuations(P, lo, hi, True, True)
        rep["range"] = {"lo": format_q(lo), "hi": format_q(hi), "zeros": n}
        lines.append(f"  roots with valuation in [{format_q(lo)}, {format_q(hi)}]: {n}")
    _emit(rep, args.json, "\n".join(lines), out)
    return EXIT_OK


def cmd_annulus(args, out):
    phi = RationalMap.from_json(schemas.load_json_file(args.map, "map"), "map")
    d = schemas.load_json_file(args.dir, "direction")
    direction = TangentDirection(
        parse_center(d["center"], "direction.center"),
        parse_q(d["log_radius"], "direction.log_radius"),
        d.get("side", INSIDE),
    )
    img = d.get("image_center")
    img = None if img is None else parse_center(img, "direction.image_center")
    if phi.is_constant():
        raise InputError("map: constant map has no germ")
    try:
        rep = analyze_germ(phi, direction, args.p, img)
    except GermOrientationError as e:
        raise InputError(f"direction.image_center: {e}") from None
    g = rep.germ
    obj = g.to_json()
    obj.update(
        {
            "separable": g.separable,
            "image_center": format_q(rep.image_center),
            "image_log_radius": format_q(rep.image_log_radius),
            "different": format_q(different_value(g, 0)),
            "discriminant": format_q(discriminant_value(g, 0, args.p)),
        }
    )
    if rep.image_center is INFTY:
        chart = "1/S"
    else:
        chart = ("1/" if rep.inverted else "") + f"(S - {format_q(rep.image_center)})"
    human = (
        f"germ {direction.label()} of {_show(phi)}, chart {chart}\n"
        f"  d = {g.d}  sigma = {g.sigma}  nu = {g.nu}  v(eps) = {format_q(g.eps_val)}\n"
        f"  image log-radius {format_q(rep.image_log_radius)}; separable: {g.separable}"
    )
    _emit(obj, args.json, human, out)
    return EXIT_OK


def cmd_euler(args, out):
    Y = FtDomainP1.from_json(schemas.load_json_file(args.domain, "domain"))
    if args.p is not None:
        from .berkdomain import domain_validate

        domain_validate(Y, args.p)
    chi = euler_char(Y)
    _emit({"chi": chi, "genus": Y.genus, "m": Y.m}, args.json, f"chi = {chi}  (g = {Y.genus}, m = {Y.m})", out)
    return EXIT_OK


def _rh_human(rep):
    lines = [
        f"chi(Y) = {rep.chi_Y}   chi(X) = {rep.chi_X}   deg = {rep.deg}   sum(e_P - 1) = {rep.ram_sum}",
    ]
    for lab, n in rep.nu_out:
        lines.append(f"  TY    {lab:<24} nu = {n}")
    for lab, n in rep.nu_in:
        lines.append(f"  T_in  {lab:<24} nu = {n}")
    lines.append(f"  {rep.equation()}   {'BALANCED' if rep.balanced else 'NOT BALANCED'}")
    return "\n".join(lines)


def cmd_rh(args, out):
    M = MorphismSpec.from_json(schemas.load_json_file(args.morphism, "morphism"))
    diag = validate_morphism(M)
    if not diag.ok:
        bad = diag.failures()
        msg = "validation failed: " + "; ".join(f"{c.name} ({c.detail})" for c in bad)
        human = "\n".join(f"[FAIL] {c.name}: {c.detail}" for c in bad)
        _emit({"error": msg, "diagnostics": diag.to_json()}, args.json, human, out)
        return EXIT_FAIL
    rep = check_rh(M, diag)
    _emit(rep.to_json(), args.json, _rh_human(rep), out)
    return EXIT_OK if rep.balanced else EXIT_FAIL


def cmd_ledger(args, out):
    G = TriangGraph.from_json(schemas.load_json_file(args.graph, "graph"))
    try:
        rep = assemble_global_rh(G)
    except LedgerError as e:
        diag = {"ok": False, "checks": [{"name": "ledger", "ok": False, "detail": str(e)}]}
        _emit({"error": str(e), "diagnostics": diag}, args.json, f"[FAIL] ledger: {e}", out)
        return EXIT_FAIL
    res = vertex_residuals(G)
    human = _rh_human(rep) + "\n" + "\n".join(f"  vertex {k}: local residual {v}" for k, v in res.items())
    _emit(rep.to_json(), args.json, human, out)
    return EXIT_OK if rep.balanced else EXIT_FAIL


def _charp_human(name, rep):
    lines = [f"{name}: deg = {rep.deg}"]
    for lab, s, k in rep.divisor:
        mult = f" (x{k})" if k > 1 else ""
        lines.append(f"  sigma({lab}) = {s}{mult}")
    lines.append(f"  sum = {rep.total}, 2*deg - 2 = {rep.expected}: {rep.status}")
    return "\n".join(lines)


def cmd_charp(args, out):
    phi = RationalMap.from_json(schemas.load_json_file(args.map, "map"), "map")
    hints = []
    if args.hints:
        hints = [parse_q(h, "hints") for h in schemas.load_json_file(args.hints, "hints")]
    if phi.is_constant():
        raise InputError("map: constant map")
    rep = char_p_divisor(phi, hints, args.p, args.rational_only)
    _emit(rep.to_json(), args.json, _charp_human("divisor", rep), out)
    return EXIT_OK if rep.status == "VERIFIED" else EXIT_FAIL


def cmd_examples(args, out):
    s = frobenius_summary(args.p)
    ok = all(m["report"].balanced for m in s["maps"]) and all(r.status == "VERIFIED" for _, r in s["charp"])
    obj = {
        "p": s["p"],
        "maps": [
            {"name": m["name"], "report": m["report"].to_json(), "germ_inf": m["germ_inf"].to_json()}
            for m in s["maps"]
        ],
        "charp": [{"map": name, "report": r.to_json()} for name, r in s["charp"]],
    }
    lines = [f"Frobenius lifts on the closed unit disc, p = {args.p}"]
    for m, label in zip(s["maps"], ("f1 = T^p", "f2 = T^p - T")):
        r, g = m["report"], m["germ_inf"]
        lines.append(f"{label}: {r.equation()}  {'balanced' if r.balanced else 'NOT balanced'}")
        lines.append(f"  germ at infinity: d = {g.d}, sigma = {g.sigma}, nu = {g.nu}")
    for name, r in s["charp"]:
        lines.append(_charp_human(name, r))
    _emit(obj, args.json, "\n".join(lines), out)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser():
    ap = argparse.ArgumentParser(prog="berkrh", description="Exact Riemann-Hurwitz checks on subdomains of P^1.")
    ap.add_argument("--schema", action="store_true", help="print the JSON schemas and exit")
    sub = ap.add_subparsers(dest="command")

    def common(p, need_prime=True):
        if need_prime:
            p.add_argument("-p", type=_prime, required=True, help="the residue characteristic")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("polygon", help="valuation polygon of a polynomial")
    p.add_argument("--poly", required=True)
    p.add_argument("--range", nargs=2, metavar=("S_LO", "S_HI"))
    # let "--range -1/4 0" through as values rather than options
    p._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$")
    common(p)
    p.set_defaults(func=cmd_polygon)

    p = sub.add_parser("annulus", help="germ invariants")
    asub = p.add_subparsers(dest="action", required=True)
    q = asub.add_parser("analyze")
    q.add_argument("--map", required=True)
    q.add_argument("--dir", required=True)
    common(q)
    q.set_defaults(func=cmd_annulus)

    p = sub.add_parser("euler", help="Euler-Poincare characteristic of a domain")
    p.add_argument("--domain", required=True)
    p.add_argument("-p", type=_prime, default=None, help="validate disjointness at this prime")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("rh", help="Riemann-Hurwitz balance of a morphism")
    rsub = p.add_subparsers(dest="action", required=True)
    q = rsub.add_parser("check")
    q.add_argument("--morphism", required=True)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_rh)

    p = sub.add_parser("ledger", help="assemble global RH from a triangulation graph")
    lsub = p.add_subparsers(dest="action", required=True)
    q = lsub.add_parser("verify")
    q.add_argument("--graph", required=True)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_ledger)

    p = sub.add_parser("charp", help="characteristic-p divisor of a lift")
    csub = p.add_subparsers(dest="action", required=True)
    q = csub.add_parser("divisor")
    q.add_argument("--map", required=True)
    q.add_argument("--hints")
    q.add_argument("--rational-only", action="store_true", help="skip residue classes without a rational center")
    common(q)
    q.set_defaults(func=cmd_charp)

    p = sub.add_parser("examples", help="built-in worked examples")
    esub = p.add_subparsers(dest="action", required=True)
    q = esub.add_parser("frobenius")
    common(q)
    q.set_defaults(func=cmd_examples)
    return ap


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    if args.schema:
        out.write(json.dumps(schemas.all_schemas(), indent=2) + "\n")
        return EXIT_OK
    if not getattr(args, "func", None):
        ap.print_usage(err)
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except (InputError, DegenerateInputError) as e:
        err.write(f"error: {e}\n")
        return EXIT_INPUT
    except (VerificationError, InternalConsistencyError) as e:
        err.write(f"verification failed: {e}\n")
        return EXIT_FAIL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
