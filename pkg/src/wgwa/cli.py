"""Command line front end.

    wgwa orbit --fp 7 --f 0,0,1 --t -2,1 --start "(h-4)"
    wgwa classify --fp 7 --f 0,0,1 --t -2,1 --point "(h-4)"
    wgwa string --fp 7 --f 0,0,1 --t -2,1 --kind bounded --window "(h-4);(h-2)" --dump bounded.json
    wgwa band --fp 7 --f 0,0,1 --t 0,1 --point "(h-2)" --alpha 3 --variant M
    wgwa check --module bounded.json
    wgwa heisenberg --f const:2 --zdot 1
    wgwa export-dot --fp 5 --f 0,0,1 --t 0,1 --seed-point "(h-4)" --depth 1

Exit status: 0 on success, 1 on domain errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import dynamics, oracle
from . import poly as P
from .bands import build_band, detect_band_data, pmodule, pmodule_is_simple
from .classify import Bounds, Power, classify_point, heisenberg_catalogue, parse_f_spec
from .errors import WGWAError
from .fields import ExtensionField
from .serialize import document, dumps, finite_module_doc, load_path, report_doc, to_document
from .strings import (
    KINDS,
    DistinctTail,
    EventuallyConstantTail,
    Periodic,
    build_string,
    string_is_simple,
)
from .universe import OUTSIDE, Affine, FinitePoly, PowerMap, make_universe, parse_point


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- argument parsing


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _universe_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("universe")
    g.add_argument("--fp", type=int, help="prime p for R = GF(p)[h]")
    g.add_argument("--f", help="sigma(h): coefficients constant first (GF(p)); for --affine use A,B")
    g.add_argument("--t", help="t: coefficients constant first")
    g.add_argument("--power", type=int, help="sigma(h) = h^N on zero and the roots of unity")
    g.add_argument("--affine", help="sigma(h) = A h + B over the rationals, as A,B")
    g.add_argument("--zdot", default="outside", help="for --power: the point where t vanishes, or 'outside'")
    g.add_argument("--universe", dest="universe_file", help="JSON universe document")


def _common_flags(p: argparse.ArgumentParser, default_output, default_seed, default_budget) -> None:
    p.add_argument("--output", choices=("text", "json", "dot"), default=default_output)
    p.add_argument("--seed", type=int, default=default_seed, help="seed for randomized fallbacks")
    p.add_argument("--budget", type=_positive, default=default_budget,
                   help="brute-force budget (default from WGWA_BUDGET or 10^6)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wgwa", description="Simple weight modules over rank one wGWAs.")
    _common_flags(parser, None, 0, None)
    # the same flags after the subcommand; SUPPRESS keeps values given before it
    common = argparse.ArgumentParser(add_help=False)
    _common_flags(common, argparse.SUPPRESS, argparse.SUPPRESS, argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, **kw) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], **kw)

    p = add("orbit", help="forward orbit under down")
    _universe_flags(p)
    p.add_argument("--start", required=True)
    p.add_argument("--max-steps", type=_positive, default=1000)

    p = add("classify", help="string and band families around a point")
    _universe_flags(p)
    p.add_argument("--point", required=True)
    p.add_argument("--orbit-steps", type=_positive, default=1000)
    p.add_argument("--up-depth", type=_nonnegative, default=3)
    p.add_argument("--degree-bound", type=_positive, default=None)

    p = add("string", help="build a string module and test simplicity")
    _universe_flags(p)
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--window", required=True, help="ideals separated by ';', lowest first")
    p.add_argument("--lo", type=int, default=None)
    p.add_argument("--certificate", default=None,
                   help="periodic:K | constant | distinct | distinct:true | distinct:false")
    p.add_argument("--dump", default=None, help="write the matrix realization (bounded only)")

    p = add("band", help="build a band module")
    _universe_flags(p)
    p.add_argument("--point", required=True)
    p.add_argument("--alpha", required=True, help="rows separated by ';', entries by ','")
    p.add_argument("--variant", choices=("M", "N"), default="M")
    p.add_argument("--max-period", type=_positive, default=10000)
    p.add_argument("--dump", default=None, help="write the matrix realization")

    p = add("check", help="relation and simplicity checks on a matrix module")
    p.add_argument("--module", required=True, help="finite_module, string or band JSON document")
    p.add_argument("--strategy", choices=("eigen", "full"), default="eigen")

    p = add("heisenberg", help="catalogue for a generalized Heisenberg algebra")
    p.add_argument("--f", dest="f_spec", required=True, help="const:THETA | affine:A,B | power:N")
    p.add_argument("--zdot", required=True)
    p.add_argument("--orbit-steps", type=_positive, default=1000)
    p.add_argument("--up-depth", type=_nonnegative, default=3)

    p = add("export-dot", help="DOT graph of the down/up neighbourhood")
    _universe_flags(p)
    p.add_argument("--seed-point", action="append", required=True)
    p.add_argument("--depth", type=_nonnegative, default=1)
    p.add_argument("--degree-bound", type=_positive, default=None)
    return parser


def universe_from_args(args):
    if args.universe_file:
        return make_universe(_universe_doc(args.universe_file))
    chosen = [x is not None for x in (args.fp, args.power, args.affine)]
    if sum(chosen) != 1:
        raise UsageError("give exactly one of --fp, --power, --affine or --universe")
    if args.fp is not None:
        if args.f is None or args.t is None:
            raise UsageError("--fp needs --f and --t")
        return FinitePoly(args.fp, tuple(_coeffs(args.f)), tuple(_coeffs(args.t)))
    if args.power is not None:
        return PowerMap(args.power, _zdot_point(args.zdot))
    try:
        a, b = (Fraction(x) for x in args.affine.split(","))
        t = tuple(Fraction(x) for x in args.t.split(",")) if args.t else (Fraction(0), Fraction(1))
    except (ValueError, ZeroDivisionError):
        raise UsageError("bad --affine/--t values") from None
    return Affine(a, b, t)


def _universe_doc(path: str):
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return doc["universe"] if "universe" in doc else doc


def _coeffs(text: str) -> list:
    try:
        return P.parse_coeffs(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _zdot_point(text: str):
    if text.strip().lower() == "outside":
        return OUTSIDE
    return parse_point(text, ("angle", "zero"))


def _certificate(text: str | None):
    if text is None:
        return None
    head, _, tail = text.lower().partition(":")
    try:
        if head == "periodic":
            return Periodic(int(tail))
        if head == "constant":
            return EventuallyConstantTail()
        if head == "distinct":
            return DistinctTail({"": None, "true": True, "false": False}[tail])
    except (ValueError, KeyError):
        pass
    raise UsageError(f"unknown certificate {text!r}")


def _alpha(K, text: str, u, m):
    rows = []
    for row in text.split(";"):
        entries = []
        for x in row.split(","):
            x = x.strip()
            if isinstance(K, ExtensionField):
                entries.append(K(P.norm(P.parse_expr(x, K.p), K.p)))
            else:
                entries.append(u.reduce_value(m, Fraction(x) if "/" in x else int(x)))
        rows.append(entries)
    return rows


# ---------------------------------------------------------------- commands


def cmd_orbit(args, out):
    u = universe_from_args(args)
    m = u.parse_ideal(args.start)
    rep = dynamics.forward_orbit(u, m, args.max_steps)
    doc = report_doc("orbit", rep.to_dict(), u)
    if _fmt(args, "json") == "json":
        return dumps(doc)
    lines = [f"universe: {u}", "tail:  " + " -> ".join(x.render() for x in rep.tail),
             "cycle: " + " -> ".join(x.render() for x in rep.cycle), f"steps: {rep.steps_used}"]
    return "\n".join(lines) + "\n"


def cmd_classify(args, out):
    u = universe_from_args(args)
    m = u.parse_ideal(args.point)
    rep = classify_point(u, m, Bounds(args.orbit_steps, args.up_depth, args.degree_bound))
    body = rep.to_dict()
    if _fmt(args, "json") == "json":
        return dumps(report_doc("classification", body, u))
    lines = [f"universe: {u}", f"point: {body['point']}", f"class: {body['class_kind']['kind']}",
             "orbit tail: " + ", ".join(body["orbit"]["tail"]),
             "orbit cycle: " + ", ".join(body["orbit"]["cycle"])]
    for mk in body["marks"]:
        lines.append(f"  {mk['ideal']}: t_in={int(mk['t_in'])} sigma_t_in={int(mk['sigma_t_in'])}")
    lines.append("string families:")
    for s in body["string_families"]:
        lines.append(f"  {s['shape']:<10} {' '.join(s['window'])}  simple={s['simple']}")
    lines.append("band families:")
    for b in body["band_families"]:
        lines.append(f"  cycle {' '.join(b['cycle'])} k={b['k']} sigma_bar={b['sigma_bar']} "
                     f"variants={','.join(b['variants'])}")
    lines.append("dead points: " + (", ".join(body["dead_points"]) or "none"))
    lines.extend(f"note: {n}" for n in body["notes"])
    return "\n".join(lines) + "\n"


def cmd_string(args, out):
    u = universe_from_args(args)
    ideals = [u.parse_ideal(x) for x in args.window.split(";") if x.strip()]
    s = build_string(u, args.kind, ideals, lo=args.lo)
    cert = _certificate(args.certificate)
    try:
        simple = string_is_simple(s, cert)
    except WGWAError as exc:
        if exc.code != "certificate_required":
            raise
        simple = None
    body = {"module": to_document(s), "simple": simple}
    if args.kind == "bounded":
        fm = oracle.to_matrices(s)
        body["relations"] = oracle.check_relations(fm)
        if args.dump:
            _write(args.dump, dumps(finite_module_doc(fm)))
    if _fmt(args, "json") == "json":
        return dumps(report_doc("string_report", body))
    lines = [f"{args.kind} string: {' '.join(s.describe()['window'])} (lo={s.lo})",
             f"simple: {'undetermined (certificate required)' if simple is None else simple}"]
    if "relations" in body:
        lines.append(f"relations: {'ok' if body['relations']['ok'] else body['relations']['violations']}")
    return "\n".join(lines) + "\n"


def cmd_band(args, out):
    u = universe_from_args(args)
    m = u.parse_ideal(args.point)
    band = detect_band_data(u, m, args.max_period)
    L = pmodule(band, _alpha(band.field, args.alpha, u, band.cycle[0]))
    bm = build_band(band, L, args.variant)
    body = {"module": to_document(bm), "band": band.describe()}
    try:
        body["pmodule_simple"] = pmodule_is_simple(band, L)
    except WGWAError as exc:
        body["pmodule_simple"] = None
        body["note"] = str(exc)
    if band.finite:
        fm = oracle.to_matrices(bm)
        body["relations"] = oracle.check_relations(fm)
        if args.dump:
            _write(args.dump, dumps(finite_module_doc(fm)))
    if _fmt(args, "json") == "json":
        return dumps(report_doc("band_report", body))
    d = body["band"]
    lines = [f"band {args.variant}: cycle {' '.join(d['cycle'])} k={d['k']} sigma_bar={d['sigma_bar']}",
             f"L simple: {body['pmodule_simple']}"]
    if "relations" in body:
        lines.append(f"relations: {'ok' if body['relations']['ok'] else body['relations']['violations']}")
    return "\n".join(lines) + "\n"


def cmd_check(args, out):
    obj = load_path(args.module)
    if isinstance(obj, oracle.FiniteModule):
        fm = obj
    elif isinstance(obj, dict):
        raise UsageError("expected a module document")
    else:
        fm = oracle.to_matrices(obj)
    rel = oracle.check_relations(fm)
    body = {"dim": fm.dim, "relations": rel}
    try:
        body["simple"] = oracle.brute_simple(fm, args.budget, args.strategy)
    except WGWAError as exc:
        if exc.code != "budget_exceeded":
            raise
        body["simple"] = oracle.probably_simple(fm, seed=args.seed)
    body["weights"] = {k.render() if hasattr(k, "render") else str(k): v
                       for k, v in oracle.generalized_weight_decomposition(fm).items()}
    if _fmt(args, "json") == "json":
        return dumps(report_doc("check", body))
    lines = [f"dimension: {fm.dim}",
             "relations: ok" if rel["ok"] else "relations violated: " + "; ".join(rel["violations"]),
             f"simple: {body['simple']}"]
    for k, v in body["weights"].items():
        lines.append(f"  {k}: weight {v['weight_dim']}, generalized {v['generalized_dim']}")
    return "\n".join(lines) + "\n"


def cmd_heisenberg(args, out):
    spec = parse_f_spec(args.f_spec)
    if isinstance(spec, Power):
        zdot = _zdot_point(args.zdot)
    else:
        try:
            zdot = Fraction(args.zdot)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad --zdot {args.zdot!r}") from None
    rep = heisenberg_catalogue(spec, zdot, Bounds(args.orbit_steps, args.up_depth))
    body = rep.to_dict()
    if _fmt(args, "text") == "json":
        return dumps(report_doc("catalogue", body))
    lines = [f"f = {body['f']}, zdot = {body['zdot']}"]
    for it in body["items"]:
        head = f"[{it['shape']}] {it['label']}"
        if it.get("parameter"):
            head += f"  ({it['parameter']})"
        lines.append(head)
        lines.append(f"    support: {' '.join(it['support'])}  dimension: {it['dimension']}  simple: {it['simple']}")
        if it.get("actions"):
            lines.append("    " + ", ".join(f"{k} acts as {v}" if k in ("X", "Y") else f"{k}: {v}"
                                          for k, v in it["actions"].items()))
    lines.extend(f"note: {n}" for n in body["notes"])
    return "\n".join(lines) + "\n"


def cmd_export_dot(args, out):
    u = universe_from_args(args)
    seeds = [u.parse_ideal(x) for x in args.seed_point]
    return dynamics.export_dot(u, seeds, args.depth, args.degree_bound)


COMMANDS = {
    "orbit": cmd_orbit,
    "classify": cmd_classify,
    "string": cmd_string,
    "band": cmd_band,
    "check": cmd_check,
    "heisenberg": cmd_heisenberg,
    "export-dot": cmd_export_dot,
}


def _fmt(args, default: str) -> str:
    return args.output or default


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


VALUE_FLAGS = ("--f", "--t", "--affine", "--zdot", "--alpha", "--start", "--point", "--window", "--seed-point")


def _glue_values(argv: list) -> list:
    """Attach values such as "-2,1" to their flag so they are not read as options."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    argv = _glue_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"wgwa: error: {exc}\n")
        return 2
    except (WGWAError, ValueError) as exc:
        info = exc.to_dict() if isinstance(exc, WGWAError) else {"error": "invalid_value", "message": str(exc)}
        if args.output == "json":
            out.write(dumps(document("error", info)))
        else:
            err.write(f"wgwa: {info['error']}: {info['message']}\n")
        return 1
    except OSError as exc:
        err.write(f"wgwa: error: {exc}\n")
        return 2
    out.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
