"""Command-line entry point: ``laddertool <command> [options]``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import (
    AssumptionDViolated,
    CapExceeded,
    InvalidResidualLadder,
    LadderError,
    LadderValidationError,
    NoSuchIndex,
    NotPathConnected,
    NotTConnected,
    ParseError,
    RequiresTGreaterThan2,
)
from .fixtures import fixture
from .formats import FORMATS, OVERLAYS, dumps, parse, render, report_document
from .invariants import FIELD, CoefficientRingDescriptor, canonical_class, class_group, semidualizing
from .ladder import classify_corners, decompose, t_components
from .verify import (
    DEFAULT_CAPS,
    run_fixture_suite,
    verify_correspondence,
    verify_decomposition,
    verify_inverse,
)

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_UNSUPPORTED, EXIT_CAPS = 0, 1, 2, 3, 4

UNSUPPORTED = (AssumptionDViolated, NotTConnected, RequiresTGreaterThan2, NoSuchIndex,
               InvalidResidualLadder, NotPathConnected)


def _positive_t(text):
    t = int(text)
    if t < 2:
        raise argparse.ArgumentTypeError("t must be at least 2")
    return t


def build_parser():
    p = argparse.ArgumentParser(prog="laddertool", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    names = {
        "analyze": "corner profile and corner types per t-component",
        "classgroup": "divisor class group of k_t(Y) over the coefficients",
        "canonical": "canonical class of a (d)-ladder in the q/p basis",
        "semidualizing": "semidualizing census via the gluing decomposition",
        "decompose": "pieces and overlaps of the gluing decomposition",
        "verify": "symbolic checks on one ladder, or the fixture suite",
        "render": "ASCII picture with optional overlays",
    }
    for name, help_ in names.items():
        sp = sub.add_parser(name, help=help_)
        src = sp.add_mutually_exclusive_group()
        src.add_argument("--input", help="ladder file")
        src.add_argument("--fixture", help="L1, L2, L3, L4 or full:MxN")
        sp.add_argument("--format", choices=FORMATS, default="grid")
        sp.add_argument("--t", type=_positive_t, required=name != "render", default=3)
        sp.add_argument("--coeff", help="coefficient descriptor JSON file")
        sp.add_argument("--json", action="store_true", help="emit the full JSON report")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--mode", choices=("assumed_gb", "buchberger"), default="buchberger")
        sp.add_argument("--degree-cap", type=int, default=None)
        sp.add_argument("--pair-cap", type=int, default=None)
        sp.add_argument("--max-cells", type=int, default=DEFAULT_CAPS["max_cells"])
        if name == "canonical":
            sp.add_argument("--formula", choices=("induction", "uniform"), default="induction")
        if name == "render":
            sp.add_argument("--overlay", action="append", choices=OVERLAYS, default=[])
    return p


def _load(args):
    if args.fixture:
        try:
            return fixture(args.fixture)
        except (KeyError, ValueError) as exc:
            raise ParseError(exc.args[0], 0, 0) from None
    if args.input:
        with open(args.input, "rb") as fh:
            return parse(fh.read(), args.format)
    raise ParseError("give --input or --fixture", 0, 0)


def _coeff(args):
    if not args.coeff:
        return FIELD
    with open(args.coeff) as fh:
        try:
            return CoefficientRingDescriptor.from_json(json.load(fh))
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def _seed(args):
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("LADDERTOOL_SEED", "0"))


# ---------------------------------------------------------------- commands

def cmd_analyze(Y, args, coeff):
    comps = []
    lines = []
    for idx, comp in enumerate(t_components(Y, args.t)):
        if comp.tag == "free":
            comps.append({"component": idx, "free": True, "point": list(min(comp.ladder.points))})
            lines.append(f"component {idx}: free point {min(comp.ladder.points)}")
            continue
        prof = classify_corners(comp.ladder, args.t)
        entry = {
            "component": idx,
            "free": False,
            "cells": len(comp.ladder.points),
            "lower_chain": [list(p) for p in prof.lower_chain],
            "outside_lower": [list(p) for p in prof.outside_lower],
            "inside_lower": [{"corner": list(p), "type": ty}
                             for p, ty in zip(prof.inside_lower, prof.lower_types)],
            "outside_upper": [list(p) for p in prof.outside_upper],
            "inside_upper": [{"corner": list(p), "type": ty, "type_1_1": bool(t11)}
                             for p, ty, t11 in zip(prof.inside_upper, prof.upper_types,
                                                   prof.upper_type11)],
            "h": prof.h, "k": prof.k, "h_star": prof.h_star, "k_star": prof.k_star,
            "k_bullet": prof.k_bullet,
        }
        comps.append(entry)
        lines.append(f"component {idx}: {entry['cells']} cells, h={prof.h}, k={prof.k}, "
                     f"h*={prof.h_star}, k*={prof.k_star}, k•={prof.k_bullet}")
        for i, (p, ty) in enumerate(zip(prof.inside_lower, prof.lower_types), start=1):
            lines.append(f"  S{i}' = {p}: {ty}")
        for j, (p, ty, t11) in enumerate(zip(prof.inside_upper, prof.upper_types,
                                             prof.upper_type11), start=1):
            lines.append(f"  T{j}' = {p}: {ty}{', type 1.1' if t11 else ''}")
    return {"profile": comps}, "\n".join(lines), EXIT_OK


def cmd_classgroup(Y, args, coeff):
    rep = class_group(Y, args.t, coeff)
    text = f"Cl = {rep.total}\nladder rank {rep.ladder_rank}, basis: " + \
        ", ".join(f"{b}@{b.corner} (component {b.component})" for b in rep.basis)
    return {"class_group": rep.to_json()}, text, EXIT_OK


def cmd_canonical(Y, args, coeff):
    comps = [c for c in t_components(Y, args.t) if c.tag != "free"]
    if len(comps) != 1:
        raise NotTConnected(f"ladder has {len(comps)} non-free {args.t}-components")
    cc = canonical_class(comps[0].ladder, args.t, args.formula)
    text = (f"lambda = {tuple(cc.lam)}, delta = {tuple(cc.delta)}"
            + (" (Gorenstein)" if cc.is_zero else " (not Gorenstein)"))
    return {"canonical": {**cc.to_json(), "formula": args.formula}}, text, EXIT_OK


def cmd_semidualizing(Y, args, coeff):
    rep = semidualizing(Y, args.t, coeff)
    lines = [f"|S0| = {rep.count} (e = {rep.e}, |S0(A)| = {len(coeff.s0_labels)})"]
    for p in rep.pieces:
        lines.append(f"  piece {p.ident}: {p.shape}, {'Gorenstein' if p.gorenstein else 'not Gorenstein'}")
    return {"semidualizing": rep.to_json()}, "\n".join(lines), EXIT_OK


def cmd_decompose(Y, args, coeff):
    dec = decompose(Y, args.t)
    pieces = [{"piece": p.ident, "component": p.component,
               "rows": {str(r): list(s) for r, s in sorted(p.ladder.row_spans.items())}}
              for p in dec.pieces]
    overlaps = [{"corner": list(o.corner), "rows": [o.rect[0], o.rect[1]],
                 "cols": [o.rect[2], o.rect[3]], "cells": len(o.cells),
                 "upper_piece": o.upper_piece, "lower_piece": o.lower_piece}
                for o in dec.overlaps]
    lines = [f"{len(dec.pieces)} pieces, k• per component = {list(dec.k_bullet)}"]
    for p in dec.pieces:
        lines.append(f"  piece {p.ident}: " + ", ".join(
            f"row {r}: {lo}-{hi}" for r, (lo, hi) in sorted(p.ladder.row_spans.items())))
    for o in dec.overlaps:
        lines.append(f"  overlap at T'={o.corner}: rows {o.rect[0]}-{o.rect[1]}, "
                     f"cols {o.rect[2]}-{o.rect[3]} ({len(o.cells)} cells)")
    return {"decomposition": {"pieces": pieces, "overlaps": overlaps,
                              "k_bullet": list(dec.k_bullet)}}, "\n".join(lines), EXIT_OK


def _verdict_code(reports):
    if any(r.verdict == "fail" for r in reports):
        return EXIT_VERIFY
    if any(r.verdict == "inconclusive" for r in reports):
        return EXIT_CAPS
    return EXIT_OK


def _report_json(r):
    out = r.to_json()
    out.pop("seconds")  # keeps output byte-identical across runs
    return out


def cmd_verify(Y, args, coeff):
    caps = {"max_pairs": args.pair_cap, "max_degree": args.degree_cap, "max_cells": args.max_cells}
    if Y is None:
        reports = run_fixture_suite(_seed(args), caps)
    else:
        reports = [verify_decomposition(Y, args.t)]
        if args.t > 2:
            reports.append(verify_inverse(Y, args.t))
            reports.append(verify_correspondence(
                Y, args.t, args.mode, max_pairs=args.pair_cap, max_degree=args.degree_cap,
                max_cells=args.max_cells))
    lines = [f"{r.verdict.upper():12} {r.check} [{r.instance}]" for r in reports]
    for r in reports:
        if r.verdict == "fail":
            lines.append(f"witness for {r.check}: {json.dumps(r.witness)}")
    return {"verification": [_report_json(r) for r in reports]}, "\n".join(lines), _verdict_code(reports)


COMMANDS = {
    "analyze": cmd_analyze,
    "classgroup": cmd_classgroup,
    "canonical": cmd_canonical,
    "semidualizing": cmd_semidualizing,
    "decompose": cmd_decompose,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "verify" and not (args.input or args.fixture):
            Y = None
        else:
            Y = _load(args)
        if args.command == "render":
            out.write(render(Y, args.overlay, args.t) + "\n")
            return EXIT_OK
        coeff = _coeff(args)
        section, text, code = COMMANDS[args.command](Y, args, coeff)
    except (ParseError, LadderValidationError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UNSUPPORTED as exc:
        print(f"unsupported: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except CapExceeded as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_CAPS
    except LadderError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        if Y is None:
            doc = {"schema_version": 1, "sections": section}
        else:
            doc = report_document(Y, args.t, coeff, section)
        out.write(dumps(doc) + "\n")
    else:
        out.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
