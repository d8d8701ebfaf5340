"""Ladder file formats, ASCII rendering and the JSON report document."""

from __future__ import annotations

import hashlib
import json

from . import __version__
from .errors import ParseError
from .ladder import (
    Ladder,
    border,
    classify_corners,
    construct_Z,
    corner_profile,
    decompose,
    t_components,
    validate_ladder,
)

FORMATS = ("grid", "intervals", "points")
SCHEMA_VERSION = 1


# ---------------------------------------------------------------- parsing

def _text(data):
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}", 1, 1) from None
    return data


def _parse_grid(text):
    pts = []
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    for r, line in enumerate(lines, start=1):
        for c, ch in enumerate(line.rstrip("\r"), start=1):
            if ch == "X":
                pts.append((r, c))
            elif ch not in ". ":
                raise ParseError(f"unexpected character {ch!r}", r, c)
    return pts


def _json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def _parse_intervals(text):
    data = _json(text)
    if not isinstance(data, list):
        raise ParseError("intervals input must be a JSON list", 1, 1)
    pts = []
    for i, item in enumerate(data):
        try:
            r, lo, hi = item["row"], item["col_start"], item["col_end"]
        except (KeyError, TypeError):
            raise ParseError(f"entry {i} needs row, col_start, col_end", 1, 1) from None
        if not all(isinstance(v, int) for v in (r, lo, hi)) or lo > hi:
            raise ParseError(f"entry {i} is not an integer interval", 1, 1)
        pts += [(r, c) for c in range(lo, hi + 1)]
    return pts


def _parse_points(text):
    data = _json(text)
    if not isinstance(data, list):
        raise ParseError("points input must be a JSON list of [row, col] pairs", 1, 1)
    pts = []
    for i, item in enumerate(data):
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(v, int) for v in item)):
            raise ParseError(f"entry {i} is not a [row, col] pair", 1, 1)
        pts.append(tuple(item))
    return pts


def parse(data, fmt: str = "grid") -> Ladder:
    """Read a ladder; validation errors pass through unchanged."""
    text = _text(data)
    if fmt == "grid":
        pts = _parse_grid(text)
    elif fmt == "intervals":
        pts = _parse_intervals(text)
    elif fmt == "points":
        pts = _parse_points(text)
    else:
        raise ParseError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}", 0, 0)
    return validate_ladder(pts, normalize=False)


def serialize(Y: Ladder, fmt: str = "grid") -> str:
    if fmt == "grid":
        rows = []
        for r in range(1, Y.row_max + 1):
            rows.append("".join("X" if (r, c) in Y.points else "." for c in range(1, Y.col_max + 1)))
        return "\n".join(rows)
    if fmt == "intervals":
        return json.dumps([{"row": r, "col_start": lo, "col_end": hi}
                           for r, (lo, hi) in sorted(Y.row_spans.items())])
    if fmt == "points":
        return json.dumps([list(p) for p in sorted(Y.points)])
    raise ParseError(f"unknown format {fmt!r}", 0, 0)


def digest(Y: Ladder) -> str:
    return hashlib.sha256(serialize(Y, "points").encode()).hexdigest()


# ---------------------------------------------------------------- rendering

OVERLAYS = ("corners", "borders", "Z", "pieces")


def render(Y: Ladder, overlays=(), t: int = 3) -> str:
    """ASCII picture of ``Y``; with overlays cells are padded to a common width."""
    overlays = tuple(overlays)
    for o in overlays:
        if o not in OVERLAYS:
            raise ValueError(f"unknown overlay {o!r}")
    if not overlays:
        return serialize(Y, "grid")
    labels = {p: "X" for p in Y.points}
    legend = []
    if "borders" in overlays:
        B1 = border(Y, "lower", 1).points
        C1 = border(Y, "upper", 1).points
        for p in Y.points:
            labels[p] = {(True, True): "bc", (True, False): "b", (False, True): "c"}.get(
                (p in B1, p in C1), "X")
        legend.append("b = lower border B1, c = upper border C1")
    if "Z" in overlays:
        Z = construct_Z(Y, t).points
        for p in Y.points:
            labels[p] = "Z" if p in Z else "-"
        legend.append(f"Z = Y minus B1 (t={t}), - = deleted border")
    if "pieces" in overlays:
        dec = decompose(Y, t)
        owner = {}
        for pc in dec.pieces:
            for p in pc.ladder.points:
                owner.setdefault(p, []).append(str(pc.ident))
        for p in Y.points:
            labels[p] = "".join(owner.get(p, ["f"]))
        legend.append("digits = piece ids (two digits on an overlap), f = free point")
    if "corners" in overlays:
        if len(t_components(Y, t)) == 1:
            prof = classify_corners(Y, t)
        else:
            prof = corner_profile(Y)
        marks = {}
        for fmt_, pts in (("S{}", prof.outside_lower), ("S{}'", prof.inside_lower),
                          ("T{}", prof.outside_upper), ("T{}'", prof.inside_upper)):
            for i, s in enumerate(pts, start=1):
                marks.setdefault(s, []).append(fmt_.format(i))
        for s, names in marks.items():
            labels[s] = "/".join(names)
        legend.append("S/S' = outside/inside lower corners, T/T' = outside/inside upper corners")
    width = max(3, max(len(v) for v in labels.values()))
    lines = []
    for r in range(1, Y.row_max + 1):
        cells = [labels.get((r, c), ".").ljust(width) for c in range(1, Y.col_max + 1)]
        lines.append(" ".join(cells).rstrip())
    return "\n".join(lines + [""] + legend)


# ---------------------------------------------------------------- reports

def report_document(Y: Ladder, t: int, coeff, sections: dict) -> dict:
    """Schema-versioned report; key order is fixed by construction."""
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "input_digest": digest(Y),
        "ladder": json.loads(serialize(Y, "intervals")),
        "t": t,
        "coefficients": coeff.to_json(),
        "sections": sections,
    }


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)
