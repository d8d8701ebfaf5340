"""Ladders of grid points and their combinatorics.

Coordinates are ``(row, col)`` with rows increasing downward and columns
increasing to the right.  A ladder omits a northwest and a southeast
staircase of its bounding box; the *lower* border is the northwest
staircase ``{(p, q) : (p-1, q-1) not in Y}`` and the *upper* border the
southeast one ``{(p, q) : (p+1, q+1) not in Y}``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional

from .errors import (
    CapExceeded,
    ClosureViolation,
    ComponentNotLadder,
    DecompositionInvariantFailure,
    Empty,
    EmptyCol,
    EmptyRow,
    InvalidResidualLadder,
    LadderError,
    LadderValidationError,
    NotPathConnected,
    RequiresTGreaterThan2,
)

Point = tuple


@dataclass(frozen=True)
class Ladder:
    points: frozenset

    def __contains__(self, p):
        return p in self.points

    def __iter__(self):
        return iter(sorted(self.points))

    def __len__(self):
        return len(self.points)

    @cached_property
    def row_min(self):
        return min(p for p, _ in self.points)

    @cached_property
    def row_max(self):
        return max(p for p, _ in self.points)

    @cached_property
    def col_min(self):
        return min(q for _, q in self.points)

    @cached_property
    def col_max(self):
        return max(q for _, q in self.points)

    @property
    def m(self):
        return self.row_max - self.row_min + 1

    @property
    def n(self):
        return self.col_max - self.col_min + 1

    @cached_property
    def row_spans(self):
        """Map row -> (first col, last col).  Rows of a ladder are intervals."""
        spans = {}
        for p, q in self.points:
            lo, hi = spans.get(p, (q, q))
            spans[p] = (min(lo, q), max(hi, q))
        return spans

    @cached_property
    def col_spans(self):
        spans = {}
        for p, q in self.points:
            lo, hi = spans.get(q, (p, p))
            spans[q] = (min(lo, p), max(hi, p))
        return spans

    def sorted_points(self):
        return sorted(self.points)

    def is_rectangle(self):
        return len(self.points) == self.m * self.n

    def shape(self):
        return (self.m, self.n)

    def path_components(self):
        """4-neighbour connected components, each as a frozenset of points."""
        seen = set()
        comps = []
        for start in sorted(self.points):
            if start in seen:
                continue
            stack = [start]
            seen.add(start)
            comp = []
            while stack:
                p, q = stack.pop()
                comp.append((p, q))
                for nb in ((p - 1, q), (p + 1, q), (p, q - 1), (p, q + 1)):
                    if nb in self.points and nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
            comps.append(frozenset(comp))
        return comps

    def is_path_connected(self):
        return len(self.path_components()) == 1


def ladder_violations(points):
    """Every violated ladder axiom for ``points`` (empty list if none)."""
    points = set(points)
    if not points:
        return [Empty()]
    out = []
    pts = sorted(points)
    for a, (i, j) in enumerate(pts):
        for p, q in pts[a + 1:]:
            if p >= i and q >= j:
                missing = [x for x in ((i, q), (p, j)) if x not in points]
                if missing:
                    out.append(ClosureViolation((i, j), (p, q), missing))
    rows = {p for p, _ in points}
    cols = {q for _, q in points}
    for r in range(min(rows), max(rows) + 1):
        if r not in rows:
            out.append(EmptyRow(r))
    for c in range(min(cols), max(cols) + 1):
        if c not in cols:
            out.append(EmptyCol(c))
    return out


def validate_ladder(points: Iterable, normalize: bool = True) -> Ladder:
    """Check the ladder axioms and return a ``Ladder``.

    With ``normalize`` the coordinates are shifted so that the bounding box
    starts at (1, 1).  Sub-ladders (components, Z, decomposition pieces) keep
    their original coordinates and are built with ``normalize=False``.
    """
    pts = set()
    for pt in points:
        p, q = pt
        if not (isinstance(p, int) and isinstance(q, int)) or p < 1 or q < 1:
            raise LadderValidationError([f"not a positive integer point: {pt!r}"])
        pts.add((p, q))
    violations = ladder_violations(pts)
    if violations:
        raise LadderValidationError(violations)
    if normalize:
        r0 = min(p for p, _ in pts) - 1
        c0 = min(q for _, q in pts) - 1
        pts = {(p - r0, q - c0) for p, q in pts}
    return Ladder(frozenset(pts))


def ladder_from_rows(spans, normalize=True):
    """Build a ladder from ``{row: (first_col, last_col)}``."""
    return validate_ladder(
        ((r, c) for r, (lo, hi) in spans.items() for c in range(lo, hi + 1)), normalize=normalize)


def full_ladder(m, n, row0=1, col0=1):
    return Ladder(frozenset((row0 + i, col0 + j) for i in range(m) for j in range(n)))


# ---------------------------------------------------------------- borders

@dataclass(frozen=True)
class BorderSet:
    side: str
    thickness: int
    points: frozenset

    def __contains__(self, p):
        return p in self.points

    def __len__(self):
        return len(self.points)


def border(Y: Ladder, side: str, s: int = 1) -> BorderSet:
    if s < 1:
        raise ValueError("border thickness must be >= 1")
    if side == "lower":
        pts = frozenset((p, q) for p, q in Y.points if (p - s, q - s) not in Y.points)
    elif side == "upper":
        pts = frozenset((p, q) for p, q in Y.points if (p + s, q + s) not in Y.points)
    else:
        raise ValueError(f"unknown border side {side!r}")
    return BorderSet(side, s, pts)


# ---------------------------------------------------------------- corners

@dataclass(frozen=True)
class CornerProfile:
    lower_chain: tuple
    upper_chain: tuple
    outside_lower: tuple
    inside_lower: tuple
    outside_upper: tuple
    inside_upper: tuple
    t: Optional[int] = None
    lower_types: Optional[tuple] = None   # "type1" / "type2" per S'_i
    upper_types: Optional[tuple] = None   # "type1" / "type2" per T'_j
    upper_type11: Optional[tuple] = None  # bool per T'_j

    @property
    def h(self):
        return len(self.inside_lower)

    @property
    def k(self):
        return len(self.inside_upper)

    @property
    def a(self):
        return [p for p, _ in self.lower_chain]

    @property
    def b(self):
        return [q for _, q in self.lower_chain]

    @property
    def c(self):
        return [p for p, _ in self.upper_chain]

    @property
    def d(self):
        return [q for _, q in self.upper_chain]

    @property
    def classified(self):
        return self.lower_types is not None

    def _need_types(self):
        if not self.classified:
            raise LadderError("corner profile has not been classified; call classify_corners")

    @property
    def h_star(self):
        self._need_types()
        return sum(1 for x in self.lower_types if x == "type1")

    @property
    def k_star(self):
        self._need_types()
        return sum(1 for x in self.upper_types if x == "type1")

    @property
    def k_bullet(self):
        self._need_types()
        return sum(1 for x in self.upper_type11 if x)


def corner_profile(Y: Ladder) -> CornerProfile:
    if not Y.is_path_connected():
        raise NotPathConnected(f"ladder has {len(Y.path_components())} path components")
    P = Y.points
    inside_lower = sorted(
        (p, q) for p, q in P
        if (p - 1, q - 1) not in P and (p - 1, q) in P and (p, q - 1) in P)
    inside_upper = sorted(
        (p, q) for p, q in P
        if (p + 1, q + 1) not in P and (p + 1, q) in P and (p, q + 1) in P)
    start = (Y.row_min, Y.col_max)
    end = (Y.row_max, Y.col_min)
    lower_chain = tuple([start] + inside_lower + [end])
    upper_chain = tuple([start] + inside_upper + [end])
    for chain in (lower_chain, upper_chain):
        for (r0, c0), (r1, c1) in zip(chain[1:-1], chain[2:-1]):
            assert r0 < r1 and c0 > c1, chain
    h, k = len(inside_lower), len(inside_upper)
    outside_lower = tuple((lower_chain[i - 1][0], lower_chain[i][1]) for i in range(1, h + 2))
    outside_upper = tuple((upper_chain[j][0], upper_chain[j - 1][1]) for j in range(1, k + 2))
    direct_lower = {(p, q) for p, q in P if (p - 1, q) not in P and (p, q - 1) not in P}
    direct_upper = {(p, q) for p, q in P if (p + 1, q) not in P and (p, q + 1) not in P}
    if set(outside_lower) != direct_lower or set(outside_upper) != direct_upper:
        raise LadderError("corner chains inconsistent with outside corners; not a path-connected ladder?")
    return CornerProfile(lower_chain, upper_chain, outside_lower, tuple(inside_lower),
                         outside_upper, tuple(inside_upper))


def lower_block(corner, t):
    """The (t-1)x(t-1) block rooted at a lower inside corner, extending down-right."""
    a, b = corner
    return [(a + i, b + j) for i in range(t - 1) for j in range(t - 1)]


def upper_block(corner, t):
    """The (t-1)x(t-1) block rooted at an upper corner, extending up-left."""
    c, d = corner
    return [(c - i, d - j) for i in range(t - 2, -1, -1) for j in range(t - 2, -1, -1)]


def classify_corners(Y: Ladder, t: int, profile: Optional[CornerProfile] = None) -> CornerProfile:
    if t < 2:
        raise ValueError("t must be >= 2")
    if profile is None:
        profile = corner_profile(Y)
    B1 = border(Y, "lower", 1).points
    C1 = border(Y, "upper", 1).points
    lower_types = []
    for a, b in profile.inside_lower:
        block = lower_block((a, b), t)
        inside = all(x in Y.points for x in block)
        hits = [x for x in block if x in C1]
        if inside and len(hits) <= 1:
            if hits and hits[0] != (a + t - 2, b + t - 2):
                raise LadderError(f"type-1 lower corner {(a, b)} meets C1 at unexpected {hits[0]}")
            lower_types.append("type1")
        else:
            lower_types.append("type2")
    upper_types, type11 = [], []
    for c, d in profile.inside_upper:
        block = upper_block((c, d), t)
        inside = all(x in Y.points for x in block)
        hits = [x for x in block if x in B1]
        if inside and len(hits) <= 1:
            if hits and hits[0] != (c - t + 2, d - t + 2):
                raise LadderError(f"type-1 upper corner {(c, d)} meets B1 at unexpected {hits[0]}")
            upper_types.append("type1")
        else:
            upper_types.append("type2")
        type11.append(len(hits) >= 1)
    return replace(profile, t=t, lower_types=tuple(lower_types),
                   upper_types=tuple(upper_types), upper_type11=tuple(type11))


# ---------------------------------------------------------------- minors

@dataclass(frozen=True, order=True)
class MinorSupport:
    rows: tuple
    cols: tuple

    @property
    def size(self):
        return len(self.rows)

    def cells(self):
        return [(r, c) for r in self.rows for c in self.cols]

    def __str__(self):
        return f"[{','.join(map(str, self.rows))}|{','.join(map(str, self.cols))}]"


def _assert_rectangle_fullness(Y: Ladder):
    # Rows are intervals whose endpoints weakly decrease downward; this is
    # equivalent to every rectangle between comparable points lying in Y.
    spans = Y.row_spans
    rows = sorted(spans)
    for r0, r1 in zip(rows, rows[1:]):
        assert r1 == r0 + 1, "row gap"
        assert spans[r1][0] <= spans[r0][0] and spans[r1][1] <= spans[r0][1], (r0, r1)
    for r, (lo, hi) in spans.items():
        for c in range(lo, hi + 1):
            assert (r, c) in Y.points, (r, c)


def minor_supports(Y: Ladder, t: int, cap: Optional[int] = None, region=None):
    """All t x t minor supports lying in ``Y`` (or in ``region`` if given).

    ``region`` is an arbitrary point set; the NW/SE shortcut is only used
    for ladders, other regions are checked cell by cell.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    out = []
    if region is None:
        _assert_rectangle_fullness(Y)
        spans = Y.row_spans
        rows = sorted(spans)
        for rs in combinations(rows, t):
            lo = spans[rs[0]][0]
            hi = spans[rs[-1]][1]
            if hi - lo + 1 < t:
                continue
            for cs in combinations(range(lo, hi + 1), t):
                out.append(MinorSupport(rs, cs))
                if cap is not None and len(out) > cap:
                    raise CapExceeded(f"more than {cap} minor supports", count=len(out))
        return out
    region = frozenset(region)
    if not region:
        return out
    rows = sorted({p for p, _ in region})
    cols = sorted({q for _, q in region})
    for rs in combinations(rows, t):
        ok_cols = [c for c in cols if all((r, c) in region for r in rs)]
        for cs in combinations(ok_cols, t):
            out.append(MinorSupport(rs, cs))
            if cap is not None and len(out) > cap:
                raise CapExceeded(f"more than {cap} minor supports", count=len(out))
    return out


# ---------------------------------------------------------------- t-components

@dataclass(frozen=True)
class Component:
    ladder: Ladder
    tag: str  # "connected" | "free"


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx


def _t_bands(Y: Ladder, t):
    # Maximal full rectangles with t consecutive rows and >= t columns.
    # Every minor support is covered by a chain of overlapping bands.
    spans = Y.row_spans
    for r in sorted(spans):
        if r + t - 1 not in spans:
            continue
        lo, hi = spans[r][0], spans[r + t - 1][1]
        if hi - lo + 1 >= t:
            yield r, lo, hi


def t_components(Y: Ladder, t: int):
    """Split ``Y`` into t-components.

    Points lying in no t-minor become singleton components tagged "free".
    Components are ordered by their smallest point.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    _assert_rectangle_fullness(Y)
    uf = _UnionFind(Y.points)
    covered = set()
    for r, lo, hi in _t_bands(Y, t):
        cells = [(r + i, c) for i in range(t) for c in range(lo, hi + 1)]
        covered.update(cells)
        for x in cells[1:]:
            uf.union(cells[0], x)
    classes = {}
    for x in sorted(Y.points):
        classes.setdefault(uf.find(x), []).append(x)
    out = []
    for members in sorted(classes.values()):
        if len(members) == 1 and members[0] not in covered:
            out.append(Component(Ladder(frozenset(members)), "free"))
            continue
        bad = ladder_violations(members)
        if bad:
            raise ComponentNotLadder(f"t-component is not a ladder: {bad[0]}")
        out.append(Component(Ladder(frozenset(members)), "connected"))
    return out


def is_t_connected(Y: Ladder, t: int) -> bool:
    comps = t_components(Y, t)
    return len(comps) == 1 and comps[0].tag == "connected"


# ---------------------------------------------------------------- Z and (d)

def construct_Z(Y: Ladder, t: int) -> Ladder:
    """Delete the thickness-1 lower border; coordinates are not relabeled."""
    if t <= 2:
        raise RequiresTGreaterThan2(f"Z is only formed for t > 2 (got t={t})")
    B1 = border(Y, "lower", 1).points
    pts = Y.points - B1
    bad = ladder_violations(pts)
    if bad:
        raise InvalidResidualLadder("; ".join(map(str, bad)))
    return Ladder(frozenset(pts))


def shifted_chain(profile: CornerProfile):
    """Lower corner chain that Z inherits from a (d)-ladder."""
    ch = profile.lower_chain
    h = profile.h
    out = [(ch[0][0] + 1, ch[0][1])]
    out += [(a + 1, b + 1) for a, b in ch[1:h + 1]]
    out.append((ch[h + 1][0], ch[h + 1][1] + 1))
    return tuple(out)


def assumption_d(Y: Ladder, t: int):
    """Return ``(holds, violators)``.

    Evaluated on every non-free t-component; violators are
    ``(component index, S'_i)`` pairs.
    """
    violators = []
    for idx, comp in enumerate(t_components(Y, t)):
        if comp.tag == "free":
            continue
        C = comp.ladder
        C1 = border(C, "upper", 1).points
        for corner in corner_profile(C).inside_lower:
            block = lower_block(corner, t)
            if not all(x in C.points for x in block) or any(x in C1 for x in block):
                violators.append((idx, corner))
    return not violators, violators


def assumption_d_component(C: Ladder, t: int) -> bool:
    C1 = border(C, "upper", 1).points
    for corner in corner_profile(C).inside_lower:
        block = lower_block(corner, t)
        if not all(x in C.points for x in block) or any(x in C1 for x in block):
            return False
    return True


# ---------------------------------------------------------------- decomposition

@dataclass(frozen=True)
class Piece:
    ident: int
    ladder: Ladder
    component: int
    cuts: tuple  # sequence of (T' corner, "upper" | "lower") leading here


@dataclass(frozen=True)
class Overlap:
    corner: tuple
    rect: tuple        # (r, c, s, d): rows r..c, cols s..d
    upper_piece: int
    lower_piece: int
    pairs: tuple       # ((point, upper id), (point, lower id))

    @property
    def cells(self):
        r, c, s, d = self.rect
        return [(p, q) for p in range(r, c + 1) for q in range(s, d + 1)]


@dataclass(frozen=True)
class Decomposition:
    t: int
    components: tuple          # Component per t-component
    pieces: tuple              # Piece
    overlaps: tuple            # Overlap
    k_bullet: tuple            # per component (0 for free)

    def pieces_of(self, component):
        return [p for p in self.pieces if p.component == component]


def _cut(L: Ladder, t: int):
    prof = classify_corners(L, t)
    cands = [(corner[1], corner) for corner, flag in zip(prof.inside_upper, prof.upper_type11) if flag]
    if not cands:
        return None
    _, (c, d) = max(cands)
    B1 = border(L, "lower", 1).points
    hits = [x for x in upper_block((c, d), t) if x in L.points and x in B1]
    r = max(p for p, _ in hits)
    s = max(q for _, q in hits)
    up = frozenset((p, q) for p, q in L.points if p <= c and q >= s)
    low = frozenset((p, q) for p, q in L.points if p >= r and q <= d)
    rect = (r, c, s, d)
    cells = {(p, q) for p in range(r, c + 1) for q in range(s, d + 1)}
    if not (cells <= up and cells <= low):
        raise DecompositionInvariantFailure("overlap rectangle not in both pieces", ((c, d), rect))
    for part in (up, low):
        bad = ladder_violations(part)
        if bad:
            raise DecompositionInvariantFailure("piece is not a ladder", bad[0])
    return (c, d), rect, Ladder(up), Ladder(low)


def decompose(Y: Ladder, t: int, check: bool = True) -> Decomposition:
    """Split into t-components, then cut each at its type-1.1 upper corners.

    Cuts are taken at the type-1.1 corner with the largest column first and
    the two resulting pieces are processed recursively.
    """
    comps = t_components(Y, t)
    pieces, overlaps, kb = [], [], []

    def rec(L, comp_idx, history):
        res = _cut(L, t)
        if res is None:
            pid = len(pieces)
            pieces.append(Piece(pid, L, comp_idx, tuple(history)))
            return [pid]
        corner, rect, up, low = res
        ids_up = rec(up, comp_idx, history + [(corner, "upper")])
        ids_low = rec(low, comp_idx, history + [(corner, "lower")])
        r, c, s, d = rect
        pairs = []
        for p in range(r, c + 1):
            for q in range(s, d + 1):
                iu = next(i for i in ids_up if (p, q) in pieces[i].ladder.points)
                il = next(i for i in ids_low if (p, q) in pieces[i].ladder.points)
                pairs.append(((p, q), iu, il))
        overlaps.append(Overlap(corner, rect, ids_up[0], ids_low[0],
                                tuple(((pt, iu), (pt, il)) for pt, iu, il in pairs)))
        return ids_up + ids_low

    for idx, comp in enumerate(comps):
        if comp.tag == "free":
            kb.append(0)
            continue
        kb.append(classify_corners(comp.ladder, t).k_bullet)
        rec(comp.ladder, idx, [])
    dec = Decomposition(t, tuple(comps), tuple(pieces), tuple(overlaps), tuple(kb))
    if check:
        check_decomposition(Y, dec)
    return dec


def check_decomposition(Y: Ladder, dec: Decomposition):
    t = dec.t
    union = set()
    for comp in dec.components:
        if comp.tag == "free":
            union |= comp.ladder.points
    for pc in dec.pieces:
        union |= pc.ladder.points
    if union != set(Y.points):
        raise DecompositionInvariantFailure("piece union != Y", sorted(set(Y.points) ^ union)[:5])
    for sup in minor_supports(Y, t):
        cells = sup.cells()
        owners = [pc.ident for pc in dec.pieces if all(x in pc.ladder.points for x in cells)]
        if len(owners) != 1:
            raise DecompositionInvariantFailure(
                f"minor support covered by {len(owners)} pieces", str(sup))
    for pc in dec.pieces:
        if not assumption_d_component(pc.ladder, t):
            raise DecompositionInvariantFailure("piece violates assumption (d)", pc.ident)
    for idx, comp in enumerate(dec.components):
        if comp.tag == "free":
            continue
        n = len(dec.pieces_of(idx))
        if n != dec.k_bullet[idx] + 1:
            raise DecompositionInvariantFailure(
                f"component {idx} has {n} pieces, expected k_bullet+1={dec.k_bullet[idx] + 1}", idx)
