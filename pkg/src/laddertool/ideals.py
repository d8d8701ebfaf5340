"""Minors, ladder ideals, multivariate division and ideal membership.

The ideals live in the polynomial ring over all points of a ladder ``Y``.
Membership is decided by reduction to normal form under the row-major
lexicographic (diagonal) order.  In ``assumed_gb`` mode the minors are
taken to be a Groebner basis (a literature result for ladders, not
re-proved here); ``buchberger`` mode completes the generators first.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from itertools import permutations
from typing import Optional

from .errors import LadderError, NotTConnected, SupportNotInLadder
from .ladder import (
    CornerProfile,
    Ladder,
    MinorSupport,
    classify_corners,
    construct_Z,
    is_t_connected,
    minor_supports,
    shifted_chain,
)
from .poly import ORDERS, Poly, PolyRing


@dataclass(frozen=True)
class Variable:
    point: tuple
    copy_tag: Optional[int] = None

    def __str__(self):
        p, q = self.point
        return f"X{p}{q}" if self.copy_tag is None else f"X{p}{q}@{self.copy_tag}"


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def minor(ring, support: MinorSupport, Y: Optional[Ladder] = None) -> Poly:
    """Determinant of the generic submatrix on ``support``.

    ``ring`` may also be a Ladder, in which case its own polynomial ring is
    used and the support is checked against it.  Entries are distinct
    indeterminates, so the cofactor expansion is written out directly: one
    monomial per permutation, identity term positive.
    """
    if isinstance(ring, Ladder):
        Y, ring = ring, PolyRing(ring.points)
    cells = support.cells()
    if Y is not None and any(c not in Y.points for c in cells):
        raise SupportNotInLadder(f"support {support} leaves the ladder")
    t = support.size
    idx = [[ring.index[(r, c)] for c in support.cols] for r in support.rows]
    terms = {}
    red = ring.field.reduce
    for perm in permutations(range(t)):
        e = [0] * ring.nvars
        for i, j in enumerate(perm):
            e[idx[i][j]] += 1
        terms[tuple(e)] = red(_perm_sign(perm))
    return Poly(ring, terms)


def generic_matrix(ring, support):
    return [[ring.var((r, c)) for c in support.cols] for r in support.rows]


# ---------------------------------------------------------------- ideals

@dataclass
class IdealPresentation:
    label: str                  # "I", "q1", "q1'", "p1", ...
    ladder: str                 # "Y" or "Z"
    minor_size: int
    region: frozenset
    supports: list
    generators: list
    base: Optional["IdealPresentation"] = None   # I_t stored by reference

    @property
    def is_zero_ideal(self):
        return not self.supports and self.base is None

    def all_supports(self):
        out = list(self.supports)
        if self.base is not None:
            out += self.base.all_supports()
        return out

    def all_generators(self):
        out = list(self.generators)
        if self.base is not None:
            out += self.base.all_generators()
        return out

    def support_set(self):
        """Supports of the extra generators as ``{(rows, cols)}``."""
        return {(s.rows, s.cols) for s in self.supports}

    def describe(self):
        return {
            "label": self.label,
            "ladder": self.ladder,
            "minor_size": self.minor_size,
            "region": sorted(list(p) for p in self.region),
            "supports": [str(s) for s in self.supports],
            "plus_base": self.base.label if self.base is not None else None,
        }


def _band_rows(Y: Ladder, rows, truncate):
    pts = {(p, q) for p, q in Y.points if p in rows}
    if truncate:
        cols = {q for _, q in pts}
        full = {q for q in cols if all((p, q) in Y.points for p in rows)}
        pts = {(p, q) for p, q in pts if q in full}
    return frozenset(pts)


def _band_cols(Y: Ladder, cols, truncate):
    pts = {(p, q) for p, q in Y.points if q in cols}
    if truncate:
        rows = {p for p, _ in pts}
        full = {p for p in rows if all((p, q) in Y.points for q in cols)}
        pts = {(p, q) for p, q in pts if p in full}
    return frozenset(pts)


def ideal_regions(Y: Ladder, t: int, profile: CornerProfile):
    """Regions Q_i, Q'_i, P_j keyed by label; an empty region means (0)."""
    a, b = profile.a, profile.b
    h = profile.h
    types = profile.lower_types
    out = {}
    for i in range(1, h + 2):
        rows = set(range(a[i - 1], a[i - 1] + t - 1))
        trunc = i > 1 and types[i - 2] == "type2"
        out[f"q{i}"] = _band_rows(Y, rows, trunc)
    for i in range(1, h + 2):
        cols = set(range(b[i], b[i] + t - 1))
        trunc = i <= h and types[i - 1] == "type2"
        out[f"q{i}'"] = _band_cols(Y, cols, trunc)
    for j, (corner, ty) in enumerate(zip(profile.inside_upper, profile.upper_types), start=1):
        if ty == "type1":
            c, d = corner
            out[f"p{j}"] = frozenset((p, q) for p, q in Y.points if p <= c and q <= d)
        else:
            out[f"p{j}"] = frozenset()
    return out


def ladder_ideals(Y: Ladder, t: int, profile: Optional[CornerProfile] = None,
                  ring: Optional[PolyRing] = None, name: str = "Y", check_connected: bool = True):
    """I_t(Y) together with the ideals Q_i, Q'_i and P_j.

    Returns a dict label -> IdealPresentation.  The Q/P presentations carry
    their (t-1)-minors and refer to I_t(Y) through ``base``.
    """
    if check_connected and not is_t_connected(Y, t):
        raise NotTConnected(f"ladder is not {t}-connected")
    if profile is None or not profile.classified:
        profile = classify_corners(Y, t, profile)
    if ring is None:
        ring = PolyRing(Y.points)
    sup = minor_supports(Y, t)
    base = IdealPresentation("I", name, t, Y.points, sup, [minor(ring, s) for s in sup])
    out = {"I": base}
    for label, region in ideal_regions(Y, t, profile).items():
        sups = minor_supports(Y, t - 1, region=region) if region else []
        out[label] = IdealPresentation(label, name, t - 1, region, sups,
                                       [minor(ring, s) for s in sups], base)
    return out


def z_profile(profile: CornerProfile) -> CornerProfile:
    """Corner data for Z numbered as in Y (valid even if Z is disconnected)."""
    chain = shifted_chain(profile)
    h = profile.h
    outside = tuple((chain[i - 1][0], chain[i][1]) for i in range(1, h + 2))
    return replace(profile, lower_chain=chain, outside_lower=outside,
                   inside_lower=tuple(chain[1:h + 1]), t=profile.t - 1)


def z_ideals(Y: Ladder, t: int, profile: Optional[CornerProfile] = None,
             ring: Optional[PolyRing] = None):
    """I_{t-1}(Z), Q_i(Z), Q'_i(Z), P_j(Z) inside the polynomial ring of Y."""
    if profile is None or not profile.classified:
        profile = classify_corners(Y, t, profile)
    Z = construct_Z(Y, t)
    if ring is None:
        ring = PolyRing(Y.points)
    zp = z_profile(profile)
    zs = t - 1
    sup = minor_supports(Z, zs)
    base = IdealPresentation("I", "Z", zs, Z.points, sup, [minor(ring, s) for s in sup])
    out = {"I": base}
    for label, region in ideal_regions(Z, zs, zp).items():
        if label.startswith("p") and label[1:] and profile.upper_types[int(label[1:]) - 1] != "type1":
            region = frozenset()
        sups = minor_supports(Z, zs - 1, region=region) if region and zs > 1 else []
        out[label] = IdealPresentation(label, "Z", zs - 1, region, sups,
                                       [minor(ring, s) for s in sups], base)
    return out


@dataclass
class OutsideCornerElements:
    f: list        # Poly per outside lower corner S_i
    f_supports: list
    F: Poly
    g: list        # Poly per outside upper corner T_j
    g_supports: list
    G: Poly
    x_points: list  # S_1..S_{h+1}
    X: Poly         # product of the S_i variables


def outside_corner_elements(Y: Ladder, t: int, profile: Optional[CornerProfile] = None,
                            ring: Optional[PolyRing] = None) -> OutsideCornerElements:
    if not is_t_connected(Y, t):
        raise NotTConnected(f"ladder is not {t}-connected")
    if profile is None or not profile.classified:
        profile = classify_corners(Y, t, profile)
    if ring is None:
        ring = PolyRing(Y.points)
    f_sup, g_sup = [], []
    for a, b in profile.outside_lower:
        f_sup.append(MinorSupport(tuple(range(a, a + t - 1)), tuple(range(b, b + t - 1))))
    for c, d in profile.outside_upper:
        g_sup.append(MinorSupport(tuple(range(c - t + 2, c + 1)), tuple(range(d - t + 2, d + 1))))
    for s in f_sup + g_sup:
        if any(x not in Y.points for x in s.cells()):
            raise LadderError(f"outside-corner minor {s} leaves the ladder")
    f = [minor(ring, s, Y) for s in f_sup]
    g = [minor(ring, s, Y) for s in g_sup]
    F, G, X = ring.one(), ring.one(), ring.one()
    for p in f:
        F = F * p
    for p in g:
        G = G * p
    for pt in profile.outside_lower:
        X = X * ring.var(pt)
    regions = ideal_regions(Y, t, profile)
    for i, s in enumerate(f_sup, start=1):
        for label in (f"q{i}", f"q{i}'"):
            if not set(s.cells()) <= regions[label]:
                raise LadderError(f"f_{i} support {s} is not a generator of {label}")
    return OutsideCornerElements(f, f_sup, F, g, g_sup, G, list(profile.outside_lower), X)


# ---------------------------------------------------------------- division

def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _sub_exp(a, b):
    return tuple(x - y for x, y in zip(a, b))


def normal_form(P: Poly, gens, order: str = "lex", cofactors: bool = True):
    """Multivariate division of ``P`` by ``gens``.

    Returns ``(remainder, cofactor_list)`` with ``P = sum c_i g_i + r`` and
    no term of ``r`` divisible by a leading term of ``gens``.  The identity
    is re-checked exactly when cofactors are tracked.
    """
    key = ORDERS[order]
    ring = P.ring
    F = ring.field
    red = F.reduce
    leads = []
    for g in gens:
        if g.is_zero():
            raise ValueError("zero generator")
        e = max(g.terms, key=key)
        leads.append((e, g.terms[e], g.terms))
    p = dict(P.terms)
    rem = {}
    cof = [dict() for _ in gens] if cofactors else None
    while p:
        e = max(p, key=key)
        c = p[e]
        for gi, (ge, gc, gterms) in enumerate(leads):
            if _divides(ge, e):
                q_exp = _sub_exp(e, ge)
                q = F.div(c, gc)
                for te, tc in gterms.items():
                    ne = tuple(x + y for x, y in zip(te, q_exp))
                    v = red(p.get(ne, 0) - q * tc)
                    if v:
                        p[ne] = v
                    else:
                        p.pop(ne, None)
                if cofactors:
                    cof[gi][q_exp] = red(cof[gi].get(q_exp, 0) + q)
                break
        else:
            rem[e] = c
            del p[e]
    r = Poly(ring, rem)
    if not cofactors:
        return r, None
    cofs = [Poly(ring, {e: v for e, v in d.items() if v}) for d in cof]
    check = r
    for c, g in zip(cofs, gens):
        if c:
            check = check + c * g
    if check != P:
        raise ArithmeticError("division identity failed")
    return r, cofs


def _reduce_raw(terms, basis, key, F, full=True):
    red = F.reduce
    p = dict(terms)
    rem = {}
    while p:
        e = max(p, key=key)
        c = p[e]
        for ge, gc, gterms in basis:
            if _divides(ge, e):
                q_exp = _sub_exp(e, ge)
                q = F.div(c, gc)
                for te, tc in gterms.items():
                    ne = tuple(x + y for x, y in zip(te, q_exp))
                    v = red(p.get(ne, 0) - q * tc)
                    if v:
                        p[ne] = v
                    else:
                        p.pop(ne, None)
                break
        else:
            if not full:
                rem.update(p)
                return rem
            rem[e] = c
            del p[e]
    return rem


@dataclass
class GroebnerResult:
    basis: list            # Poly
    complete: bool
    pairs_processed: int
    pairs_skipped: int
    added: int
    seconds: float
    reason: str = ""


def groebner(gens, order: str = "lex", max_pairs: Optional[int] = None,
             max_degree: Optional[int] = None) -> GroebnerResult:
    """Buchberger's algorithm with the product and chain criteria.

    Pairs are handled by increasing degree of their lcm.  Hitting
    ``max_pairs`` leaves the basis incomplete.  With ``max_degree`` pairs of
    larger lcm degree are skipped: for homogeneous input the result is then
    a Groebner basis up to that degree.
    """
    start = time.perf_counter()
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return GroebnerResult([], True, 0, 0, 0, 0.0)
    ring = gens[0].ring
    F = ring.field
    key = ORDERS[order]
    basis = []   # (lead exp, lead coeff, terms)
    seen = set()
    for g in gens:
        fz = frozenset(g.terms.items())
        if fz in seen:
            continue
        seen.add(fz)
        e = max(g.terms, key=key)
        basis.append((e, g.terms[e], dict(g.terms)))

    def lcm(a, b):
        return tuple(max(x, y) for x, y in zip(a, b))

    pairs = {}
    for j in range(len(basis)):
        for i in range(j):
            pairs[(i, j)] = lcm(basis[i][0], basis[j][0])
    processed = skipped = added = 0
    complete = True
    reason = ""
    while pairs:
        (i, j), L = min(pairs.items(), key=lambda kv: (sum(kv[1]), key(kv[1]), kv[0]))
        del pairs[(i, j)]
        ei, ci, ti = basis[i]
        ej, cj, tj = basis[j]
        if all(x == 0 or y == 0 for x, y in zip(ei, ej)):
            skipped += 1
            continue
        chain = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(basis[k][0], L):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pairs and pjk not in pairs:
                    chain = True
                    break
        if chain:
            skipped += 1
            continue
        if max_degree is not None and sum(L) > max_degree:
            complete = False
            reason = f"degree cap {max_degree}"
            continue
        if max_pairs is not None and processed >= max_pairs:
            complete = False
            reason = f"pair cap {max_pairs}"
            break
        processed += 1
        s = {}
        mi = _sub_exp(L, ei)
        mj = _sub_exp(L, ej)
        for e, c in ti.items():
            ne = tuple(x + y for x, y in zip(e, mi))
            s[ne] = F.reduce(s.get(ne, 0) + F.div(c, ci))
        for e, c in tj.items():
            ne = tuple(x + y for x, y in zip(e, mj))
            s[ne] = F.reduce(s.get(ne, 0) - F.div(c, cj))
        s = {e: c for e, c in s.items() if c}
        r = _reduce_raw(s, basis, key, F)
        if r:
            e = max(r, key=key)
            c = r[e]
            r = {x: F.div(v, c) for x, v in r.items()}
            basis.append((e, 1, r))
            added += 1
            n = len(basis) - 1
            for i2 in range(n):
                pairs[(i2, n)] = lcm(basis[i2][0], e)
    polys = [Poly(ring, dict(t)) for _, _, t in basis]
    return GroebnerResult(polys, complete, processed, skipped, added,
                          time.perf_counter() - start, reason)


# ---------------------------------------------------------------- membership

@dataclass
class MembershipCertificate:
    verdict: str                 # "member" | "non_member" | "inconclusive"
    mode: str
    order: str
    reducer_size: int
    gb_complete: bool
    residual: Optional[Poly] = None
    cofactors: Optional[list] = None
    reducer: Optional[list] = None
    note: str = ""

    def to_json(self):
        return {
            "verdict": self.verdict,
            "mode": self.mode,
            "order": self.order,
            "reducer_size": self.reducer_size,
            "gb_complete": self.gb_complete,
            "residual": None if self.residual is None else str(self.residual),
            "note": self.note,
        }


class IdealOracle:
    """Reduces polynomials against one ideal, caching its Groebner basis."""

    def __init__(self, generators, mode="assumed_gb", order="lex",
                 max_pairs=None, max_degree=None):
        if mode not in ("assumed_gb", "buchberger"):
            raise ValueError(f"unknown membership mode {mode!r}")
        self.mode = mode
        self.order = order
        self.generators = [g for g in generators if not g.is_zero()]
        self.gb = None
        if mode == "buchberger" and self.generators:
            self.gb = groebner(self.generators, order, max_pairs=max_pairs, max_degree=max_degree)
            self.reducer = self.gb.basis
            self.complete = self.gb.complete
            self.max_degree = max_degree if not self.gb.complete or max_degree else None
        else:
            self.reducer = self.generators
            self.complete = mode == "assumed_gb" or not self.generators
            self.max_degree = None

    def decide(self, P: Poly, want_cofactors=False) -> MembershipCertificate:
        from .psichi import LocalizedElement  # local import: psichi depends on this module

        if isinstance(P, LocalizedElement):
            P = P.numerator
        if not self.reducer:
            verdict = "member" if P.is_zero() else "non_member"
            return MembershipCertificate(verdict, self.mode, self.order, 0, True,
                                         residual=None if P.is_zero() else P)
        r, cof = normal_form(P, self.reducer, self.order, cofactors=want_cofactors)
        if r.is_zero():
            verdict = "member"
        elif self.mode == "assumed_gb":
            verdict = "non_member"
        elif self.complete:
            verdict = "non_member"
        elif (self.gb.reason.startswith("degree") and P.is_homogeneous()
              and all(g.is_homogeneous() for g in self.generators)
              and P.degree() <= self.gb_degree_cap()):
            verdict = "non_member"
        else:
            verdict = "inconclusive"
        note = "minors assumed to form a Groebner basis" if self.mode == "assumed_gb" else ""
        if self.mode == "buchberger" and not self.complete:
            note = f"Groebner completion stopped: {self.gb.reason}"
        return MembershipCertificate(
            verdict, self.mode, self.order, len(self.reducer),
            self.complete, residual=None if r.is_zero() else r,
            cofactors=cof, reducer=self.reducer if want_cofactors else None, note=note)

    def gb_degree_cap(self):
        reason = self.gb.reason
        return int(reason.split()[-1])


def membership(P, ideal, mode="assumed_gb", order="lex", max_pairs=None, max_degree=None,
               want_cofactors=False) -> MembershipCertificate:
    """Decide ``P`` in ``ideal`` (an IdealPresentation or list of Polys).

    A LocalizedElement is tested through its numerator; this is valid
    because ladder ideals are prime and contain no variables of the
    denominator (all generators have degree >= 2, or avoid those points).
    """
    gens = ideal.all_generators() if isinstance(ideal, IdealPresentation) else list(ideal)
    oracle = IdealOracle(gens, mode, order, max_pairs=max_pairs, max_degree=max_degree)
    return oracle.decide(P, want_cofactors=want_cofactors)
