"""Machine-checkable statements about ladders, run as pass/fail reports."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Optional

from .errors import DecompositionInvariantFailure, LadderError
from .fixtures import NAMES, fixture
from .generate import disjoint_union, random_ladder
from .ideals import IdealOracle, ladder_ideals, z_ideals
from .invariants import canonical_class, class_group, gorenstein, semidualizing
from .ladder import (
    Ladder,
    assumption_d_component,
    classify_corners,
    construct_Z,
    decompose,
    full_ladder,
    is_t_connected,
    t_components,
)
from .poly import PolyRing, QQ, PrimeField, det_bareiss, det_cofactor
from .psichi import LocalizedElement, chi_map, psi_map

DEFAULT_CAPS = {
    "max_pairs": None,      # Buchberger S-pair budget per ideal
    "max_degree": None,     # Buchberger lcm-degree cap
    "max_cells": 25,        # correspondence in buchberger mode up to this size
    "sweep": 500,           # random ladders in the property sweep
}


@dataclass
class VerificationReport:
    check: str
    instance: str
    verdict: str             # pass | fail | inconclusive
    witness: object = None
    seconds: float = 0.0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict == "fail" and self.witness is None:
            raise ValueError("a failing report needs a witness")

    @property
    def ok(self):
        return self.verdict == "pass"

    def to_json(self):
        return {
            "check": self.check,
            "instance": self.instance,
            "verdict": self.verdict,
            "witness": self.witness,
            "seconds": round(self.seconds, 3),
            "details": self.details,
        }


def spans_of(Y: Ladder):
    """Row spans as a plain dict; enough to rebuild any witness ladder."""
    return {r: list(s) for r, s in sorted(Y.row_spans.items())}


def _timed(check, instance, fn):
    start = time.perf_counter()
    try:
        verdict, witness, details = fn()
    except LadderError as exc:
        verdict, witness, details = "fail", f"{type(exc).__name__}: {exc}", {}
    return VerificationReport(check, instance, verdict, witness,
                              time.perf_counter() - start, details)


# ---------------------------------------------------------------- psi / chi

def verify_inverse(Y: Ladder, t: int, name: str = "") -> VerificationReport:
    def run():
        R = PolyRing(Y.points)
        psi, chi = psi_map(Y, t, R), chi_map(Y, t, R)
        for pt in sorted(Y.points):
            x = LocalizedElement.of(R.var(pt))
            if chi(psi(pt)) != x:
                return "fail", {"point": list(pt), "map": "chi(psi)", "ladder": spans_of(Y)}, {}
            if psi(chi(pt)) != x:
                return "fail", {"point": list(pt), "map": "psi(chi)", "ladder": spans_of(Y)}, {}
        return "pass", None, {"variables": len(Y.points)}
    return _timed("inverse", name or f"{len(Y.points)} cells, t={t}", run)


# ---------------------------------------------------------------- correspondence

def _pair_labels(Yid, Zid):
    return [lab for lab in Yid if lab in Zid]


def verify_correspondence(Y: Ladder, t: int, mode: str = "buchberger", name: str = "",
                          max_pairs=None, max_degree=None, drop_z_minor: Optional[int] = None,
                          max_cells: Optional[int] = None) -> VerificationReport:
    """Both inclusions of psi on I and every Q_i, Q'_i, P_j pair.

    ``drop_z_minor`` removes one generator of I_{t-1}(Z) first; the harness
    must then report a failure.
    """
    def run():
        if max_cells is not None and mode == "buchberger" and len(Y.points) > max_cells:
            return "inconclusive", None, {"reason": f"{len(Y.points)} cells exceed cap {max_cells}"}
        R = PolyRing(Y.points)
        prof = classify_corners(Y, t)
        Yid = ladder_ideals(Y, t, prof, ring=R)
        Zid = z_ideals(Y, t, prof, ring=R)
        if drop_z_minor is not None:
            base = Zid["I"]
            k = drop_z_minor % len(base.generators)
            base.supports = base.supports[:k] + base.supports[k + 1:]
            base.generators = base.generators[:k] + base.generators[k + 1:]
        psi, chi = psi_map(Y, t, R), chi_map(Y, t, R)
        stats = {"mode": mode, "memberships": 0, "gb_incomplete": []}
        inconclusive = []
        oracles = {}

        def oracle(side, label, ideal):
            key = (side, label)
            if key not in oracles:
                oracles[key] = IdealOracle(ideal.all_generators(), mode,
                                           max_pairs=max_pairs, max_degree=max_degree)
                if not oracles[key].complete:
                    stats["gb_incomplete"].append(f"{side}:{label}")
            return oracles[key]

        for label in _pair_labels(Yid, Zid):
            Yi, Zi = Yid[label], Zid[label]
            if Yi.is_zero_ideal and Zi.is_zero_ideal:
                continue
            # Q/P pairs inherit I from "I"; only their extra generators are new
            for sup, g in zip(Yi.supports, Yi.generators):
                cert = oracle("Z", label, Zi).decide(psi(g))
                stats["memberships"] += 1
                if cert.verdict == "non_member":
                    return "fail", {"direction": "forward", "ideal": label, "generator": str(sup),
                                    "residual": str(cert.residual), "ladder": spans_of(Y), "t": t}, stats
                if cert.verdict == "inconclusive":
                    inconclusive.append(f"forward {label} {sup}")
            for sup, g in zip(Zi.supports, Zi.generators):
                cert = oracle("Y", label, Yi).decide(chi(g))
                stats["memberships"] += 1
                if cert.verdict == "non_member":
                    return "fail", {"direction": "reverse", "ideal": label, "generator": str(sup),
                                    "residual": str(cert.residual), "ladder": spans_of(Y), "t": t}, stats
                if cert.verdict == "inconclusive":
                    inconclusive.append(f"reverse {label} {sup}")

        # a t-minor rooted at an outside lower corner picks up that corner variable
        for S in prof.outside_lower:
            for sup in Yid["I"].supports:
                if (sup.rows[0], sup.cols[0]) != S:
                    continue
                img = psi(Yid["I"].generators[Yid["I"].supports.index(sup)])
                if any(p == S for p, _ in img.denominator) or img.numerator.var_valuation(S) < 1:
                    return "fail", {"check": "corner divisibility", "minor": str(sup),
                                    "corner": list(S), "ladder": spans_of(Y), "t": t}, stats
                stats.setdefault("divisibility_checked", 0)
                stats["divisibility_checked"] += 1

        if inconclusive or stats["gb_incomplete"]:
            stats["inconclusive"] = inconclusive
            return "inconclusive", None, stats
        return "pass", None, stats

    return _timed("correspondence", name or f"{len(Y.points)} cells, t={t}, {mode}", run)


# ---------------------------------------------------------------- decomposition

def verify_decomposition(Y: Ladder, t: int, name: str = "") -> VerificationReport:
    def run():
        try:
            dec = decompose(Y, t, check=True)
        except DecompositionInvariantFailure as exc:
            return "fail", {"invariant": exc.invariant, "detail": str(exc.witness),
                            "ladder": spans_of(Y), "t": t}, {}
        return "pass", None, {
            "pieces": len(dec.pieces),
            "overlap_cells": [len(o.cells) for o in dec.overlaps],
            "k_bullet": list(dec.k_bullet),
        }
    return _timed("decomposition", name or f"{len(Y.points)} cells, t={t}", run)


# ---------------------------------------------------------------- sweep

def sweep_instance(Y: Ladder, t: int, counts: Optional[dict] = None):
    """Per-ladder property checks; returns a list of (property, message)."""
    bad = []
    counts = {} if counts is None else counts
    for idx, comp in enumerate(t_components(Y, t)):
        if comp.tag == "free":
            continue
        C = comp.ladder
        prof = classify_corners(C, t)
        if prof.h + prof.k_star != prof.h_star + prof.k:
            bad.append(("rank identity", f"component {idx}"))
        d = assumption_d_component(C, t)
        if d != (prof.k_bullet == 0):
            bad.append(("(d) iff k_bullet=0", f"component {idx}: d={d}, k_bullet={prof.k_bullet}"))
        counts["components"] = counts.get("components", 0) + 1
        if t == 3 and d:
            counts["yz_compared"] = counts.get("yz_compared", 0) + 1
            try:
                a = canonical_class(C, t)
                b = canonical_class(construct_Z(C, t), t - 1)
                if (a.lam, a.delta) != (b.lam, b.delta):
                    bad.append(("lambda/delta Y vs Z", f"component {idx}: {a.to_json()} vs {b.to_json()}"))
            except LadderError as exc:
                bad.append(("lambda/delta Y vs Z", f"component {idx}: {type(exc).__name__}: {exc}"))
    try:
        decompose(Y, t, check=True)
    except DecompositionInvariantFailure as exc:
        bad.append(("decomposition", str(exc)))
    return bad


def property_sweep(seed: int, count: int = 500, ts=(2, 3)):
    """Seeded random ladders; one report per property."""
    rng = random.Random(seed)
    failures = []
    start = time.perf_counter()
    checked = 0
    counts = {}
    for i in range(count):
        Y = random_ladder(rng)
        for t in ts:
            for prop, msg in sweep_instance(Y, t, counts):
                failures.append({"index": i, "t": t, "property": prop, "message": msg,
                                 "ladder": spans_of(Y)})
        # multiplicativity over a disconnected union
        Y2 = random_ladder(rng)
        U = disjoint_union(Y, Y2)
        for t in ts:
            c = semidualizing(U, t).count
            c1, c2 = semidualizing(Y, t).count, semidualizing(Y2, t).count
            if c != c1 * c2:
                failures.append({"index": i, "t": t, "property": "multiplicativity",
                                 "message": f"{c} != {c1}*{c2}",
                                 "ladder": spans_of(Y), "other": spans_of(Y2)})
        checked += 1
    verdict = "fail" if failures else "pass"
    return VerificationReport("property_sweep", f"seed={seed}, {count} ladders, t in {list(ts)}",
                              verdict, failures[:10] if failures else None,
                              time.perf_counter() - start,
                              {"ladders": checked, "failures": len(failures), **counts})


# ---------------------------------------------------------------- fixtures

EXPECTED = {
    # lower type of S'_1, (upper type, type 1.1) of T'_1, k*, k_bullet, rank, |S_0|
    "L1": ("type1", ("type1", True), 1, 1, 3, 4),
    "L2": ("type2", ("type2", True), 0, 1, 2, 2),
    "L3": ("type1", ("type1", False), 1, 0, 3, 2),
    "L4": ("type2", ("type2", True), 0, 1, 2, 1),
}


def _fixture_facts(name):
    def run():
        Y = fixture(name)
        prof = classify_corners(Y, 3)
        got = (prof.lower_types[0], (prof.upper_types[0], prof.upper_type11[0]),
               prof.k_star, prof.k_bullet, class_group(Y, 3).ladder_rank,
               semidualizing(Y, 3).count)
        if prof.inside_lower[0] != (3, 3):
            return "fail", {"S'_1": list(prof.inside_lower[0])}, {}
        if got != EXPECTED[name]:
            return "fail", {"expected": repr(EXPECTED[name]), "got": repr(got)}, {}
        return "pass", None, {"facts": repr(got)}
    return _timed("fixture_facts", name, run)


def _determinant_oracle(seed, count=200):
    def run():
        rng = random.Random(seed)
        F = PrimeField()
        for i in range(count):
            n = rng.randint(1, 6)
            M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
            field_ = QQ if i % 2 == 0 else F
            a = det_bareiss(M, field_)
            b = field_.reduce(det_cofactor([[field_.convert(x) for x in row] for row in M]))
            if a != b:
                return "fail", {"matrix": M, "field": repr(field_), "bareiss": a, "cofactor": b}, {}
        return "pass", None, {"matrices": count}
    return _timed("determinant_oracle", f"{count} random matrices", run)


def _gorenstein_rectangles():
    def run():
        for m in range(2, 9):
            for n in range(2, 9):
                for t in range(2, min(m, n) + 1):
                    if gorenstein(full_ladder(m, n), t)[0] != (m == n):
                        return "fail", {"m": m, "n": n, "t": t}, {}
        return "pass", None, {}
    return _timed("gorenstein_rectangles", "2 <= t <= m,n <= 8", run)


def run_fixture_suite(seed: int = 0, caps: Optional[dict] = None):
    """Every fixture-level check plus the seeded property sweep."""
    caps = {**DEFAULT_CAPS, **(caps or {})}
    reports = []
    for name in NAMES:
        reports.append(_fixture_facts(name))
        reports.append(verify_decomposition(fixture(name), 3, name))
    for name in NAMES + ("full:4x4",):
        Y = fixture(name)
        if is_t_connected(Y, 3):
            reports.append(verify_inverse(Y, 3, name))
    for name in ("L1", "full:4x4"):
        reports.append(verify_correspondence(
            fixture(name), 3, "buchberger", name, max_pairs=caps["max_pairs"],
            max_degree=caps["max_degree"], max_cells=caps["max_cells"]))
    reports.append(_gorenstein_rectangles())
    reports.append(_determinant_oracle(seed))
    reports.append(property_sweep(seed, caps["sweep"]))
    return sorted(reports, key=lambda r: (r.check, r.instance))
