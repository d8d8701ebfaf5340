"""Class groups, canonical classes, Gorenstein tests and semidualizing counts."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import AssumptionDViolated, NoSuchIndex, NotTConnected
from .ladder import (
    Ladder,
    assumption_d_component,
    classify_corners,
    decompose,
    is_t_connected,
    t_components,
)


@dataclass(frozen=True)
class CoefficientRingDescriptor:
    name: str = "field"
    cl_free_rank: int = 0
    cl_invariant_factors: tuple = ()
    s0_labels: tuple = ("R",)

    def __post_init__(self):
        if self.cl_free_rank < 0:
            raise ValueError("cl_free_rank must be >= 0")
        if any(f < 2 for f in self.cl_invariant_factors):
            raise ValueError("invariant factors must be >= 2")
        if not self.s0_labels:
            raise ValueError("s0_labels must contain at least the free class")

    @property
    def is_ufd(self):
        return self.cl_free_rank == 0 and not self.cl_invariant_factors

    def cl_summands(self):
        out = [f"Z/{f}" for f in self.cl_invariant_factors]
        out += ["Z"] * self.cl_free_rank
        return out

    @classmethod
    def from_json(cls, data):
        return cls(
            name=data.get("name", "field"),
            cl_free_rank=int(data.get("cl_free_rank", 0)),
            cl_invariant_factors=tuple(int(x) for x in data.get("cl_invariant_factors", ())),
            s0_labels=tuple(data.get("s0_labels", ("R",))),
        )

    def to_json(self):
        return {
            "name": self.name,
            "cl_free_rank": self.cl_free_rank,
            "cl_invariant_factors": list(self.cl_invariant_factors),
            "s0_labels": list(self.s0_labels),
        }


FIELD = CoefficientRingDescriptor()


def with_s0(count: int, name: str = "A") -> CoefficientRingDescriptor:
    """A descriptor with ``count`` semidualizing classes (Cl torsion unknown)."""
    return CoefficientRingDescriptor(name, 0, (), tuple(f"C{i}" for i in range(count)))


@dataclass(frozen=True)
class BasisLabel:
    component: int
    kind: str        # "q" or "p"
    index: int
    corner: tuple

    def __str__(self):
        return f"{self.kind}{self.index}"


@dataclass
class ClassGroupReport:
    ladder_rank: int
    basis: list
    coeff: CoefficientRingDescriptor
    localization_note: str = "Cl(A_t(Y)_f) = Cl(A)"

    @property
    def total(self):
        parts = self.coeff.cl_summands()
        if self.ladder_rank:
            parts.append(f"Z^{self.ladder_rank}" if self.ladder_rank > 1 else "Z")
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {
            "ladder_rank": self.ladder_rank,
            "basis": [{"component": b.component, "label": str(b), "corner": list(b.corner)}
                      for b in self.basis],
            "total": self.total,
            "coefficients": self.coeff.to_json(),
            "localization_note": self.localization_note,
        }


def class_group(Y: Ladder, t: int, coeff: CoefficientRingDescriptor = FIELD) -> ClassGroupReport:
    rank = 0
    basis = []
    for idx, comp in enumerate(t_components(Y, t)):
        if comp.tag == "free":
            continue
        prof = classify_corners(comp.ladder, t)
        rank += prof.h + prof.k_star + 1
        for i, s in enumerate(prof.outside_lower, start=1):
            basis.append(BasisLabel(idx, "q", i, s))
        for j, (corner, ty) in enumerate(zip(prof.inside_upper, prof.upper_types), start=1):
            if ty == "type1":
                basis.append(BasisLabel(idx, "p", j, corner))
    return ClassGroupReport(rank, basis, coeff)


@dataclass
class CanonicalClass:
    lam: list
    delta: list
    delta_corners: list     # T'_j for each delta entry (type-1 corners only)
    i_index: list           # i_j for each delta entry

    @property
    def is_zero(self):
        return not any(self.lam) and not any(self.delta)

    def to_json(self):
        return {
            "lambda": list(self.lam),
            "delta": list(self.delta),
            "delta_corners": [list(c) for c in self.delta_corners],
            "i_index": list(self.i_index),
        }


def canonical_class(C: Ladder, t: int, formula: str = "induction") -> CanonicalClass:
    """Coordinates of the canonical class in the q/p basis of ``C``.

    With ``formula="induction"`` (default) a corner ``T'_j`` whose index
    ``i_j`` is ``h+1`` gets the offset ``t-2`` instead of ``2(t-2)``: the
    last chain corner of Z moves by one step, not two, so only this value
    is stable under Y -> Z and agrees with Gorenstein tests.
    ``formula="uniform"`` uses ``2(t-2)`` for every ``j``.
    """
    if formula not in ("induction", "uniform"):
        raise ValueError(f"unknown formula {formula!r}")
    if not is_t_connected(C, t):
        raise NotTConnected(f"ladder is not {t}-connected")
    if not assumption_d_component(C, t):
        raise AssumptionDViolated("Assumption (d) fails; decompose the ladder first")
    prof = classify_corners(C, t)
    a, b, h = prof.a, prof.b, prof.h
    s = [a[i] + b[i] for i in range(h + 2)]
    if h == 0:
        lam = [s[1] - s[0]]
    else:
        lam = [s[1] - s[0] + (t - 2)]
        lam += [s[i] - s[i - 1] for i in range(2, h + 1)]
        lam.append(s[h + 1] - s[h] - (t - 2))
    delta, corners, idx = [], [], []
    for (c, d), ty in zip(prof.inside_upper, prof.upper_types):
        if ty != "type1":
            continue
        ij = next((i for i in range(1, h + 2) if a[i] + t - 2 > c), None)
        if ij is None:
            raise NoSuchIndex(f"no i with a_i + t - 2 > {c} for corner {(c, d)}")
        offset = t - 2 if ij == h + 1 and formula == "induction" else 2 * (t - 2)
        delta.append(s[ij] + offset - (c + d))
        corners.append((c, d))
        idx.append(ij)
    return CanonicalClass(lam, delta, corners, idx)


@dataclass
class PieceSummary:
    ident: int
    component: int
    shape: str
    size: int
    gorenstein: bool
    canonical: CanonicalClass

    def to_json(self):
        return {
            "piece": self.ident,
            "component": self.component,
            "shape": self.shape,
            "cells": self.size,
            "gorenstein": self.gorenstein,
            "canonical": self.canonical.to_json(),
        }


def _shape(L: Ladder):
    if L.is_rectangle():
        return f"{L.m}x{L.n} rectangle"
    return f"ladder in {L.m}x{L.n} box"


def piece_summaries(Y: Ladder, t: int):
    dec = decompose(Y, t)
    out = []
    for piece in dec.pieces:
        cc = canonical_class(piece.ladder, t)
        out.append(PieceSummary(piece.ident, piece.component, _shape(piece.ladder),
                                len(piece.ladder.points), cc.is_zero, cc))
    return out


def gorenstein(Y: Ladder, t: int):
    """``(overall, per_piece)``; free components are Gorenstein and add no pieces."""
    pieces = piece_summaries(Y, t)
    return all(p.gorenstein for p in pieces), pieces


@dataclass
class SemidualizingReport:
    pieces: list
    e: int
    count: int
    elements: list     # (label, theta tuple over non-Gorenstein pieces)
    coeff: CoefficientRingDescriptor

    def to_json(self):
        return {
            "pieces": [p.to_json() for p in self.pieces],
            "e": self.e,
            "count": self.count,
            "elements": [{"s0": lab, "theta": list(th)} for lab, th in self.elements],
            "coefficients": self.coeff.to_json(),
        }


def semidualizing(Y: Ladder, t: int, coeff: CoefficientRingDescriptor = FIELD) -> SemidualizingReport:
    pieces = piece_summaries(Y, t)
    e = sum(1 for p in pieces if not p.gorenstein)
    elements = [(lab, th) for lab in coeff.s0_labels for th in product((0, 1), repeat=e)]
    count = len(coeff.s0_labels) * 2 ** e
    assert count == len(elements)
    return SemidualizingReport(pieces, e, count, elements, coeff)


def rank_consistency(profile, t=None) -> bool:
    return profile.h + profile.k_star == profile.h_star + profile.k
