"""The substitution maps psi and chi on the localization at the corner variables.

Elements live in ``k[Y]`` localized at the product of the outside lower
corner variables, stored as a numerator over a monomial in those variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import CapExceeded, LadderError, NotTConnected, RequiresTGreaterThan2
from .ladder import Ladder, border, corner_profile, is_t_connected
from .poly import Poly, PolyRing

DEFAULT_CELL_CAP = 400


def _den_key(den):
    return tuple(sorted((p, k) for p, k in den.items() if k))


@dataclass(frozen=True, eq=False)
class LocalizedElement:
    """``numerator / prod X_S^k`` with ``denominator`` mapping S -> k."""

    numerator: Poly
    denominator: tuple = ()   # sorted ((point, k), ...)

    @staticmethod
    def make(numerator: Poly, denominator=None):
        den = dict(denominator or {})
        num = numerator
        if num.is_zero():
            return LocalizedElement(num, ())
        for pt, k in list(den.items()):
            cancel = min(k, num.var_valuation(pt))
            if cancel:
                num = num.divide_by_var(pt, cancel)
                den[pt] = k - cancel
        return LocalizedElement(num, _den_key(den))

    @staticmethod
    def of(P: Poly):
        return LocalizedElement(P, ())

    @property
    def ring(self):
        return self.numerator.ring

    def den_dict(self):
        return dict(self.denominator)

    def den_poly(self):
        return self.ring.monomial(self.den_dict()) if self.denominator else self.ring.one()

    def _lift(self, target):
        """Numerator rewritten over the larger denominator ``target``."""
        extra = {p: k - dict(self.denominator).get(p, 0) for p, k in target.items()}
        extra = {p: k for p, k in extra.items() if k}
        if not extra:
            return self.numerator
        return self.numerator * self.ring.monomial(extra)

    def __add__(self, other):
        other = _as_local(other, self.ring)
        d1, d2 = self.den_dict(), other.den_dict()
        common = {p: max(d1.get(p, 0), d2.get(p, 0)) for p in set(d1) | set(d2)}
        return LocalizedElement.make(self._lift(common) + other._lift(common), common)

    __radd__ = __add__

    def __neg__(self):
        return LocalizedElement(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-_as_local(other, self.ring))

    def __mul__(self, other):
        other = _as_local(other, self.ring)
        d = self.den_dict()
        for p, k in other.denominator:
            d[p] = d.get(p, 0) + k
        return LocalizedElement.make(self.numerator * other.numerator, d)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LocalizedElement):
            if isinstance(other, Poly):
                other = LocalizedElement.of(other)
            else:
                return NotImplemented
        # both sides are normalized, so the representation is unique
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def is_polynomial(self):
        return not self.denominator

    def __str__(self):
        if not self.denominator:
            return str(self.numerator)
        den = "*".join(f"X{p}{q}" + (f"^{k}" if k > 1 else "") for (p, q), k in self.denominator)
        return f"({self.numerator})/({den})"

    def terms_as_fractions(self):
        """Split into ``{(num_exp, den_key): coeff}`` with each term reduced.

        This is the canonical sum-of-monomial-fractions form used for
        comparing against expressions written out by hand.
        """
        R = self.ring
        out = {}
        den = self.den_dict()
        for e, c in self.numerator.terms.items():
            powers = R.powers_of(e)
            d = dict(den)
            for p in list(d):
                cancel = min(d[p], powers.get(p, 0))
                if cancel:
                    powers[p] -= cancel
                    d[p] -= cancel
            out[(R.exp_of({p: k for p, k in powers.items() if k}), _den_key(d))] = c
        return out


def _as_local(x, ring):
    if isinstance(x, LocalizedElement):
        return x
    if isinstance(x, Poly):
        return LocalizedElement.of(x)
    return LocalizedElement.of(ring.const(x))


class CornerSubstitution:
    """psi (sign=+1) or chi (sign=-1) for a fixed ladder."""

    def __init__(self, Y: Ladder, t: int, sign: int = 1, ring: Optional[PolyRing] = None,
                 cell_cap: int = DEFAULT_CELL_CAP, check_connected: bool = True):
        if t <= 2:
            raise RequiresTGreaterThan2("psi and chi need t > 2")
        if cell_cap is not None and len(Y.points) > cell_cap:
            raise CapExceeded(f"ladder has {len(Y.points)} cells, cap is {cell_cap}", len(Y.points))
        if check_connected and not is_t_connected(Y, t):
            raise NotTConnected(f"ladder is not {t}-connected")
        self.Y = Y
        self.t = t
        self.sign = sign
        self.ring = ring if ring is not None else PolyRing(Y.points)
        prof = corner_profile(Y)
        self.a = prof.a
        self.b = prof.b
        self.h = prof.h
        self.S = list(prof.outside_lower)
        self.B1 = border(Y, "lower", 1).points
        self._images = {}
        self._powers = {}

    def U(self, i, j):
        return [w for w in range(1, self.h + 2) if i > self.a[w - 1] and j > self.b[w]]

    def _var(self, pt):
        if pt not in self.Y.points:
            raise LadderError(f"substitution needs {pt}, which is not in the ladder")
        return self.ring.var(pt)

    def chain_sum(self, i, j):
        """Sum over increasing chains in U(i, j)."""
        R = self.ring
        a, b = self.a, self.b
        U = self.U(i, j)
        total = LocalizedElement.of(R.var((i, j)))
        for r in range(1, len(U) + 1):
            for chain in combinations(U, r):
                num = self._var((a[chain[0] - 1], j))
                for prev, nxt in zip(chain, chain[1:]):
                    num = num * self._var((a[nxt - 1], b[prev]))
                num = num * self._var((i, b[chain[-1]]))
                den = {}
                for w in chain:
                    s = self.S[w - 1]
                    den[s] = den.get(s, 0) + 1
                term = LocalizedElement.make(num if self.sign ** r > 0 else -num, den)
                total = total + term
        return total

    def recursive(self, i, j, _memo=None):
        """X_ij + sign * sum_w X_{i,b_w} / X_{S_w} * image(X_{a_{w-1}, j})."""
        memo = {} if _memo is None else _memo
        if (i, j) in memo:
            return memo[(i, j)]
        val = LocalizedElement.of(self.ring.var((i, j)))
        for w in self.U(i, j):
            inner = self.recursive(self.a[w - 1], j, memo)
            coef = LocalizedElement.make(self._var((i, self.b[w])), {self.S[w - 1]: 1})
            step = coef * inner
            val = val + step if self.sign > 0 else val - step
        memo[(i, j)] = val
        return val

    def image_of_var(self, pt) -> LocalizedElement:
        if pt in self._images:
            return self._images[pt]
        if pt not in self.Y.points:
            raise LadderError(f"{pt} is not a point of the ladder")
        if pt in self.B1:
            img = LocalizedElement.of(self.ring.var(pt))
        else:
            img = self.chain_sum(*pt)
            rec = self.recursive(*pt)
            if img != rec:
                raise ArithmeticError(f"chain sum and recursion disagree at {pt}")
        self._images[pt] = img
        return img

    def _power(self, pt, k):
        key = (pt, k)
        if key not in self._powers:
            if k == 1:
                self._powers[key] = self.image_of_var(pt)
            else:
                self._powers[key] = self._power(pt, k - 1) * self.image_of_var(pt)
        return self._powers[key]

    def apply_poly(self, P: Poly) -> LocalizedElement:
        R = self.ring
        if P.ring != R:
            P = Poly(R, dict(P.terms)) if P.ring.variables == R.variables else _rebase(P, R)
        parts = []
        for e, c in P.terms.items():
            term = LocalizedElement.of(R.const(c))
            for pt, k in R.powers_of(e).items():
                term = term * self._power(pt, k)
            parts.append(term)
        if not parts:
            return LocalizedElement.of(R.zero())
        # one common denominator keeps the final normalization to a single pass
        common = {}
        for p in parts:
            for pt, k in p.denominator:
                common[pt] = max(common.get(pt, 0), k)
        num = R.zero()
        for p in parts:
            num = num + p._lift(common)
        return LocalizedElement.make(num, common)

    def __call__(self, target):
        if isinstance(target, LocalizedElement):
            for pt, _ in target.denominator:
                if self.image_of_var(pt) != LocalizedElement.of(self.ring.var(pt)):
                    raise LadderError(f"denominator variable {pt} is not fixed by the map")
            num = self.apply_poly(target.numerator)
            return LocalizedElement.make(num.numerator, _merge(num.den_dict(), target.den_dict()))
        if isinstance(target, tuple):
            return self.image_of_var(target)
        if isinstance(target, Poly):
            return self.apply_poly(target)
        raise TypeError(f"cannot apply map to {type(target).__name__}")


def _merge(d1, d2):
    out = dict(d1)
    for p, k in d2.items():
        out[p] = out.get(p, 0) + k
    return out


def _rebase(P, R):
    out = R.zero()
    for e, c in P.terms.items():
        out = out + R.monomial(P.ring.powers_of(e), c)
    return out


def psi_map(Y, t, ring=None, **kw):
    return CornerSubstitution(Y, t, +1, ring, **kw)


def chi_map(Y, t, ring=None, **kw):
    return CornerSubstitution(Y, t, -1, ring, **kw)


def psi_apply(Y, t, target, ring=None, **kw) -> LocalizedElement:
    """psi of a point ``(i, j)``, a Poly, or a LocalizedElement."""
    return psi_map(Y, t, ring, **kw)(target)


def chi_apply(Y, t, target, ring=None, **kw) -> LocalizedElement:
    return chi_map(Y, t, ring, **kw)(target)
