"""Sparse multivariate polynomials with exact coefficients.

A ``PolyRing`` fixes an ordered tuple of variables (grid points, row-major)
and a coefficient field.  Monomials are dense exponent tuples, so the
row-major lexicographic order -- under which every minor's leading term is
its main-diagonal product -- is plain tuple comparison.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

DEFAULT_PRIME = (1 << 61) - 1  # Mersenne prime, fits in 62 bits


class RationalField:
    name = "QQ"
    characteristic = 0

    def reduce(self, c):
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        return c

    def convert(self, c):
        if isinstance(c, (int, Fraction)):
            return self.reduce(c)
        raise TypeError(f"cannot convert {c!r} to QQ")

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in QQ")
        if isinstance(a, int) and isinstance(b, int) and a % b == 0:
            return a // b
        return self.reduce(Fraction(a) / b)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    characteristic: int

    def __init__(self, p=DEFAULT_PRIME):
        if p < 3 or p % 2 == 0:
            raise ValueError("prime field needs an odd prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def reduce(self, c):
        return c % self.p

    def convert(self, c):
        if isinstance(c, Fraction):
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        return int(c) % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return a * pow(b, -1, self.p) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()


def lex_key(e):
    return e


def deglex_key(e):
    return (sum(e), e)


ORDERS = {"lex": lex_key, "deglex": deglex_key}


class PolyRing:
    def __init__(self, variables, field=QQ):
        self.variables = tuple(sorted(variables))
        self.index = {v: i for i, v in enumerate(self.variables)}
        self.nvars = len(self.variables)
        self.field = field
        self.zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.variables == other.variables
                and self.field == other.field)

    def __hash__(self):
        return hash((self.variables, self.field))

    def __repr__(self):
        return f"PolyRing({len(self.variables)} vars over {self.field!r})"

    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {self.zero_exp: 1})

    def const(self, c):
        c = self.field.convert(c)
        return Poly(self, {self.zero_exp: c} if c else {})

    def var(self, point):
        e = [0] * self.nvars
        e[self.index[point]] = 1
        return Poly(self, {tuple(e): 1})

    def monomial(self, powers, coeff=1):
        """``powers`` maps point -> exponent."""
        e = [0] * self.nvars
        for v, k in powers.items():
            e[self.index[v]] += k
        return Poly(self, {tuple(e): self.field.convert(coeff)})

    def exp_of(self, powers):
        e = [0] * self.nvars
        for v, k in powers.items():
            e[self.index[v]] += k
        return tuple(e)

    def powers_of(self, e):
        return {self.variables[i]: k for i, k in enumerate(e) if k}


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms):
        self.ring = ring
        self.terms = terms

    # --- construction helpers
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def copy(self):
        return Poly(self.ring, dict(self.terms))

    # --- arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        red = self.ring.field.reduce
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = red(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        red = self.ring.field.reduce
        return Poly(self.ring, {e: red(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring.field.convert(other)
            if not c:
                return self.ring.zero()
            red = self.ring.field.reduce
            return Poly(self.ring, {e: red(v * c) for e, v in self.terms.items()})
        other = self._coerce(other)
        red = self.ring.field.reduce
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.ring, {e: v for e, v in ((e, red(v)) for e, v in out.items()) if v})

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, exp, coeff):
        red = self.ring.field.reduce
        return Poly(self.ring, {_add_exp(e, exp): red(c * coeff) for e, c in self.terms.items()})

    # --- comparison and queries
    def __eq__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                other = self.ring.const(other)
            else:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def leading_exp(self, order="lex"):
        return max(self.terms, key=ORDERS[order])

    def leading_term(self, order="lex"):
        e = self.leading_exp(order)
        return e, self.terms[e]

    def support_vars(self):
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return {self.ring.variables[i] for i in used}

    def divisible_by_var(self, point):
        i = self.ring.index[point]
        return all(e[i] > 0 for e in self.terms)

    def divide_by_var(self, point, times=1):
        i = self.ring.index[point]
        out = {}
        for e, c in self.terms.items():
            if e[i] < times:
                raise ArithmeticError(f"not divisible by {point}^{times}")
            e2 = list(e)
            e2[i] -= times
            out[tuple(e2)] = c
        return Poly(self.ring, out)

    def var_valuation(self, point):
        """Largest k with var^k dividing self (inf-like large int for zero)."""
        if not self.terms:
            return 1 << 30
        i = self.ring.index[point]
        return min(e[i] for e in self.terms)

    def evaluate(self, values):
        """``values`` maps point -> field element; missing points count as 0."""
        F = self.ring.field
        total = 0
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    term = term * values.get(self.ring.variables[i], 0) ** k
            total = total + term
        return F.reduce(total)

    def map_coefficients(self, ring):
        conv = ring.field.convert
        return Poly(ring, {e: v for e, v in ((e, conv(c)) for e, c in self.terms.items()) if v})

    def sorted_terms(self, order="lex"):
        key = ORDERS[order]
        return sorted(self.terms.items(), key=lambda ec: key(ec[0]), reverse=True)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"X{p}{q}" + (f"^{k}" if k > 1 else "")
                for (p, q), k in ((self.ring.variables[i], k) for i, k in enumerate(e) if k))
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------- determinants

def det_bareiss(matrix, field=QQ):
    """Fraction-free Gaussian elimination over a field's elements.

    Integer and rational matrices stay exact; prime-field entries are
    reduced mod p.  Rows are swapped on zero pivots.
    """
    n = len(matrix)
    if n == 0:
        return 1
    M = [[field.convert(x) for x in row] for row in matrix]
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = field.reduce(M[i][j] * M[k][k] - M[i][k] * M[k][j])
                M[i][j] = field.div(num, prev)
        prev = M[k][k]
    return field.reduce(sign * M[n - 1][n - 1])


def det_cofactor(matrix, zero=0):
    """Laplace expansion along the first row, memoised on column subsets.

    Works for any ring elements supporting ``+``, ``-`` and ``*``.
    """
    n = len(matrix)
    if n == 0:
        return 1
    memo = {}

    def rec(row, cols):
        if row == n:
            return None
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = zero
        sign = 1
        for idx, c in enumerate(cols):
            entry = matrix[row][c]
            rest = cols[:idx] + cols[idx + 1:]
            sub = rec(row + 1, rest)
            term = entry if sub is None else entry * sub
            acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[key] = acc
        return acc

    return rec(0, tuple(range(n)))


def det_leibniz(matrix, zero=0):
    """Sum over permutations; the slow oracle for small matrices."""
    n = len(matrix)
    total = zero
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = None
        for i, j in enumerate(perm):
            term = matrix[i][j] if term is None else term * matrix[i][j]
        if term is None:
            term = 1
        total = total - term if inv % 2 else total + term
    return total
