"""Seeded random ladders for property sweeps."""

import random

from .ladder import Ladder, is_t_connected, validate_ladder


def random_ladder(rng: random.Random, max_rows: int = 8, max_cols: int = 8,
                  connected: bool = False, min_rows: int = 1, min_cols: int = 1) -> Ladder:
    """A random ladder from a pair of monotone staircases.

    Row ``r`` occupies columns ``lo[r]..hi[r]`` with both sequences weakly
    decreasing; consecutive rows overlap or abut so no column is empty.
    With ``connected`` consecutive rows share at least one column.
    """
    m = rng.randint(min_rows, max_rows)
    n = rng.randint(min_cols, max_cols)
    while True:
        # min/max of two draws widens the rows, so t-minors are common
        lo = sorted((min(rng.randint(1, n), rng.randint(1, n)) for _ in range(m)), reverse=True)
        hi = sorted((max(rng.randint(1, n), rng.randint(1, n)) for _ in range(m)), reverse=True)
        lo[-1] = 1
        hi[0] = n
        if any(lo[r] > hi[r] for r in range(m)):
            continue
        gap = 0 if connected else 1
        if any(lo[r] > hi[r + 1] + gap for r in range(m - 1)):
            continue
        break
    pts = [(r + 1, c) for r in range(m) for c in range(lo[r], hi[r] + 1)]
    return validate_ladder(pts)


def random_t_connected_ladder(rng: random.Random, t: int, max_rows: int = 8,
                              max_cols: int = 8, tries: int = 10000) -> Ladder:
    """Rejection-sample a t-connected ladder."""
    for _ in range(tries):
        Y = random_ladder(rng, max_rows, max_cols, connected=True, min_rows=t, min_cols=t)
        if is_t_connected(Y, t):
            return Y
    raise RuntimeError(f"no {t}-connected ladder after {tries} tries")


def disjoint_union(Y1: Ladder, Y2: Ladder) -> Ladder:
    """Place ``Y1`` to the north-east of ``Y2``; no minor straddles the two."""
    m1 = Y1.m
    n2 = Y2.n
    pts = [(p - Y1.row_min + 1, q - Y1.col_min + 1 + n2) for p, q in Y1.points]
    pts += [(p - Y2.row_min + 1 + m1, q - Y2.col_min + 1) for p, q in Y2.points]
    return validate_ladder(pts)


def ladder_stream(seed: int, count: int, **kw):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_ladder(rng, **kw)
