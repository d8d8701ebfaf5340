import random
from itertools import combinations

import pytest

from laddertool.generate import random_ladder


def brute_supports(Y, t):
    """All t x t row/col choices whose cells lie in Y."""
    rows = sorted({p for p, _ in Y.points})
    cols = sorted({q for _, q in Y.points})
    out = []
    for rs in combinations(rows, t):
        for cs in combinations(cols, t):
            if all((r, c) in Y.points for r in rs for c in cs):
                out.append((rs, cs))
    return out


def brute_components(Y, t):
    """Partition of Y: cells sharing a t-minor are joined; the rest are free."""
    parent = {p: p for p in Y.points}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    covered = set()
    for rs, cs in brute_supports(Y, t):
        cells = [(r, c) for r in rs for c in cs]
        covered.update(cells)
        for x in cells[1:]:
            parent[find(x)] = find(cells[0])
    groups = {}
    for p in Y.points:
        groups.setdefault(find(p), set()).add(p)
    return canonical_parts((frozenset(g), bool(g & covered)) for g in groups.values())


def canonical_parts(parts):
    return sorted(parts, key=lambda x: (sorted(x[0]), x[1]))


@pytest.fixture
def rng():
    return random.Random(20190807)


@pytest.fixture
def small_ladders():
    r = random.Random(7)
    return [random_ladder(r, 6, 6) for _ in range(120)]


# acceptance criteria report their verdicts here; printed at the end of the run
CRITERIA = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
