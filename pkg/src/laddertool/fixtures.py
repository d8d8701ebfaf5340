"""Bundled ladders: the four running-example ladders and full rectangles."""

import re

from .ladder import Ladder, full_ladder, ladder_from_rows

_ROWS = {
    "L1": {1: (3, 5), 2: (3, 5), 3: (1, 5), 4: (1, 5), 5: (1, 4)},
    "L2": {1: (3, 5), 2: (3, 5), 3: (1, 5), 4: (1, 4), 5: (1, 4)},
    "L3": {1: (3, 5), 2: (3, 5), 3: (1, 5), 4: (1, 5), 5: (1, 5), 6: (1, 4)},
    "L4": {1: (3, 5), 2: (3, 5), 3: (1, 5), 4: (1, 3), 5: (1, 3)},
}

NAMES = tuple(_ROWS)

_FULL = re.compile(r"^full:(\d+)x(\d+)$")


def fixture(name: str) -> Ladder:
    """Look up ``L1``..``L4`` or ``full:MxN``."""
    if name in _ROWS:
        return ladder_from_rows(_ROWS[name])
    m = _FULL.match(name)
    if m:
        rows, cols = int(m.group(1)), int(m.group(2))
        if rows < 1 or cols < 1:
            raise ValueError(f"bad fixture {name!r}")
        return full_ladder(rows, cols)
    raise KeyError(f"unknown fixture {name!r}; expected one of {', '.join(NAMES)} or full:MxN")
