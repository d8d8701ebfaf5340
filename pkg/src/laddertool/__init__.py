"""Combinatorics and symbolic checks for ladder determinantal rings."""

__version__ = "0.1.0"

from .errors import LadderError  # noqa: E402
from .fixtures import fixture  # noqa: E402
from .ladder import (  # noqa: E402
    Ladder,
    classify_corners,
    construct_Z,
    corner_profile,
    decompose,
    full_ladder,
    ladder_from_rows,
    t_components,
    validate_ladder,
)

__all__ = [
    "Ladder",
    "LadderError",
    "classify_corners",
    "construct_Z",
    "corner_profile",
    "decompose",
    "fixture",
    "full_ladder",
    "ladder_from_rows",
    "t_components",
    "validate_ladder",
]
