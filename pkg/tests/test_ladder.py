import random

import pytest
from hypothesis import given, settings, strategies as st

from laddertool.errors import (
    ClosureViolation,
    EmptyCol,
    InvalidResidualLadder,
    LadderValidationError,
    NotPathConnected,
    RequiresTGreaterThan2,
)
from laddertool.fixtures import fixture
from laddertool.generate import disjoint_union, random_ladder
from laddertool.ladder import (
    MinorSupport,
    assumption_d,
    border,
    classify_corners,
    construct_Z,
    corner_profile,
    decompose,
    full_ladder,
    is_t_connected,
    ladder_violations,
    minor_supports,
    shifted_chain,
    t_components,
    validate_ladder,
)

from conftest import brute_components, brute_supports, canonical_parts


def test_validate_l1_shape():
    Y = fixture("L1")
    assert (Y.m, Y.n) == (5, 5)
    assert len(Y.points) == 20


def test_closure_violation_lists_missing_points():
    with pytest.raises(LadderValidationError) as err:
        validate_ladder({(1, 1), (2, 2)})
    v = err.value.violations
    assert ClosureViolation((1, 1), (2, 2), [(1, 2), (2, 1)]) in v


def test_empty_column_reported():
    with pytest.raises(LadderValidationError) as err:
        validate_ladder({(1, 1), (1, 3)})
    assert EmptyCol(2) in err.value.violations


def test_validate_normalizes_and_rejects_nonpositive():
    Y = validate_ladder({(3, 4), (3, 5)})
    assert Y.points == {(1, 1), (1, 2)}
    with pytest.raises(LadderValidationError):
        validate_ladder({(0, 1)})


def test_borders_of_l1():
    Y = fixture("L1")
    assert border(Y, "lower", 1).points == {
        (1, 3), (1, 4), (1, 5), (2, 3), (3, 1), (3, 2), (3, 3), (4, 1), (5, 1)}
    assert (4, 4) in border(Y, "upper", 1)


@pytest.mark.parametrize("m,n,s", [(4, 5, 1), (5, 5, 2), (6, 3, 3)])
def test_border_of_rectangle(m, n, s):
    B = border(full_ladder(m, n), "lower", s).points
    assert B == {(p, q) for p in range(1, m + 1) for q in range(1, n + 1) if p <= s or q <= s}


def test_l1_profile():
    prof = corner_profile(fixture("L1"))
    assert prof.lower_chain == ((1, 5), (3, 3), (5, 1))
    assert prof.inside_lower == ((3, 3),)
    assert prof.inside_upper == ((4, 4),)
    assert prof.outside_lower == ((1, 3), (3, 1))


def test_rectangle_profile():
    prof = corner_profile(full_ladder(3, 7))
    assert prof.lower_chain == ((1, 7), (3, 1))
    assert prof.h == prof.k == 0


def test_profile_needs_path_connected():
    Y = validate_ladder({(1, 2), (2, 1)})
    with pytest.raises(NotPathConnected):
        corner_profile(Y)


@pytest.mark.parametrize("name,lower,upper,k_star,k_bullet", [
    ("L1", "type1", ("type1", True), 1, 1),
    ("L2", "type2", ("type2", True), 0, 1),
    ("L3", "type1", ("type1", False), 1, 0),
    ("L4", "type2", ("type2", True), 0, 1),
])
def test_corner_types(name, lower, upper, k_star, k_bullet):
    prof = classify_corners(fixture(name), 3)
    assert prof.inside_lower[0] == (3, 3)
    assert prof.lower_types[0] == lower
    assert (prof.upper_types[0], prof.upper_type11[0]) == upper
    assert (prof.k_star, prof.k_bullet) == (k_star, k_bullet)


def test_supports_small_cases():
    assert len(minor_supports(full_ladder(3, 3), 3)) == 1
    assert len(minor_supports(full_ladder(2, 2), 2)) == 1
    for s in minor_supports(fixture("L4"), 3):
        cells = set(s.cells())
        top = {(p, q) for p in range(1, 4) for q in range(3, 6)}
        bottom = {(p, q) for p in range(3, 6) for q in range(1, 4)}
        assert cells <= top or cells <= bottom


def test_supports_match_brute_force(small_ladders):
    for Y in small_ladders:
        for t in (1, 2, 3):
            got = [(s.rows, s.cols) for s in minor_supports(Y, t)]
            assert got == sorted(brute_supports(Y, t))


def test_components_match_brute_force(small_ladders):
    for Y in small_ladders:
        for t in (2, 3):
            got = canonical_parts((c.ladder.points, c.tag == "connected") for c in t_components(Y, t))
            assert got == brute_components(Y, t)


def test_component_examples():
    assert is_t_connected(fixture("L1"), 3)
    two = disjoint_union(full_ladder(3, 3), full_ladder(3, 3))
    comps = t_components(two, 3)
    assert [c.tag for c in comps] == ["connected", "connected"]
    row = full_ladder(1, 5)
    assert [c.tag for c in t_components(row, 2)] == ["free"] * 5


def test_z_of_l1():
    Z = construct_Z(fixture("L1"), 3)
    assert Z.row_spans == {2: (4, 5), 3: (4, 5), 4: (2, 5), 5: (2, 4)}
    assert corner_profile(Z).lower_chain == ((2, 5), (4, 4), (5, 2))


def test_z_needs_t_above_two():
    with pytest.raises(RequiresTGreaterThan2):
        construct_Z(fixture("L1"), 2)


def test_z_of_thin_ladder():
    # removing the staircase can leave a disconnected ladder, or nothing at all
    Y = validate_ladder({(1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2)})
    assert construct_Z(Y, 3).points == {(2, 3), (3, 2)}
    with pytest.raises(InvalidResidualLadder):
        construct_Z(full_ladder(1, 4), 3)


def test_assumption_d_examples():
    assert assumption_d(fixture("L3"), 3)[0]
    holds, bad = assumption_d(fixture("L2"), 3)
    assert not holds and bad == [(0, (3, 3))]
    assert assumption_d(full_ladder(4, 6), 3)[0]


def test_z_chain_is_shifted_for_d_ladders(rng):
    seen = 0
    for _ in range(400):
        Y = random_ladder(rng, connected=True, min_rows=3, min_cols=3)
        if not is_t_connected(Y, 3) or not assumption_d(Y, 3)[0]:
            continue
        seen += 1
        prof = corner_profile(Y)
        assert corner_profile(construct_Z(Y, 3)).lower_chain == shifted_chain(prof)
    assert seen > 0


def _rows_cols(L):
    return (L.row_min, L.row_max, L.col_min, L.col_max, L.is_rectangle())


def test_decomposition_pieces():
    d1 = decompose(fixture("L1"), 3)
    assert sorted(_rows_cols(p.ladder) for p in d1.pieces) == [(1, 4, 3, 5, True), (3, 5, 1, 4, True)]
    assert [sorted(o.cells) for o in d1.overlaps] == [[(3, 3), (3, 4), (4, 3), (4, 4)]]
    d2 = decompose(fixture("L2"), 3)
    assert [sorted(o.cells) for o in d2.overlaps] == [[(3, 3), (3, 4)]]
    d4 = decompose(fixture("L4"), 3)
    assert sorted(_rows_cols(p.ladder) for p in d4.pieces) == [(1, 3, 3, 5, True), (3, 5, 1, 3, True)]
    assert [o.cells for o in d4.overlaps] == [[(3, 3)]]
    d3 = decompose(fixture("L3"), 3)
    assert len(d3.pieces) == 1 and d3.pieces[0].ladder == fixture("L3")


def test_minor_support_str():
    assert str(MinorSupport((1, 2), (3, 4))) == "[1,2|3,4]"


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([2, 3, 4]))
def test_generated_ladders_are_valid(seed, t):
    Y = random_ladder(random.Random(seed))
    assert ladder_violations(Y.points) == []
    decompose(Y, t, check=True)
    for comp in t_components(Y, t):
        if comp.tag == "connected":
            prof = classify_corners(comp.ladder, t)
            assert prof.h + prof.k_star == prof.h_star + prof.k
