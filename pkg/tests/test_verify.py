import pytest

from laddertool.fixtures import fixture
from laddertool.ladder import full_ladder
from laddertool.verify import (
    VerificationReport,
    property_sweep,
    run_fixture_suite,
    verify_correspondence,
    verify_decomposition,
    verify_inverse,
)


def test_fixture_suite_passes():
    reports = run_fixture_suite(seed=0, caps={"sweep": 60})
    assert [r for r in reports if not r.ok] == []
    checks = {r.check for r in reports}
    assert {"inverse", "correspondence", "decomposition", "property_sweep",
            "determinant_oracle", "gorenstein_rectangles", "fixture_facts"} <= checks


def test_correspondence_on_l1_assumed_and_computed():
    for mode in ("assumed_gb", "buchberger"):
        rep = verify_correspondence(fixture("L1"), 3, mode, "L1")
        assert rep.verdict == "pass", rep.witness


def test_dropping_a_minor_is_caught():
    rep = verify_correspondence(fixture("L1"), 3, "buchberger", drop_z_minor=0)
    assert rep.verdict == "fail"
    assert rep.witness


def test_zero_pair_cap_is_inconclusive():
    # with no pairs processed the basis is never certified complete
    rep = verify_correspondence(fixture("L1"), 3, "buchberger", max_pairs=0)
    assert rep.verdict == "inconclusive"


def test_cell_cap_is_inconclusive():
    rep = verify_correspondence(full_ladder(6, 6), 3, "buchberger", max_cells=25)
    assert rep.verdict == "inconclusive"


def test_inverse_and_decomposition_reports():
    assert verify_inverse(fixture("L2"), 3).ok
    assert verify_decomposition(fixture("L4"), 3).details["overlap_cells"] == [1]


def test_failing_report_requires_witness():
    with pytest.raises(ValueError):
        VerificationReport("x", "y", "fail")


def test_sweep_is_deterministic():
    a = property_sweep(11, 40)
    b = property_sweep(11, 40)
    assert a.ok and b.ok
    assert a.details == b.details


def test_errors_become_failures_with_witness():
    from laddertool.generate import disjoint_union
    two = disjoint_union(full_ladder(3, 3), full_ladder(3, 3))
    rep = verify_inverse(two, 3)
    assert rep.verdict == "fail" and "NotTConnected" in rep.witness
