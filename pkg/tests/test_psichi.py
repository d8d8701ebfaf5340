import pytest

from laddertool.errors import NotTConnected, RequiresTGreaterThan2
from laddertool.fixtures import fixture
from laddertool.generate import disjoint_union, random_t_connected_ladder
from laddertool.ladder import border, full_ladder
from laddertool.poly import PolyRing
from laddertool.psichi import LocalizedElement, chi_apply, chi_map, psi_apply, psi_map


def frac(R, num, den=None):
    return LocalizedElement.make(num, den)


def test_psi_of_x24_on_l3():
    Y = fixture("L3")
    R = PolyRing(Y.points)
    x = R.var
    expected = LocalizedElement.of(x((2, 4))) + frac(R, x((1, 4)) * x((2, 3)), {(1, 3): 1})
    assert psi_apply(Y, 3, (2, 4), ring=R) == expected


def test_psi_of_x45_on_l3():
    Y = fixture("L3")
    R = PolyRing(Y.points)
    x = R.var
    expected = (LocalizedElement.of(x((4, 5)))
                + frac(R, x((1, 5)) * x((4, 3)), {(1, 3): 1})
                + frac(R, x((3, 5)) * x((4, 1)), {(3, 1): 1})
                + frac(R, x((1, 5)) * x((3, 3)) * x((4, 1)), {(1, 3): 1, (3, 1): 1}))
    got = psi_apply(Y, 3, (4, 5), ring=R)
    assert got == expected
    assert got.denominator == (((1, 3), 1), ((3, 1), 1))
    assert len(got.terms_as_fractions()) == 4


def test_chi_undoes_psi_on_x24():
    Y = fixture("L3")
    R = PolyRing(Y.points)
    assert chi_apply(Y, 3, psi_apply(Y, 3, (2, 4), ring=R), ring=R) == LocalizedElement.of(R.var((2, 4)))


@pytest.mark.parametrize("name", ["L1", "L2", "L3", "L4"])
def test_border_points_are_fixed(name):
    Y = fixture(name)
    R = PolyRing(Y.points)
    psi, chi = psi_map(Y, 3, R), chi_map(Y, 3, R)
    for pt in border(Y, "lower", 1).points:
        assert psi(pt) == LocalizedElement.of(R.var(pt))
        assert chi(pt) == LocalizedElement.of(R.var(pt))


def _inverse_everywhere(Y, t=3):
    R = PolyRing(Y.points)
    psi, chi = psi_map(Y, t, R), chi_map(Y, t, R)
    for pt in sorted(Y.points):
        v = LocalizedElement.of(R.var(pt))
        assert chi(psi(pt)) == v, pt
        assert psi(chi(pt)) == v, pt


@pytest.mark.parametrize("name", ["L1", "L2", "L3", "L4", "full:4x4"])
def test_inverse_law_on_fixtures(name):
    _inverse_everywhere(fixture(name))


def test_inverse_law_on_l1_covers_every_cell():
    assert len(fixture("L1").points) == 20
    _inverse_everywhere(fixture("L1"))


def test_inverse_law_on_random_ladders(rng):
    for _ in range(15):
        _inverse_everywhere(random_t_connected_ladder(rng, 3))


def test_psi_is_multiplicative_and_additive(rng):
    Y = fixture("L1")
    R = PolyRing(Y.points)
    psi = psi_map(Y, 3, R)
    pts = sorted(Y.points)
    for _ in range(20):
        a = R.var(rng.choice(pts)) * rng.randint(-3, 3) + R.var(rng.choice(pts))
        b = R.var(rng.choice(pts)) * R.var(rng.choice(pts)) - rng.randint(1, 4)
        assert psi(a * b) == psi(a) * psi(b)
        assert psi(a + b) == psi(a) + psi(b)


def test_localized_normalization_is_unique():
    R = PolyRing([(1, 1), (1, 2)])
    x, y = R.var((1, 1)), R.var((1, 2))
    assert LocalizedElement.make(x * y, {(1, 1): 1}) == LocalizedElement.of(y)
    assert LocalizedElement.make(x * x, {(1, 1): 3}).denominator == (((1, 1), 1),)
    assert str(LocalizedElement.make(y, {(1, 1): 2})) == "(X12)/(X11^2)"


def test_errors():
    with pytest.raises(RequiresTGreaterThan2):
        psi_map(fixture("L1"), 2)
    two = disjoint_union(full_ladder(3, 3), full_ladder(3, 3))
    with pytest.raises(NotTConnected):
        psi_map(two, 3)
