import pytest

from holefinder.convexity import (
    is_convex_position,
    max_strictly_convex_subset,
    q_formula,
)
from holefinder.generators import (
    collinear_plus_one,
    eppstein_family,
    every_second_side,
    grid,
    grid_has_no_five_hole,
    horton,
    random_bounded_collinear,
    random_convex_position,
    random_general_position,
)
from holefinder.geometry import GeometryError, is_general_position, max_collinear
from holefinder.holes import classify_no_four_hole, find_k_hole
from holefinder.oracle import OracleBudget, oracle_max_convex_subset


def test_every_second_side_sizes():
    assert len(every_second_side(5, 3)) == 4  # q(5,3) - 1
    assert len(every_second_side(9, 6)) == 20  # q(9,6) - 1
    assert len(every_second_side(8, 6)) == 16  # q(8,6) - 1


@pytest.mark.parametrize("k,ell", [(5, 3), (6, 4), (7, 4), (8, 6), (9, 6)])
def test_every_second_side_is_extremal(k, ell):
    pts = every_second_side(k, ell)
    assert len(pts) == q_formula(k, ell) - 1
    assert is_convex_position(pts)
    assert max_collinear(pts)[0] == ell - 1  # ell collinear never occurs
    # No k points in strictly convex position either.
    assert len(max_strictly_convex_subset(pts)) == k - 1


def test_every_second_side_small_k():
    assert every_second_side(3, 5) == [(0, 0), (1, 0), (2, 0), (3, 0)]
    assert len(every_second_side(4, 5)) == 5  # q(4,5) - 1
    with pytest.raises(GeometryError):
        every_second_side(2, 3)
    with pytest.raises(GeometryError):
        every_second_side(5, 2)


def test_grid():
    pts = grid(3)
    assert len(pts) == 9
    assert max_collinear(pts)[0] == 3
    with pytest.raises(GeometryError):
        grid(1)


def test_grid_has_no_five_hole_small():
    assert grid_has_no_five_hole(3)


def test_horton_structure():
    pts = horton(16)
    assert len(pts) == 16
    assert is_general_position(pts)
    with pytest.raises(GeometryError):
        horton(12)


def test_horton_small_set_avoids_7_holes():
    pts = horton(8)
    assert find_k_hole(pts, 7) is None
    assert find_k_hole(pts, 3) is not None


def test_collinear_plus_one():
    pts = collinear_plus_one(5)
    assert len(pts) == 5
    assert max_collinear(pts)[0] == 4


@pytest.mark.parametrize(
    "tag,expected",
    [
        ("a", "all-but-one-collinear"),
        ("b", "all-but-one-collinear"),
        ("c", "two-apex-line"),
        ("d", "two-apex-line"),
        ("e", "six-point-exceptional"),
    ],
)
def test_eppstein_family_classification(tag, expected):
    pts = eppstein_family(tag)
    assert find_k_hole(pts, 4) is None
    assert classify_no_four_hole(pts).tag == expected


def test_eppstein_family_rejects_unknown_tag():
    with pytest.raises(GeometryError):
        eppstein_family("z")


def test_random_bounded_collinear_is_deterministic_and_bounded():
    a = random_bounded_collinear(12, 4, seed=7)
    b = random_bounded_collinear(12, 4, seed=7)
    assert a == b
    assert len(a) == 12
    assert max_collinear(a)[0] < 4
    assert random_bounded_collinear(12, 4, seed=8) != a


def test_random_general_position():
    pts = random_general_position(10, seed=3)
    assert len(pts) == 10
    assert is_general_position(pts)


def test_random_convex_position():
    pts = random_convex_position(9, 4, seed=5)
    assert len(pts) == 9
    assert is_convex_position(pts)
    assert max_collinear(pts)[0] < 4


def test_extremal_set_cross_checked_against_oracle():
    pts = every_second_side(5, 3)
    budget = OracleBudget(convex_subsets=len(pts))
    assert oracle_max_convex_subset(pts, strict=True, budget=budget) == 4
