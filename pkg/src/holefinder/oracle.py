"""Brute-force reference implementations used as ground truth in tests.

Each oracle enumerates subsets outright; a call on an instance above its
documented size budget raises instead of returning a partial answer, so a
test can never silently trust a truncated scan.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .convexity import (
    convex_hull,
    in_closed_hull,
    is_convex_position,
    is_strictly_convex_position,
)
from .geometry import GeometryError, Point, canonical, validate_points
from .holes import HoleCertificate, is_hole


@dataclass(frozen=True)
class OracleBudget:
    """Maximum input sizes for which each exhaustive scan is allowed to run."""

    holes_small: int = 30  # k <= 5
    holes_large: int = 20  # k in {6, 7}
    convex_subsets: int = 12
    k_minimality: int = 14


DEFAULT_BUDGET = OracleBudget()


class OracleBudgetError(GeometryError):
    """The instance exceeds the oracle's complete-search budget."""


def _check_budget(size: int, limit: int, task: str) -> None:
    if size > limit:
        raise OracleBudgetError(
            f"{task}: {size} points exceed the complete-search budget of {limit}"
        )


def oracle_k_hole(
    points: Sequence[Point], k: int, budget: OracleBudget = DEFAULT_BUDGET
) -> Optional[HoleCertificate]:
    """A k-hole found by scanning every k-subset, or None if none exists."""
    pts = canonical(validate_points(points))
    if k < 3:
        raise GeometryError("oracle_k_hole needs k >= 3")
    limit = budget.holes_small if k <= 5 else budget.holes_large
    _check_budget(len(pts), limit, "oracle_k_hole")
    for subset in combinations(pts, k):
        if is_hole(pts, subset):
            return HoleCertificate.build(pts, subset)
    return None


def oracle_max_convex_subset(
    points: Sequence[Point], strict: bool, budget: OracleBudget = DEFAULT_BUDGET
) -> int:
    """Exact size of the largest (strictly) convex-position subset."""
    pts = canonical(validate_points(points))
    _check_budget(len(pts), budget.convex_subsets, "oracle_max_convex_subset")
    check = is_strictly_convex_position if strict else is_convex_position
    best = min(len(pts), 2)
    # Both position properties are hereditary, so the sizes admitting a
    # witness form a prefix: scan upward and stop at the first empty size.
    for size in range(3, len(pts) + 1):
        if any(check(list(subset)) for subset in combinations(pts, size)):
            best = size
        else:
            break
    return best


def oracle_k_minimality(
    points: Sequence[Point],
    x: Sequence[Point],
    k: int,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> bool:
    """True iff no >= k-subset in convex position has a hull strictly inside
    conv(x)."""
    pts = canonical(validate_points(points))
    xs = canonical(validate_points(x))
    _check_budget(len(pts), budget.k_minimality, "oracle_k_minimality")
    if not set(xs) <= set(pts):
        raise GeometryError("x must be a subset of the points")
    if len(xs) < k or not is_convex_position(xs):
        raise GeometryError("x is not a >= k-point convex-position subset")
    hull = convex_hull(xs)
    inside = [p for p in pts if in_closed_hull(p, hull)]
    # Any candidate drawn from inside conv(x) has its hull contained in
    # conv(x); the containment is proper iff some corner of x escapes it.
    for size in range(k, len(inside) + 1):
        for subset in combinations(inside, size):
            if not is_convex_position(list(subset)):
                continue
            cand = convex_hull(list(subset))
            if not all(in_closed_hull(p, cand) for p in hull.corners):
                return False
    return True
