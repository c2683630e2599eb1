"""Convex hulls, convex layers, and convex-position subset machinery.

"Convex position" means every point lies on the boundary of the set's convex
hull (collinear boundary points allowed); "strictly convex position" means
every point is a corner.  The distinction drives everything in this module.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

from .geometry import (
    GeometryError,
    Point,
    canonical,
    cross,
    max_collinear,
    on_closed_segment,
    validate_points,
)


@dataclass(frozen=True)
class HullBoundary:
    """Convex hull boundary in clockwise order.

    ``boundary`` includes non-corner collinear boundary points and starts at
    the lexicographically least boundary point; ``corners`` is the clockwise
    subsequence of strict hull vertices.
    """

    boundary: tuple[Point, ...]
    corners: tuple[Point, ...]


def _strict_hull_ccw(pts: list[Point]) -> list[Point]:
    """Strict hull corners, counterclockwise, via the monotone chain."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def convex_hull(points: Sequence[Point]) -> HullBoundary:
    """Hull boundary of the points, clockwise, collinear boundary points kept."""
    pts = validate_points(points)
    if not pts:
        raise GeometryError("convex_hull needs at least one point")
    if len(pts) == 1:
        return HullBoundary((pts[0],), (pts[0],))
    ccw = _strict_hull_ccw(pts)
    if len(ccw) <= 2:
        # All points collinear: boundary is every point along the segment.
        line = canonical(pts)
        return HullBoundary(tuple(line), (line[0], line[-1]))
    cw = list(reversed(ccw))
    boundary: list[Point] = []
    for i, a in enumerate(cw):
        b = cw[(i + 1) % len(cw)]
        edge = [p for p in pts if p not in (a, b) and on_closed_segment(p, a, b)]
        edge.sort(key=lambda p: (p[0] - a[0]) ** 2 + (p[1] - a[1]) ** 2)
        boundary.append(a)
        boundary.extend(edge)
    start = boundary.index(min(boundary))
    boundary = boundary[start:] + boundary[:start]
    corner_set = set(cw)
    corners = tuple(p for p in boundary if p in corner_set)
    return HullBoundary(tuple(boundary), corners)


def is_convex_position(points: Sequence[Point]) -> bool:
    """True iff every point lies on the boundary of the convex hull."""
    pts = validate_points(points)
    return len(convex_hull(pts).boundary) == len(pts)


def is_strictly_convex_position(points: Sequence[Point]) -> bool:
    """True iff every point is a corner of the convex hull."""
    pts = validate_points(points)
    return len(convex_hull(pts).corners) == len(pts)


def hull_twice_area(corners: Sequence[Point]) -> int:
    """Twice the area of a convex polygon given by its boundary corners."""
    n = len(corners)
    acc = 0
    for i in range(n):
        x1, y1 = corners[i]
        x2, y2 = corners[(i + 1) % n]
        acc += x1 * y2 - x2 * y1
    return abs(acc)


def _hull_measure(points: Sequence[Point]) -> tuple[int, int]:
    """(twice area, squared diameter) of the hull; strictly decreasing along
    proper hull inclusions, including the degenerate collinear case."""
    hull = convex_hull(points)
    if len(hull.corners) == 1:
        return 0, 0
    area = hull_twice_area(hull.corners)
    ext = max(
        (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2
        for p in hull.corners
        for q in hull.corners
    )
    return area, ext


def in_closed_hull(p: Point, hull: HullBoundary) -> bool:
    """True iff p lies in the closed region bounded by the hull."""
    corners = hull.corners
    if len(corners) == 1:
        return p == corners[0]
    if len(corners) == 2:
        return p in corners or on_closed_segment(p, corners[0], corners[1])
    for i in range(len(corners)):
        a = corners[i]
        b = corners[(i + 1) % len(corners)]
        if cross(a, b, p) > 0:  # corners are clockwise
            return False
    return True


# ---------------------------------------------------------------------------
# Convex-position subset search


def _angle_sorted(base: Point, cand: list[Point]) -> list[Point]:
    """Candidates (all lexicographically above base) by angle around base,
    ties by increasing distance."""

    def cmp(a: Point, b: Point) -> int:
        c = cross(base, a, b)
        if c > 0:
            return -1
        if c < 0:
            return 1
        da = (a[0] - base[0]) ** 2 + (a[1] - base[1]) ** 2
        db = (b[0] - base[0]) ** 2 + (b[1] - base[1]) ** 2
        return -1 if da < db else (1 if da > db else 0)

    return sorted(cand, key=functools.cmp_to_key(cmp))


def find_convex_position_subset(
    points: Sequence[Point], k: int, strict: bool = False
) -> Optional[list[Point]]:
    """A k-point subset in (strictly) convex position, or None.

    Exhaustive: chains of strict hull corners are grown in angle order around
    each candidate base point, and in the non-strict case collinear points on
    the closed polygon edges count toward the target size.  A None answer is
    therefore a proof of non-existence.
    """
    pts = canonical(validate_points(points))
    if k < 1:
        raise GeometryError("subset size must be positive")
    if k == 1:
        return pts[:1] if pts else None
    if k == 2:
        return pts[:2] if len(pts) >= 2 else None
    if not strict:
        count, witness = max_collinear(pts)
        if count >= k:
            return witness[:k]

    for idx, base in enumerate(pts):
        cand = _angle_sorted(base, pts[idx + 1 :])
        found = _grow_corner_chain(pts, base, cand, k, strict)
        if found is not None:
            if len(found) > k:
                # Any subset of a convex-position set stays in convex position.
                found = found[:k]
            return canonical(found)
    return None


def _grow_corner_chain(
    pts: list[Point], base: Point, cand: list[Point], k: int, strict: bool
) -> Optional[list[Point]]:
    """DFS for a strictly convex corner cycle through base reaching k points.

    In strict mode the cycle itself must have k corners.  In non-strict mode
    points of ``pts`` lying on the closed cycle edges are counted (and
    returned) too, so polygons with collinear boundary runs are found.
    """
    n = len(cand)
    interior_cache: dict[tuple[Point, Point], list[Point]] = {}

    def edge_interior(a: Point, b: Point) -> list[Point]:
        key = (a, b)
        if key not in interior_cache:
            interior_cache[key] = [
                p for p in pts if p not in (a, b) and on_closed_segment(p, a, b)
            ]
        return interior_cache[key]

    def closed_total(chain: list[Point]) -> Optional[list[Point]]:
        """The full point set of the closed polygon, if the closure is valid
        and reaches the target size."""
        if len(chain) < 3:
            return None
        if cross(chain[-2], chain[-1], base) <= 0:
            return None
        if cross(chain[-1], base, chain[1]) <= 0:
            return None
        if strict:
            return chain if len(chain) == k else None
        total = list(chain)
        for a, b in zip(chain, chain[1:] + [base]):
            total.extend(edge_interior(a, b))
        return total if len(total) >= k else None

    def extend(chain: list[Point], start: int) -> Optional[list[Point]]:
        res = closed_total(chain)
        if res is not None:
            return res
        if strict and len(chain) == k:
            return None
        for i in range(start, n):
            p = cand[i]
            if len(chain) >= 2 and cross(chain[-2], chain[-1], p) <= 0:
                continue
            res = extend(chain + [p], i + 1)
            if res is not None:
                return res
        return None

    return extend([base], 0)


def max_convex_position_subset(points: Sequence[Point]) -> list[Point]:
    """Maximum-cardinality subset in (non-strict) convex position."""
    return _max_convex_subset(points, strict=False)


def max_strictly_convex_subset(points: Sequence[Point]) -> list[Point]:
    """Maximum-cardinality subset in strictly convex position."""
    return _max_convex_subset(points, strict=True)


def _max_convex_subset(points: Sequence[Point], strict: bool) -> list[Point]:
    pts = canonical(validate_points(points))
    if len(pts) < 3:
        raise GeometryError("need at least 3 points")
    best: list[Point] = pts[:2]
    if not strict:
        _, witness = max_collinear(pts)
        if len(witness) > len(best):
            best = witness
    # The chain search is cheap when it succeeds; step the target size up.
    for k in range(len(best) + 1, len(pts) + 1):
        found = find_convex_position_subset(pts, k, strict=strict)
        if found is None:
            break
        best = found
    return canonical(best)


# ---------------------------------------------------------------------------
# Bound formulas


def q_formula(k: int, ell: int) -> int:
    """Minimum size forcing, within convex position, ell collinear points or
    k points in strictly convex position."""
    if k < 1 or ell < 1:
        raise GeometryError("q_formula needs k >= 1 and ell >= 1")
    if k <= 2 or ell <= 2:
        return min(k, ell)
    if k == 3:
        return ell
    if ell == 3:
        return k
    if k % 2 == 1:
        return (ell - 1) * (k - 1) // 2 + 1
    return (ell - 1) * (k - 2) // 2 + 2


def es_bound(k: int) -> int:
    """Upper bound on the number of points forcing k in convex position."""
    if k < 3:
        raise GeometryError("es_bound needs k >= 3")
    return comb(2 * k - 5, k - 2) + 1


@dataclass(frozen=True)
class EsKlBound:
    """Upper bound forcing ell collinear or k strictly convex points, with
    the two routes it was derived from."""

    value: int
    via_convex_position: int
    via_general_position: int

    @property
    def winner(self) -> str:
        if self.via_convex_position <= self.via_general_position:
            return "convex-position"
        return "general-position"


def es_kl_bound(k: int, ell: int) -> EsKlBound:
    """Best of the two upper-bound routes for ES(k, ell)."""
    if k < 3 or ell < 3:
        raise GeometryError("es_kl_bound needs k >= 3 and ell >= 3")
    if k % 2 == 1:
        arg = (k - 1) * (ell - 1) // 2 + 1
    else:
        arg = (k - 2) * (ell - 1) // 2 + 2
    via_convex = es_bound(arg)
    es_k = es_bound(k)
    via_genpos = (ell - 3) * comb(es_k - 1, 2) + es_k
    return EsKlBound(min(via_convex, via_genpos), via_convex, via_genpos)


# ---------------------------------------------------------------------------
# Strictly convex subsets inside convex position


def strictly_convex_subset_in_convex_position(
    points: Sequence[Point], k: int, ell: int
) -> list[Point]:
    """k points in strictly convex position from a convex-position set.

    Requires: the input in convex position, fewer than ell collinear points,
    and at least q_formula(k, ell) points.  The construction follows a case
    split on the number of points per hull side and always succeeds under the
    preconditions; the result is re-verified before being returned.
    """
    pts = canonical(validate_points(points))
    if not is_convex_position(pts):
        raise GeometryError("input must be in convex position")
    if max_collinear(pts)[0] >= ell:
        raise GeometryError(f"input has {ell} collinear points")
    if len(pts) < q_formula(k, ell):
        raise GeometryError(
            f"need at least q({k},{ell}) = {q_formula(k, ell)} points, got {len(pts)}"
        )
    result = canonical(_select_strict(pts, k, ell))
    assert len(result) == k and is_strictly_convex_position(result)
    return result


def _sides(pts: list[Point]) -> tuple[list[Point], list[list[Point]]]:
    """Boundary order and the per-side point lists (sides share corners)."""
    hull = convex_hull(pts)
    boundary = list(hull.boundary)
    corners = list(hull.corners)
    m = len(corners)
    sides = []
    for i in range(m):
        a = corners[i]
        b = corners[(i + 1) % m]
        side = [p for p in boundary if on_closed_segment(p, a, b)]
        side.sort(key=lambda p: (p[0] - a[0]) ** 2 + (p[1] - a[1]) ** 2)
        sides.append(side)
    return boundary, sides


def _select_strict(pts: list[Point], k: int, ell: int) -> list[Point]:
    if k <= 2:
        return pts[:k]
    hull = convex_hull(pts)
    if k == 3:
        return list(hull.corners[:3])
    if ell == 3:
        # No three collinear: the whole set is strictly convex.
        return pts[:k]

    boundary, sides = _sides(pts)
    m = len(sides)

    for side in sides:
        if len(side) >= 4:
            rest = [p for p in pts if p not in side]
            inner = _select_strict(rest, k - 2, ell)
            return inner + side[1:3]

    for i, side in enumerate(sides):
        if len(side) == 2:
            v, w = side
            n = len(boundary)
            j = boundary.index(v)
            assert boundary[(j + 1) % n] == w
            t = boundary[(j - 2) % n]
            u = boundary[(j - 1) % n]
            x = boundary[(j + 2) % n]
            y = boundary[(j + 3) % n]
            window = [t, u, v, w, x, y]
            if k == 4:
                return [u, v, w, x]
            rest = [p for p in pts if p not in window]
            inner = _select_strict(rest, k - 4, ell)
            return inner + [u, v, w, x]

    # Every side holds exactly 3 points: take all side midpoints plus every
    # second corner (omitting two consecutive corners when m is odd).
    corners = list(convex_hull(pts).corners)
    mids = [side[1] for side in sides]
    if m % 2 == 0:
        chosen = [corners[i] for i in range(0, m, 2)]
    else:
        chosen = [corners[i] for i in range(0, m - 2, 2)]
    picked = mids + chosen
    assert len(picked) >= k
    return picked[:k]


# ---------------------------------------------------------------------------
# k-minimal convex subsets and layers


def k_minimal_convex_subset(points: Sequence[Point], k: int) -> list[Point]:
    """A >= k point convex-position subset whose hull strictly contains the
    hull of no other >= k point convex-position subset.

    Descends by hull area: while some k-subset in convex position fits inside
    a halfplane cutting off a corner of the current hull, replace and repeat.
    """
    pts = canonical(validate_points(points))
    current = find_convex_position_subset(pts, k)
    if current is None:
        raise GeometryError(f"no {k} points in convex position")
    measure = _hull_measure(current)
    while True:
        replacement = _smaller_convex_subset(pts, current, k)
        if replacement is None:
            return canonical(current)
        new_measure = _hull_measure(replacement)
        assert new_measure < measure
        current, measure = replacement, new_measure


def _smaller_convex_subset(
    pts: list[Point], current: list[Point], k: int
) -> Optional[list[Point]]:
    """A >= k convex-position subset with hull properly inside the current
    hull, or None if none exists."""
    hull = convex_hull(current)
    inside = [p for p in pts if in_closed_hull(p, hull)]
    corners = hull.corners
    if len(corners) <= 2:
        # Degenerate hull: minimal k-subsets are windows along the line.
        line = canonical(inside)
        best = None
        for i in range(len(line) - k + 1):
            window = line[i : i + k]
            if _hull_measure(window) < _hull_measure(current):
                if best is None or _hull_measure(window) < _hull_measure(best):
                    best = window
        return best
    for i, a in enumerate(inside):
        for b in inside:
            if a == b:
                continue
            if all(cross(a, b, c) >= 0 for c in corners):
                continue  # no corner cut off by this halfplane
            half = [q for q in inside if cross(a, b, q) >= 0]
            if len(half) < k:
                continue
            found = find_convex_position_subset(half, k)
            if found is not None:
                return found
    return None


@dataclass(frozen=True)
class LayerDecomposition:
    """Convex layers grown inward from a k-minimal outer subset."""

    layers: tuple[tuple[Point, ...], ...]
    apex: Optional[Point]
    ell: int
    k: int

    def sizes(self) -> list[int]:
        return [len(layer) for layer in self.layers]


def convex_layers(points: Sequence[Point], ell: int, k: int) -> LayerDecomposition:
    """Layer decomposition: a k-minimal outer layer, then hull-boundary peels,
    then the residue layer (whose canonical least point is the apex)."""
    pts = canonical(validate_points(points))
    if ell < 2:
        raise GeometryError("convex_layers needs ell >= 2")
    outer = k_minimal_convex_subset(pts, k)
    layers: list[tuple[Point, ...]] = [tuple(outer)]
    hull = convex_hull(outer)
    remaining = [p for p in pts if in_closed_hull(p, hull) and p not in set(outer)]
    for _ in range(2, ell):
        if not remaining:
            layers.append(())
            continue
        boundary = set(convex_hull(remaining).boundary)
        layer = [p for p in remaining if p in boundary]
        layers.append(tuple(canonical(layer)))
        remaining = [p for p in remaining if p not in boundary]
    layers.append(tuple(canonical(remaining)))
    apex = min(remaining) if remaining else None
    return LayerDecomposition(tuple(layers), apex, ell, k)


def max_general_position_subset(points: Sequence[Point]) -> list[Point]:
    """A maximal (greedy, canonical order) subset with no three collinear."""
    pts = canonical(validate_points(points))
    if not pts:
        raise GeometryError("need at least one point")
    chosen: list[Point] = []
    for p in pts:
        if all(
            cross(a, b, p) != 0
            for i, a in enumerate(chosen)
            for b in chosen[i + 1 :]
        ):
            chosen.append(p)
    return chosen
