"""Deterministic constructors for the configuration families used in tests.

Every generator re-verifies the property that makes its output interesting
(collinearity bound, general position, family classification) before
returning, so fixtures are never emitted unchecked.  All randomness is
seeded; nothing reads system entropy.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from .convexity import is_convex_position
from .geometry import (
    GeometryError,
    Point,
    canonical,
    cross,
    is_general_position,
    max_collinear,
    validate_points,
)
from .holes import EXCEPTIONAL_SIX, classify_no_four_hole, find_k_hole


def _loaded_polygon(
    sides: int, ell: int, slope_step: int, boost: int = 1
) -> list[Point]:
    """A centrally symmetric 2*sides-gon whose alternate side lines each carry
    ell - 1 points (the two corners plus ell - 3 evenly spaced interior ones).
    The boost factor enlarges the polygon without adding points, leaving
    lattice room for later insertions.
    """
    scale = max(1, ell - 2) * boost
    ups = [(1, slope_step * i) for i in range(sides)]
    edges = ups + [(-vx, -vy) for vx, vy in ups]
    corners = []
    x, y = 0, 0
    for vx, vy in edges:
        corners.append((x, y))
        x += vx * scale
        y += vy * scale
    assert (x, y) == (0, 0)
    pts: list[Point] = list(corners)
    for j in range(0, 2 * sides, 2):
        ax, ay = corners[j]
        vx, vy = edges[j]
        for t in range(1, ell - 2):
            pts.append((ax + vx * t, ay + vy * t))
    return pts


def every_second_side(k: int, ell: int) -> list[Point]:
    """A convex-position set one short of forcing k strictly convex or ell
    collinear points: alternate sides of an even polygon loaded with ell - 1
    collinear points each, plus one free extra point when k is even."""
    if k < 3 or ell < 3:
        raise GeometryError("every_second_side needs k >= 3 and ell >= 3")
    if k == 3:
        # ell - 1 collinear points: no 3 strictly convex, ell collinear missed.
        return [(i, 0) for i in range(ell - 1)]
    if k == 4:
        # One apex over ell - 1 collinear points: every 4-subset keeps 3 on
        # the line, so no 4 points are strictly convex.
        return collinear_plus_one(ell)
    sides = (k - 1) // 2 if k % 2 == 1 else (k - 2) // 2
    target = (ell - 1) * (k - 1) // 2 if k % 2 == 1 else (ell - 1) * (k - 2) // 2 + 1
    for boost in (1, 2, 3, 4) if k % 2 == 0 else (1,):
        for slope_step in range(1, 30):
            pts = _loaded_polygon(sides, ell, slope_step, boost)
            if k % 2 == 0:
                extra = _extra_convex_point(pts, sides, ell, slope_step, boost)
                if extra is None:
                    continue
                pts = pts + [extra]
            if len(pts) != target:
                continue
            if max_collinear(pts)[0] == ell - 1 and is_convex_position(pts):
                return canonical(pts)
    raise GeometryError("could not realize every_second_side set")


def _extra_convex_point(
    pts: list[Point], sides: int, ell: int, slope_step: int, boost: int = 1
) -> Optional[Point]:
    """An integer point beyond an unloaded polygon side that keeps the whole
    set in convex position and is collinear with no two existing points."""
    scale = max(1, ell - 2) * boost
    b = (scale, 0)
    c = (2 * scale, slope_step * scale)  # ends of unloaded side 1
    candidates = []
    for ex in range(b[0], c[0] + 3 * scale + 1):
        for ey in range(min(b[1], c[1]) - scale, max(b[1], c[1]) + scale + 1):
            candidates.append((ex, ey))
    mx, my = b[0] + c[0], b[1] + c[1]  # twice the side midpoint
    candidates.sort(key=lambda e: ((2 * e[0] - mx) ** 2 + (2 * e[1] - my) ** 2, e))
    taken = set(pts)
    n = len(pts)
    for e in candidates:
        if e in taken:
            continue
        if any(
            cross(e, pts[i], pts[j]) == 0
            for i in range(n)
            for j in range(i + 1, n)
        ):
            continue
        if is_convex_position(pts + [e]):
            return e
    return None


def grid(m: int) -> list[Point]:
    """The m-by-m integer grid."""
    if m < 2:
        raise GeometryError("grid needs m >= 2")
    pts = [(x, y) for x in range(m) for y in range(m)]
    assert max_collinear(pts)[0] == m
    return pts


def horton(n: int) -> list[Point]:
    """An n-point general-position set built by recursive interleaving, with
    each level's upper half lifted far enough to separate it from the lower."""
    if n < 1 or n & (n - 1):
        raise GeometryError("horton needs n a power of 2")
    pts = _horton(n)
    assert len(set(pts)) == n
    assert is_general_position(pts)
    return canonical(pts)


def _horton(n: int) -> list[Point]:
    if n == 1:
        return [(0, 0)]
    half = _horton(n // 2)
    lower = [(2 * x, y) for x, y in half]
    upper_base = [(2 * x + 1, y) for x, y in half]
    d = 1
    while True:
        upper = [(x, y + d) for x, y in upper_base]
        if _deep_above(lower, upper):
            return lower + upper
        d *= 2


def _deep_above(lower: Sequence[Point], upper: Sequence[Point]) -> bool:
    """True iff every line through two lower points passes strictly below all
    upper points and every line through two upper points strictly above all
    lower points."""
    for group, other, sign in ((lower, upper, 1), (upper, lower, -1)):
        pts = sorted(group)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                for p in other:
                    if sign * cross(pts[i], pts[j], p) <= 0:
                        return False
    return True


def collinear_plus_one(ell: int) -> list[Point]:
    """ell - 1 collinear points plus one apex off the line."""
    if ell < 2:
        raise GeometryError("collinear_plus_one needs ell >= 2")
    pts = [(i, 0) for i in range(ell - 1)] + [(0, 1)]
    assert max_collinear(pts)[0] == max(2, ell - 1)
    return canonical(pts)


def eppstein_family(tag: str, n: int = 6) -> list[Point]:
    """A set with no 4-hole from one of the structural families:

    - "a": n collinear points,
    - "b": n - 1 collinear points plus one apex,
    - "c": a line of n - 2 points with two apexes whose segment crosses the
      line at one of those points,
    - "d": as "c" but the crossing point lies outside the hull of the line
      points,
    - "e": the frozen exceptional 6-point configuration.
    """
    if tag in ("a", "b", "c", "d") and n < 4:
        raise GeometryError("eppstein_family needs n >= 4")
    if tag == "a":
        pts = [(i, 0) for i in range(n)]
    elif tag == "b":
        pts = [(i, 0) for i in range(n - 1)] + [(1, 1)]
    elif tag == "c":
        pts = [(i, 0) for i in range(n - 2)] + [(1, 1), (1, -1)]
    elif tag == "d":
        pts = [(i, 0) for i in range(n - 2)] + [(n, 1), (n, -1)]
    elif tag == "e":
        pts = list(EXCEPTIONAL_SIX)
    else:
        raise GeometryError(f"unknown family tag: {tag!r}")
    family = classify_no_four_hole(pts)
    assert family.tag is not None
    return canonical(pts)


def random_bounded_collinear(n: int, ell: int, seed: int) -> list[Point]:
    """n seeded random integer points with max_collinear < ell."""
    if n < 1 or ell < 3:
        raise GeometryError("random_bounded_collinear needs n >= 1, ell >= 3")
    rng = random.Random(seed)
    box = max(8, 4 * n * n)
    pts: list[Point] = []
    attempts = 0
    while len(pts) < n:
        attempts += 1
        if attempts > 4000 * n:
            raise GeometryError("sampling budget exhausted; box too small")
        p = (rng.randrange(box), rng.randrange(box))
        if p in pts:
            continue
        if _creates_ell_collinear(pts, p, ell):
            continue
        pts.append(p)
    out = canonical(pts)
    assert max_collinear(out)[0] < ell
    return out


def _creates_ell_collinear(pts: Sequence[Point], p: Point, ell: int) -> bool:
    for a in pts:
        run = 2
        for b in pts:
            if b is not a and cross(a, p, b) == 0:
                run += 1
        if run >= ell:
            return True
    return False


def random_general_position(n: int, seed: int) -> list[Point]:
    """n seeded random integer points with no three collinear."""
    return random_bounded_collinear(n, 3, seed)


def random_convex_position(n: int, ell: int, seed: int) -> list[Point]:
    """n seeded points in convex position with max_collinear < ell: a random
    subset of a loaded polygon with randomized side slopes."""
    if n < 3 or ell < 3:
        raise GeometryError("random_convex_position needs n >= 3, ell >= 3")
    rng = random.Random(seed)
    per_line = ell - 1
    sides = max(2, -(-n // per_line))
    for _ in range(200):
        pool = _loaded_polygon(sides, ell, rng.randrange(1, 12))
        if len(pool) < n or max_collinear(pool)[0] >= ell:
            sides += 1
            continue
        pts = rng.sample(pool, n)
        if max_collinear(pts)[0] < ell and is_convex_position(pts):
            return canonical(pts)
    raise GeometryError("could not realize random convex-position set")


def grid_has_no_five_hole(m: int) -> bool:
    """Exhaustively confirmed absence of a 5-hole in the m-by-m grid."""
    return find_k_hole(grid(m), 5) is None
