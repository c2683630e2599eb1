"""k-holes, visibility graphs, and the no-4-hole classification.

A k-hole of P is a set of k points of P in strictly convex position whose
closed convex hull contains no other point of P.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .convexity import (
    convex_hull,
    hull_twice_area,
    in_closed_hull,
    is_strictly_convex_position,
)
from .geometry import (
    GeometryError,
    Point,
    canonical,
    cross,
    in_closed_triangle,
    max_collinear,
    on_closed_segment,
    validate_points,
)


class InconclusiveError(RuntimeError):
    """Raised when neither certificate can be produced within search bounds."""


@dataclass(frozen=True)
class HoleCertificate:
    """k points in strictly convex position (clockwise) with an empty hull."""

    vertices: tuple[Point, ...]
    k: int

    @classmethod
    def build(cls, ambient: Sequence[Point], vertices: Sequence[Point]) -> "HoleCertificate":
        """Certificate for the given vertex set, verified against ambient."""
        if not is_hole(ambient, vertices):
            raise GeometryError(f"{list(vertices)} is not a hole of the point set")
        cw = convex_hull(list(vertices)).boundary
        return cls(tuple(cw), len(vertices))

    def verify(self, ambient: Sequence[Point]) -> bool:
        return len(self.vertices) == self.k and is_hole(ambient, self.vertices)


@dataclass(frozen=True)
class CollinearCertificate:
    """ell collinear points, ordered along their common line."""

    points: tuple[Point, ...]
    ell: int

    @classmethod
    def build(cls, points: Sequence[Point]) -> "CollinearCertificate":
        pts = list(points)
        if len(pts) < 2:
            raise GeometryError("a collinear certificate needs at least 2 points")
        a, b = pts[0], pts[1]
        if any(p not in (a, b) and cross(a, b, p) != 0 for p in pts):
            raise GeometryError("points are not collinear")
        return cls(tuple(sorted(pts)), len(pts))

    def verify(self, ambient: Sequence[Point]) -> bool:
        ambient_set = set(ambient)
        if any(p not in ambient_set for p in self.points):
            return False
        if len(self.points) != self.ell or self.ell < 2:
            return False
        a, b = self.points[0], self.points[-1]
        return all(p in (a, b) or cross(a, b, p) == 0 for p in self.points)


def is_hole(points: Sequence[Point], subset: Sequence[Point]) -> bool:
    """True iff ``subset`` is a |subset|-hole of ``points``."""
    pts = validate_points(points)
    sub = validate_points(subset)
    pset = set(pts)
    if any(x not in pset for x in sub):
        raise GeometryError("hole vertices must belong to the ambient set")
    if len(sub) < 3:
        return False
    if not is_strictly_convex_position(sub):
        return False
    hull = convex_hull(sub)
    sub_set = set(sub)
    return all(p in sub_set or not in_closed_hull(p, hull) for p in pts)


def find_k_hole(points: Sequence[Point], k: int) -> Optional[HoleCertificate]:
    """A k-hole of the point set, or None if there is none.

    Complete: for each candidate bottom vertex, strictly convex chains are
    grown in angle order with every fan triangle required to be empty of
    other points, which prunes hard while missing nothing.
    """
    pts = canonical(validate_points(points))
    if k < 3:
        raise GeometryError("holes need k >= 3")
    if len(pts) < k:
        return None
    for idx, base in enumerate(pts):
        cand = _angle_order(base, pts[idx + 1 :])
        chain = _empty_chain(pts, base, cand, k)
        if chain is not None:
            return HoleCertificate.build(pts, chain)
    return None


def _angle_order(base: Point, cand: list[Point]) -> list[Point]:
    import functools

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


def _empty_chain(
    pts: list[Point], base: Point, cand: list[Point], k: int
) -> Optional[list[Point]]:
    """DFS for a strictly convex k-cycle through base whose fan triangles
    from base contain no other point of pts."""
    n = len(cand)

    def triangle_clear(a: Point, b: Point, c: Point) -> bool:
        return all(
            p in (a, b, c) or not in_closed_triangle(p, a, b, c) for p in pts
        )

    def extend(chain: list[Point], start: int) -> Optional[list[Point]]:
        if len(chain) == k:
            if cross(chain[-2], chain[-1], base) > 0 and cross(
                chain[-1], base, chain[1]
            ) > 0:
                return chain
            return None
        for i in range(start, n):
            p = cand[i]
            if len(chain) >= 2:
                if cross(chain[-2], chain[-1], p) <= 0:
                    continue
                if not triangle_clear(base, chain[-1], p):
                    continue
            elif not _segment_clear(pts, base, p):
                continue
            res = extend(chain + [p], i + 1)
            if res is not None:
                return res
        return None

    return extend([base], 0)


def _segment_clear(pts: list[Point], a: Point, b: Point) -> bool:
    return all(p in (a, b) or not on_closed_segment(p, a, b) for p in pts)


@dataclass(frozen=True)
class VisibilityGraph:
    """Adjacency under segment-emptiness visibility."""

    vertices: tuple[Point, ...]
    edges: frozenset[tuple[Point, Point]]

    def adjacent(self, v: Point, w: Point) -> bool:
        return tuple(sorted((v, w))) in self.edges

    def is_complete(self) -> bool:
        n = len(self.vertices)
        return len(self.edges) == n * (n - 1) // 2


def visibility_graph(points: Sequence[Point]) -> VisibilityGraph:
    """Exact visibility graph: v, w adjacent iff nothing blocks segment vw."""
    pts = canonical(validate_points(points))
    if len(pts) < 2:
        raise GeometryError("visibility graph needs at least 2 points")
    edges = set()
    for i, v in enumerate(pts):
        for w in pts[i + 1 :]:
            if _segment_clear(pts, v, w):
                edges.add((v, w))
    return VisibilityGraph(tuple(pts), frozenset(edges))


def _proper_crossing(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff open segments ab and cd share a point (no shared endpoints)."""
    d1 = cross(c, d, a)
    d2 = cross(c, d, b)
    d3 = cross(a, b, c)
    d4 = cross(a, b, d)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and d1 and d2 and d3 and d4:
        return True
    return False


def is_crossing_free(graph: VisibilityGraph) -> bool:
    """True iff no two visibility edges cross at interior points."""
    edges = sorted(graph.edges)
    for i, (a, b) in enumerate(edges):
        for c, d in edges[i + 1 :]:
            if a in (c, d) or b in (c, d):
                continue
            if _proper_crossing(a, b, c, d):
                return False
    return True


def min_area_five_hole(
    points: Sequence[Point], hole: HoleCertificate
) -> HoleCertificate:
    """Minimum-area 5-hole among those contained in the given 5-hole.

    Ties go to the lexicographically least vertex list; areas are compared as
    exact twice-area integers.
    """
    pts = canonical(validate_points(points))
    if hole.k != 5 or not hole.verify(pts):
        raise GeometryError("input certificate is not a 5-hole of the point set")
    region = convex_hull(list(hole.vertices))
    inside = [p for p in pts if in_closed_hull(p, region)]
    best: Optional[tuple[int, list[Point], HoleCertificate]] = None
    for combo in itertools.combinations(inside, 5):
        sub = list(combo)
        if not is_strictly_convex_position(sub):
            continue
        if not is_hole(pts, sub):
            continue
        area = hull_twice_area(convex_hull(sub).corners)
        key = (area, canonical(sub))
        if best is None or key < (best[0], best[1]):
            best = (area, canonical(sub), HoleCertificate.build(pts, sub))
    assert best is not None  # the input hole itself always qualifies
    return best[2]


def find_visible_5_clique(points: Sequence[Point], ell: int):
    """ell collinear points if present, else the corners of a minimum-area
    5-hole refinement, which are pairwise visible.

    Returns a CollinearCertificate or a list of 5 points; raises
    InconclusiveError when neither certificate can be produced.
    """
    pts = canonical(validate_points(points))
    if len(pts) < 5:
        raise GeometryError("need at least 5 points")
    count, witness = max_collinear(pts)
    if count >= ell:
        return CollinearCertificate.build(witness[:ell])
    hole = find_k_hole(pts, 5)
    if hole is None:
        raise InconclusiveError(
            "no 5 collinear points and no 5-hole found; cannot certify a clique"
        )
    refined = min_area_five_hole(pts, hole)
    return list(refined.vertices)


# ---------------------------------------------------------------------------
# No-4-hole classification

# Integer realization of the single exceptional 6-point order type with no
# 4-hole that is not covered by the collinear families.  Found by exhaustive
# search over small integer configurations; any relabeling or mirror image of
# this order type is accepted.
# The unique 6-point order type with no 4-hole that is neither
# all-but-one-collinear nor two-apex-line.  Frozen from an exhaustive search
# of 6-subsets of the 4x4 grid, which finds exactly one order type meeting
# those conditions (see tests for the re-derivation).
EXCEPTIONAL_SIX: tuple[Point, ...] = (
    (0, 0),
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 2),
    (3, 2),
)


@dataclass(frozen=True)
class NoFourHoleFamily:
    """Classification of a point set against the no-4-hole families."""

    tag: str  # all-but-one-collinear | two-apex-line | six-point-exceptional
    #          | has-four-hole
    witness: tuple[Point, ...]
    crossing_free: bool


def same_order_type(a: Sequence[Point], b: Sequence[Point]) -> bool:
    """True iff some relabeling (allowing a mirror) matches all triple
    orientations of ``a`` to those of ``b``."""
    pa = list(a)
    pb = list(b)
    if len(pa) != len(pb):
        return False
    n = len(pa)
    triples = list(itertools.combinations(range(n), 3))
    sig_a = [cross(pa[i], pa[j], pa[k]) for i, j, k in triples]
    signs_a = [(v > 0) - (v < 0) for v in sig_a]
    for perm in itertools.permutations(range(n)):
        for flip in (1, -1):
            ok = True
            for (i, j, k), want in zip(triples, signs_a):
                v = cross(pb[perm[i]], pb[perm[j]], pb[perm[k]])
                if ((v > 0) - (v < 0)) * flip != want:
                    ok = False
                    break
            if ok:
                return True
    return False


def _two_apex_line_witness(pts: list[Point]) -> Optional[tuple[Point, ...]]:
    """Points v, w on opposite sides of the line through the rest, with the
    segment vw meeting the rest's hull in a point of the set or not at all."""
    for v, w in itertools.combinations(pts, 2):
        rest = [p for p in pts if p not in (v, w)]
        if len(rest) < 2:
            continue
        a, b = rest[0], rest[1]
        if any(p not in (a, b) and cross(a, b, p) != 0 for p in rest):
            continue
        sv = cross(a, b, v)
        sw = cross(a, b, w)
        if sv == 0 or sw == 0 or (sv > 0) == (sw > 0):
            continue
        # Crossing point of segment vw with the line through rest.
        t = Fraction(sv, sv - sw)
        sx = Fraction(v[0]) + t * (w[0] - v[0])
        sy = Fraction(v[1]) + t * (w[1] - v[1])
        lo, hi = min(rest), max(rest)
        within = (
            min(lo[0], hi[0]) <= sx <= max(lo[0], hi[0])
            and min(lo[1], hi[1]) <= sy <= max(lo[1], hi[1])
        )
        if not within:
            return (v, w)
        if sx.denominator == 1 and sy.denominator == 1:
            if (int(sx), int(sy)) in set(rest):
                return (v, w)
    return None


def classify_no_four_hole(points: Sequence[Point]) -> NoFourHoleFamily:
    """Match the point set against the families of sets with no 4-hole.

    Also checks, on this instance, that having no 4-hole, a crossing-free
    visibility graph, and membership in one of the families all agree.
    """
    pts = canonical(validate_points(points))
    if len(pts) < 3:
        raise GeometryError("classification needs at least 3 points")
    hole = find_k_hole(pts, 4)
    crossing_free = is_crossing_free(visibility_graph(pts))

    tag = None
    witness: tuple[Point, ...] = ()
    count, line = max_collinear(pts)
    if count >= len(pts) - 1:
        tag = "all-but-one-collinear"
        witness = tuple(line)
    else:
        pair = _two_apex_line_witness(pts)
        if pair is not None:
            tag = "two-apex-line"
            witness = pair
        elif len(pts) == 6 and same_order_type(pts, EXCEPTIONAL_SIX):
            tag = "six-point-exceptional"
            witness = tuple(pts)

    if hole is not None:
        # Equivalence: a 4-hole must coincide with a crossing and no family.
        assert not crossing_free
        assert tag is None
        return NoFourHoleFamily("has-four-hole", hole.vertices, crossing_free)

    assert crossing_free
    if tag is None:
        raise GeometryError("no-4-hole set matches no known family")
    return NoFourHoleFamily(tag, witness, crossing_free)
