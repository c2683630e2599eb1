"""Constructive search for an ell-collinear certificate or a 5-hole.

The engine walks a layer decomposition of the point set: a minimal convex
outer layer, hull peels inside it, and an apex point in the residue.  Empty
arcs of a layer are chased to follower arcs on the next layer; whenever one
of the structural claims about followers fails to hold, a 5-hole is harvested
on the spot.  Small inputs that exhaust the walk fall back to complete hole
search, so every produced certificate is verified and the absence answer is
exact at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .convexity import (
    LayerDecomposition,
    convex_hull,
    find_convex_position_subset,
    in_closed_hull,
    k_minimal_convex_subset,
    max_convex_position_subset,
)
from .geometry import (
    GeometryError,
    Point,
    canonical,
    cross,
    in_open_triangle,
    max_collinear,
    on_closed_segment,
    validate_points,
)
from .holes import CollinearCertificate, HoleCertificate, find_k_hole, is_hole

ORACLE_COMPLETE_BOUND = 30


def threshold_k(ell: int) -> int:
    """The convex-position target size ((2*ell-1)**ell - 1) / (2*ell - 2)."""
    if ell < 2:
        raise GeometryError("threshold_k needs ell >= 2")
    num = (2 * ell - 1) ** ell - 1
    den = 2 * ell - 2
    assert num % den == 0
    return num // den


@dataclass(frozen=True)
class Arc:
    """Oriented edge between clockwise-consecutive points of a layer."""

    start: Point
    end: Point
    layer_index: int  # 1-based


@dataclass
class ExtractionParams:
    ell: int
    k: Optional[int] = None
    oracle_fallback: bool = True


@dataclass(frozen=True)
class Inconclusive:
    """No certificate; ``exhausted`` is True when a complete search proved
    that none exists."""

    exhausted: bool


@dataclass(frozen=True)
class TraceStep:
    kind: str
    detail: dict


@dataclass
class ExtractionResult:
    outcome: Union[CollinearCertificate, HoleCertificate, Inconclusive]
    trace: list[TraceStep] = field(default_factory=list)

    @property
    def certificate(self):
        return None if isinstance(self.outcome, Inconclusive) else self.outcome

    def trace_kinds(self) -> list[str]:
        return [step.kind for step in self.trace]


class FollowerError(GeometryError):
    """The follower of an arc could not be determined (degenerate geometry)."""


def arcs_of_layer(decomposition: LayerDecomposition, index: int) -> list[Arc]:
    """The clockwise arcs of layer ``index`` (1-based)."""
    layer = decomposition.layers[index - 1]
    if len(layer) < 3:
        raise GeometryError(f"layer {index} has fewer than 3 points")
    boundary = convex_hull(list(layer)).boundary
    m = len(boundary)
    return [Arc(boundary[j], boundary[(j + 1) % m], index) for j in range(m)]


def is_empty_arc(arc: Arc, decomposition: LayerDecomposition) -> bool:
    """True iff the open triangle from the arc to the apex misses the next
    layer entirely (degenerate triangles count as empty)."""
    z = decomposition.apex
    if z is None:
        raise GeometryError("decomposition has no apex")
    nxt = decomposition.layers[arc.layer_index]
    if cross(arc.start, arc.end, z) == 0:
        return True
    return not any(in_open_triangle(p, arc.start, arc.end, z) for p in nxt)


def follower(
    arc: Arc, decomposition: LayerDecomposition, check_claims: bool = False
) -> Arc:
    """The arc of the next layer meeting the triangle of an empty arc.

    With ``check_claims`` the follower quadrilateral is asserted to be a
    4-hole of the layer points and the follower arc to be empty in turn.
    """
    if not is_empty_arc(arc, decomposition):
        raise GeometryError("follower is only defined for empty arcs")
    z = decomposition.apex
    x, y = arc.start, arc.end
    if cross(x, y, z) == 0:
        raise FollowerError("arc is collinear with the apex")
    nxt = decomposition.layers[arc.layer_index]
    if len(nxt) < 2:
        raise FollowerError("next layer too small for arcs")
    boundary = convex_hull(list(nxt)).boundary
    result = _crossed_arc(x, y, z, boundary)
    if result is None:
        raise FollowerError("could not isolate the crossed arc")
    p, q = result
    out = Arc(p, q, arc.layer_index + 1)
    if check_claims:
        ambient = [pt for layer in decomposition.layers for pt in layer]
        assert is_hole(ambient, [x, y, p, q])
        assert is_empty_arc(out, decomposition)
    return out


def _crossed_arc(
    x: Point, y: Point, z: Point, boundary: Sequence[Point]
) -> Optional[tuple[Point, Point]]:
    """The boundary arc crossed by a ray from z toward the segment xy.

    Several rational targets along xy are tried so that a ray hitting a
    boundary vertex exactly can be replaced by a nearby one that does not.
    """
    m = len(boundary)
    for num, den in ((1, 2), (1, 3), (2, 3), (1, 5), (2, 5), (3, 5), (4, 5)):
        tx = Fraction(x[0] * (den - num) + y[0] * num, den)
        ty = Fraction(x[1] * (den - num) + y[1] * num, den)
        hit_vertex = False
        for j in range(m):
            a, b = boundary[j], boundary[(j + 1) % m]
            params = _segment_intersection(z, (tx, ty), a, b)
            if params is None:
                continue
            s, u = params
            if not (0 < s < 1):
                continue
            if u == 0 or u == 1:
                hit_vertex = True
                break
            return a, b
        if not hit_vertex:
            return None
    return None


def _segment_intersection(p1, p2, p3: Point, p4: Point):
    """Parameters (s, u) with p1 + s*(p2-p1) == p3 + u*(p4-p3), both within
    [0, 1], or None (parallel segments give None)."""
    d1x = Fraction(p2[0]) - Fraction(p1[0])
    d1y = Fraction(p2[1]) - Fraction(p1[1])
    d2x = Fraction(p4[0] - p3[0])
    d2y = Fraction(p4[1] - p3[1])
    denom = d1x * d2y - d1y * d2x
    if denom == 0:
        return None
    rx = Fraction(p3[0]) - Fraction(p1[0])
    ry = Fraction(p3[1]) - Fraction(p1[1])
    s = (rx * d2y - ry * d2x) / denom
    u = (rx * d1y - ry * d1x) / denom
    if 0 <= s <= 1 and 0 <= u <= 1:
        return s, u
    return None


def classify_alignment(xy: Arc, pq: Arc, z: Point) -> str:
    """double / left / right alignment of a follower, or "violation" when the
    follower endpoints avoid both apex segments."""
    p_on = on_closed_segment(pq.start, xy.start, z)
    q_on = on_closed_segment(pq.end, xy.end, z)
    if p_on and q_on:
        return "double"
    if p_on:
        return "left"
    if q_on:
        return "right"
    return "violation"


def _closest_to_line(points: Sequence[Point], a: Point, b: Point) -> Point:
    """Point with least exact twice-area distance to line ab, ties canonical."""
    return min(points, key=lambda p: (abs(cross(a, b, p)), p))


def extract(points: Sequence[Point], params: ExtractionParams) -> ExtractionResult:
    """Produce an ell-collinear certificate or a 5-hole, with a proof trace."""
    pts = canonical(validate_points(points))
    if len(pts) < 3:
        raise GeometryError("extract needs at least 3 points")
    if params.ell < 2:
        raise GeometryError("extract needs ell >= 2")
    trace: list[TraceStep] = []
    ell = params.ell

    count, witness = max_collinear(pts)
    if count >= ell:
        trace.append(TraceStep("collinear", {"count": count}))
        cert = CollinearCertificate.build(witness[:ell])
        return ExtractionResult(cert, trace)

    result = _run_machinery(pts, ell, params, trace)
    if result is not None:
        return result
    return _fallback(pts, params, trace)


def _fallback(pts, params: ExtractionParams, trace) -> ExtractionResult:
    if not params.oracle_fallback:
        trace.append(TraceStep("inconclusive", {"fallback": False}))
        return ExtractionResult(Inconclusive(exhausted=False), trace)
    hole = find_k_hole(pts, 5) if len(pts) >= 5 else None
    if hole is not None:
        assert hole.verify(pts)
        trace.append(TraceStep("oracle-fallback", {"found": True}))
        return ExtractionResult(hole, trace)
    exhausted = len(pts) <= ORACLE_COMPLETE_BOUND
    trace.append(TraceStep("oracle-fallback", {"found": False, "complete": exhausted}))
    return ExtractionResult(Inconclusive(exhausted=exhausted), trace)


def _verified_hole(pts, candidate, kind, trace) -> Optional[ExtractionResult]:
    if len(set(candidate)) != 5 or not is_hole(pts, candidate):
        trace.append(TraceStep(kind, {"verified": False, "points": list(candidate)}))
        return None
    trace.append(TraceStep(kind, {"verified": True, "points": list(candidate)}))
    return ExtractionResult(HoleCertificate.build(pts, candidate), trace)


def _run_machinery(
    pts: list[Point], ell: int, params: ExtractionParams, trace: list[TraceStep]
) -> Optional[ExtractionResult]:
    """The layer/arc/follower walk; None means fall back to complete search."""
    k_default = params.k if params.k is not None else threshold_k(ell)
    probe = find_convex_position_subset(pts, min(k_default, len(pts)))
    if probe is not None:
        k = min(k_default, len(pts))
    else:
        largest = max_convex_position_subset(pts) if len(pts) >= 3 else []
        k = len(largest)
        trace.append(TraceStep("reduced-k", {"k": k, "requested": k_default}))
    if k < 5:
        trace.append(TraceStep("machinery-skipped", {"reason": "k < 5", "k": k}))
        return None

    ground = pts
    for restart in range(len(pts) + 1):
        outer = k_minimal_convex_subset(ground, k)
        decomposition = _layers_from(pts, outer, ell, k)
        trace.append(
            TraceStep(
                "layers",
                {"sizes": decomposition.sizes(), "restart": restart, "k": k},
            )
        )

        harvested = _window_harvest(pts, decomposition, ell, trace)
        if harvested is not None:
            return harvested

        sizes = decomposition.sizes()
        if any(sizes[i] < 3 for i in range(ell - 1)) or sizes[ell - 1] == 0:
            trace.append(TraceStep("layers-too-thin", {"sizes": sizes}))
            return None

        arcs = arcs_of_layer(decomposition, 1)
        empty_arcs = [
            a
            for a in arcs
            if is_empty_arc(a, decomposition)
            and cross(a.start, a.end, decomposition.apex) != 0
        ]
        if not empty_arcs:
            # Contradicts minimality of the outer layer: restart from the
            # second layer, whose hull is properly smaller.
            trace.append(TraceStep("restart", {"restart": restart}))
            inner_hull = convex_hull(list(decomposition.layers[1]))
            ground = [p for p in pts if in_closed_hull(p, inner_hull)]
            continue
        return _walk(pts, decomposition, ell, empty_arcs[0], trace)
    trace.append(TraceStep("restart-limit", {}))
    return None


def _layers_from(
    pts: list[Point], outer: list[Point], ell: int, k: int
) -> LayerDecomposition:
    layers: list[tuple[Point, ...]] = [tuple(canonical(outer))]
    hull = convex_hull(outer)
    remaining = [p for p in pts if in_closed_hull(p, hull) and p not in set(outer)]
    for _ in range(2, ell):
        if not remaining:
            layers.append(())
            continue
        boundary = set(convex_hull(remaining).boundary)
        layers.append(tuple(canonical([p for p in remaining if p in boundary])))
        remaining = [p for p in remaining if p not in boundary]
    layers.append(tuple(canonical(remaining)))
    apex = min(remaining) if remaining else None
    return LayerDecomposition(tuple(layers), apex, ell, k)


def _window_harvest(
    pts: list[Point],
    decomposition: LayerDecomposition,
    ell: int,
    trace: list[TraceStep],
) -> Optional[ExtractionResult]:
    """5-hole search inside hulls of 2*ell - 1 consecutive outer-layer points
    that trap no point of the next layer."""
    width = 2 * ell - 1
    for i in range(2, ell + 1):
        prev = decomposition.layers[i - 2]
        cur = set(decomposition.layers[i - 1])
        if len(prev) < 3:
            continue
        boundary = convex_hull(list(prev)).boundary
        n = len(boundary)
        if n >= width:
            windows = [
                [boundary[(j + t) % n] for t in range(width)] for j in range(n)
            ]
        elif not cur:
            windows = [list(boundary)]  # below guarantee size; try anyway
        else:
            continue
        for window in windows:
            hull = convex_hull(window)
            if any(in_closed_hull(p, hull) for p in cur):
                continue
            local = [p for p in pts if in_closed_hull(p, hull)]
            if len(local) < 5:
                continue
            hole = find_k_hole(local, 5)
            if hole is not None:
                assert hole.verify(pts)
                trace.append(
                    TraceStep(
                        "window-harvest",
                        {"layer": i - 1, "window": window, "hole": list(hole.vertices)},
                    )
                )
                return ExtractionResult(hole, trace)
    return None


def _walk(
    pts: list[Point],
    decomposition: LayerDecomposition,
    ell: int,
    first: Arc,
    trace: list[TraceStep],
) -> Optional[ExtractionResult]:
    z = decomposition.apex
    xs = [first.start]
    ys = [first.end]
    alignments: dict[int, str] = {}
    arc = first
    trace.append(TraceStep("empty-arc", {"arc": (arc.start, arc.end)}))

    for i in range(1, ell - 1):
        try:
            pq = follower(arc, decomposition)
        except FollowerError as exc:
            trace.append(TraceStep("follower-degenerate", {"error": str(exc)}))
            return None
        p, q = pq.start, pq.end
        x, y = arc.start, arc.end
        trace.append(
            TraceStep("follower", {"arc": (x, y), "follower": (p, q), "layer": i + 1})
        )
        if not is_hole(pts, [x, y, p, q]):
            trace.append(TraceStep("claim-b-4hole-failure", {"points": [x, y, p, q]}))
            return None
        trace.append(TraceStep("claim-b-4hole", {"points": [x, y, p, q]}))

        if not is_empty_arc(pq, decomposition):
            # The follower's own triangle traps a deeper point: harvest.
            deeper = decomposition.layers[pq.layer_index]
            inside = [
                r for r in deeper if in_open_triangle(r, p, q, z) and r not in (p, q)
            ]
            if not inside:
                inside = [
                    r
                    for r in pts
                    if r not in (p, q, z) and in_open_triangle(r, p, q, z)
                ]
            r = _closest_to_line(inside, p, q)
            result = _verified_hole(pts, [x, y, p, q, r], "claim-b-empty-harvest", trace)
            return result  # verified or fall back via None

        tag = classify_alignment(arc, pq, z)
        if tag == "violation":
            # Points of the closed triangle p, q, z off the line pq; z is one
            # of them, so the pool is never empty.
            pool = [
                r
                for r in pts
                if r not in (p, q)
                and cross(p, q, r) != 0
                and (
                    in_open_triangle(r, p, q, z) or _on_triangle_edge(r, p, q, z)
                )
            ]
            r = _closest_to_line(pool, p, q)
            return _verified_hole(
                pts, [x, y, p, q, r], "claim-c-violation-harvest", trace
            )

        alignments[i + 1] = tag
        trace.append(TraceStep("alignment", {"index": i + 1, "tag": tag}))
        xs.append(p)
        ys.append(q)
        arc = pq

    # All followers aligned: locate the pivot indices of the terminal harvest.
    first_bend = next(
        (i for i in range(2, ell - 1) if alignments.get(i) != "double"), None
    )
    if first_bend is None:
        trace.append(TraceStep("double-aligned-exhaustion", {}))
        return None
    if alignments[first_bend] == "right":
        xs, ys = ys, xs
        alignments = {
            i: {"left": "right", "right": "left"}.get(t, t)
            for i, t in alignments.items()
        }
        trace.append(TraceStep("mirror", {}))
    j = next(
        (
            idx
            for idx in range(first_bend + 1, ell)
            if alignments.get(idx) != "left"
        ),
        None,
    )
    if j is None or j > len(xs):
        trace.append(TraceStep("left-aligned-exhaustion", {}))
        return None
    candidate = [xs[j - 3], ys[j - 3], ys[j - 2], ys[j - 1], xs[j - 2]]
    return _verified_hole(pts, candidate, "terminal-harvest", trace)


def _on_triangle_edge(r: Point, p: Point, q: Point, z: Point) -> bool:
    if cross(p, q, z) == 0:
        return False
    return (
        on_closed_segment(r, p, z)
        or on_closed_segment(r, q, z)
        or on_closed_segment(r, p, q)
    )
