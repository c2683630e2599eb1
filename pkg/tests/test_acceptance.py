"""End-to-end acceptance checks for the whole package.

Each test corresponds to one numbered criterion and exercises the library
through its public interfaces only.  Seeds are fixed so the whole suite is
deterministic.
"""

import itertools
import json
import random

import pytest
from click.testing import CliRunner

import holefinder.extractor
from holefinder.cli import main
from holefinder.convexity import (
    convex_hull,
    es_kl_bound,
    es_bound,
    is_convex_position,
    is_strictly_convex_position,
    k_minimal_convex_subset,
    q_formula,
    strictly_convex_subset_in_convex_position,
)
from holefinder.extractor import (
    ExtractionParams,
    Inconclusive,
    extract,
    threshold_k,
)
from holefinder.generators import (
    eppstein_family,
    every_second_side,
    grid,
    horton,
    random_bounded_collinear,
    random_convex_position,
    random_general_position,
)
from holefinder.geometry import (
    cross,
    is_general_position,
    max_collinear,
    perturb_general_position,
)
from holefinder.holes import (
    classify_no_four_hole,
    find_k_hole,
    is_crossing_free,
    min_area_five_hole,
    visibility_graph,
)
from holefinder.oracle import OracleBudget, oracle_k_hole, oracle_max_convex_subset

PAIRS = [(k, ell) for ell in range(3, 7) for k in range(3, 10)]

HEPTAGON = [(0, 0), (40, -12), (80, 0), (92, 34), (62, 58), (18, 58), (-10, 34)]

NONAGON = [
    (-4, 32), (2, -1), (12, 62), (29, -22), (44, 75),
    (63, -22), (76, 64), (89, 1), (94, 35),
]
TERMINAL_INNER = [(33, 22), (36, 30), (46, 26), (36, 24), (40, 28), (40, 25), (39, 26)]


# --- 1. exactness of the q threshold ------------------------------------


@pytest.mark.parametrize("k,ell", PAIRS)
def test_criterion_1_extremal_sets(k, ell):
    pts = every_second_side(k, ell)
    assert len(pts) == q_formula(k, ell) - 1
    assert max_collinear(pts)[0] < ell
    budget = OracleBudget(convex_subsets=len(pts))
    assert oracle_max_convex_subset(pts, strict=True, budget=budget) < k


def test_criterion_1_threshold_sets_force_k_strict():
    checked = 0
    for k, ell in PAIRS:
        if k <= 2 or ell <= 2:
            continue
        n = q_formula(k, ell)
        for seed in range(4):
            pts = random_convex_position(n, ell, seed=seed)
            assert len(pts) == n and max_collinear(pts)[0] < ell
            out = strictly_convex_subset_in_convex_position(pts, k, ell)
            assert len(out) == k
            assert is_strictly_convex_position(out)
            assert set(out) <= set(pts)
            checked += 1
    assert checked >= 100


# --- 2. ten points in general position give a 5-hole --------------------


def test_criterion_2_ten_point_five_holes(tmp_path):
    runner = CliRunner()
    for seed in range(200):
        pts = random_general_position(10, seed=seed)
        cert = find_k_hole(pts, 5)
        assert cert is not None and cert.verify(pts)
    # The command-line path agrees on a sample of the same inputs.
    for seed in range(0, 200, 25):
        pts = random_general_position(10, seed=seed)
        path = tmp_path / f"p{seed}.txt"
        path.write_text("".join(f"{x} {y}\n" for x, y in pts))
        result = runner.invoke(main, ["extract", str(path), "--ell", "3"])
        assert result.exit_code == 0
        assert json.loads(result.output)["kind"] == "hole"


# --- 3. square grids have no 5-hole -------------------------------------


@pytest.mark.parametrize("m", [3, 4, 5])
def test_criterion_3_grid_no_five_hole(m):
    assert oracle_k_hole(grid(m), 5) is None


# --- 4. Horton sets have no 7-hole --------------------------------------


def test_criterion_4_horton_16_no_seven_hole():
    assert find_k_hole(horton(16), 7) is None


@pytest.mark.slow
def test_criterion_4_horton_32_no_seven_hole():
    assert find_k_hole(horton(32), 7) is None


# --- 5. small sets with bounded collinearity contain a 4-hole -----------


@pytest.mark.parametrize("ell", [3, 4, 5])
def test_criterion_5_four_hole_threshold(ell):
    n = max(7, ell + 2)
    for seed in range(200):
        pts = random_bounded_collinear(n, ell, seed=seed)
        cert = find_k_hole(pts, 4)
        assert cert is not None and cert.verify(pts)


# --- 6. three characterizations of 4-hole-freeness agree ----------------


def _no_four_hole_equivalent(pts):
    has4 = find_k_hole(pts, 4) is not None
    crossing_free = is_crossing_free(visibility_graph(pts))
    family = classify_no_four_hole(pts)
    assert (not has4) == crossing_free == (family.tag != "has-four-hole")


def test_criterion_6_eppstein_equivalence_families():
    for tag in "abcde":
        for n in (6,) if tag == "e" else (5, 6, 8):
            _no_four_hole_equivalent(eppstein_family(tag, n))


def test_criterion_6_eppstein_equivalence_random():
    rng = random.Random(6)
    checked = 0
    while checked < 500:
        n = rng.randrange(4, 11)
        pts = list({(rng.randrange(7), rng.randrange(7)) for _ in range(n)})
        if len(pts) < 4:
            continue
        _no_four_hole_equivalent(pts)
        checked += 1


# --- 7. minimum-area 5-holes are pairwise visible -----------------------


def test_criterion_7_min_area_five_hole_visible():
    checked = 0
    seed = 0
    while checked < 100:
        pts = random_general_position(10, seed=seed)
        seed += 1
        cert = find_k_hole(pts, 5)
        if cert is None:
            continue
        refined = min_area_five_hole(pts, cert)
        graph = visibility_graph(pts)
        for a, b in itertools.combinations(refined.vertices, 2):
            assert graph.adjacent(a, b)
        checked += 1


# --- 8. extractor soundness and oracle agreement ------------------------


def _random_instance(seed):
    rng = random.Random(seed)
    ell = rng.choice([3, 4, 5])
    n = rng.randrange(6, 26)
    if rng.random() < 0.5:
        pts = random_bounded_collinear(n, ell, seed=seed)
    else:
        box = rng.randrange(6, 20)
        pts = list({(rng.randrange(box), rng.randrange(box)) for _ in range(n)})
    return ell, pts


@pytest.fixture(scope="module")
def batch_extractions():
    batch = []
    for seed in range(1000):
        ell, pts = _random_instance(seed)
        if len(pts) < 3:
            continue
        batch.append((ell, pts, extract(pts, ExtractionParams(ell=ell))))
    return batch


def test_criterion_8_extractor_matches_oracle(batch_extractions):
    for ell, pts, result in batch_extractions:
        if isinstance(result.outcome, Inconclusive):
            assert result.outcome.exhausted
            assert max_collinear(pts)[0] < ell
            assert oracle_k_hole(pts, 5) is None
        else:
            assert result.outcome.verify(pts)


def _cli_trace_kinds(tmp_path, name, pts, ell, k):
    runner = CliRunner()
    path = tmp_path / f"{name}.txt"
    path.write_text("".join(f"{x} {y}\n" for x, y in pts))
    args = ["extract", str(path), "--ell", str(ell), "--trace"]
    if k is not None:
        args += ["--k", str(k)]
    result = runner.invoke(main, args)
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["kind"] == "hole" and doc["verified"] is True
    return [step["kind"] for step in doc["trace"]]


def test_criterion_8_window_harvest_path(tmp_path):
    kinds = _cli_trace_kinds(tmp_path, "window", HEPTAGON + [(75, 8)], 3, 7)
    assert "window-harvest" in kinds


def test_criterion_8_claim_b_harvest_path(tmp_path):
    inner = [(32, 10), (34, 21), (34, 35), (40, 24), (44, 28), (46, 18), (56, 22)]
    kinds = _cli_trace_kinds(tmp_path, "claimb", HEPTAGON + inner, 4, 7)
    assert "claim-b-4hole" in kinds
    assert kinds[-1] == "claim-b-empty-harvest"


def test_criterion_8_claim_c_violation_path(tmp_path):
    inner = [(35, 24), (41, 25), (42, 26), (57, 11)]
    kinds = _cli_trace_kinds(tmp_path, "claimc", HEPTAGON + inner, 3, 7)
    assert kinds[-1] == "claim-c-violation-harvest"


def test_criterion_8_restart_path(monkeypatch):
    hexagon = [(41, 3), (19, 36), (-22, 34), (-40, -2), (-18, -36), (23, -33)]
    blockers = [(25, 16), (-1, 29), (-25, 13), (-24, -16), (2, -28), (26, -12)]
    pts = hexagon + blockers + [(1, 2), (-3, 5)]
    calls = {"n": 0}

    def first_call_non_minimal(ground, k):
        calls["n"] += 1
        if calls["n"] == 1:
            return list(hexagon)
        return k_minimal_convex_subset(ground, k)

    monkeypatch.setattr(
        holefinder.extractor, "k_minimal_convex_subset", first_call_non_minimal
    )
    result = extract(pts, ExtractionParams(ell=3, k=6))
    assert "restart" in result.trace_kinds()
    assert result.certificate is not None and result.certificate.verify(pts)


def test_criterion_8_terminal_harvest_path(tmp_path):
    kinds = _cli_trace_kinds(tmp_path, "terminal", NONAGON + TERMINAL_INNER, 4, 9)
    assert kinds[-1] == "terminal-harvest"
    assert kinds.count("alignment") == 2
    assert "mirror" in kinds


# --- 9. bound arithmetic ------------------------------------------------


def test_criterion_9_bound_arithmetic():
    assert es_bound(5) == 11
    assert es_bound(6) == 36
    assert threshold_k(2) == 4
    assert threshold_k(3) == 31
    assert threshold_k(4) == 400
    for k in (7, 9):
        assert es_kl_bound(k, 3).winner == "convex-position"
    assert es_kl_bound(9, 6).winner == "general-position"


# --- 10. perturbation preserves convex structure ------------------------


def _planted_collinear_set(seed):
    rng = random.Random(seed)
    pts = set()
    for _ in range(rng.randrange(1, 3)):
        a = (rng.randrange(-9, 10), rng.randrange(-9, 10))
        d = (rng.randrange(-3, 4), rng.randrange(-3, 4))
        if d == (0, 0):
            d = (1, 1)
        for t in range(rng.randrange(3, 5)):
            pts.add((a[0] + d[0] * t, a[1] + d[1] * t))
    while len(pts) < 8:
        pts.add((rng.randrange(-9, 10), rng.randrange(-9, 10)))
    return sorted(pts)[:12]


def test_criterion_10_perturbation():
    for seed in range(200):
        pts = _planted_collinear_set(seed)
        out = perturb_general_position(pts)
        assert is_general_position(out)
        n = len(pts)
        for i, j, k in itertools.combinations(range(n), 3):
            s = cross(pts[i], pts[j], pts[k])
            if s != 0:
                assert (s > 0) == (cross(out[i], out[j], out[k]) > 0)
        for size in range(3, n + 1):
            for idx in itertools.combinations(range(n), size):
                if is_convex_position([out[i] for i in idx]):
                    assert is_convex_position([pts[i] for i in idx])


# --- 11. consecutive layer sizes ----------------------------------------


def test_criterion_11_layer_inequality(batch_extractions):
    engineered = [
        (4, HEPTAGON + [(32, 10), (34, 21), (34, 35), (40, 24), (44, 28), (46, 18), (56, 22)], 7),
        (3, HEPTAGON + [(35, 24), (41, 25), (42, 26), (57, 11)], 7),
    ]
    engineered.append((4, NONAGON + TERMINAL_INNER, 9))
    results = [
        (ell, extract(pts, ExtractionParams(ell=ell, k=k)))
        for ell, pts, k in engineered
        if max_collinear(pts)[0] < ell
    ]
    results += [(ell, result) for ell, pts, result in batch_extractions]
    checked = 0
    for ell, result in results:
        kinds = result.trace_kinds()
        if "empty-arc" not in kinds or "window-harvest" in kinds:
            continue
        for step in result.trace:
            if step.kind != "layers":
                continue
            sizes = step.detail["sizes"]
            for i in range(1, len(sizes)):
                assert sizes[i - 1] < (2 * ell - 1) * (sizes[i] + 1)
            checked += 1
    assert checked >= 3
