"""Seeded random graph generation and the cross-module invariant suite.

Every theorem the package relies on is rechecked here on demand: branch
count integrality, the restriction of the polar cycle to blow-up
components, agreement of the two delta routes and the two assembly routes,
the floor-cycle minimality oracle, the limit-tree round trip, and the
blow-up verification of realized models.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import lcm

from . import graph as graphmod
from .cycles import (
    CrossCheckError,
    RationalCycle,
    branch_counts,
    canonical_cycle,
    floor_cycle,
    fundamental_cycle,
    giraud_delta,
    intersect,
    pair_with_component,
    polar_cycle,
)
from .graph import (
    ResolutionGraph,
    central_elements,
    graph_to_text,
    heights,
    isomorphic,
    multiplicity,
    reduce_graph,
    tangent_cone_data,
    tyurina_components,
    validate_minimal,
)
from .limittree import limit_assignments, quotient, reconstruct_from_tree
from .polartype import (
    assemble_from_heights,
    assemble_from_limit_tree,
    canonicalize,
    equals,
    expected_branch_counts,
    polar_multiplicity,
)
from .realize import realize, verify
from .scott import scott_delta, scott_tree

ROUND_TRIP_CAP = 24
ROUTE_CAP = 200
ORACLE_MAX_VERTICES = 6


def gen_random_minimal(seed: int, max_vertices: int) -> ResolutionGraph:
    """Deterministic random valid graph: a uniform labeled tree with weights
    max(2, v) plus a small excess biased toward zero, so both reduced and
    non-reduced graphs occur."""
    if max_vertices < 1:
        raise ValueError("max_vertices must be at least 1")
    rng = random.Random(seed)
    n = rng.randint(1, max_vertices)
    names = [f"n{i:02d}" for i in range(n)]
    edges: list[tuple[str, str]] = []
    if n == 2:
        edges.append((names[0], names[1]))
    elif n > 2:
        seq = [rng.randrange(n) for _ in range(n - 2)]
        degree = [1] * n
        for x in seq:
            degree[x] += 1
        import heapq

        leaves = [i for i in range(n) if degree[i] == 1]
        heapq.heapify(leaves)
        for x in seq:
            leaf = heapq.heappop(leaves)
            edges.append((names[leaf], names[x]))
            degree[leaf] -= 1
            degree[x] -= 1
            if degree[x] == 1:
                heapq.heappush(leaves, x)
        a, b = heapq.heappop(leaves), heapq.heappop(leaves)
        edges.append((names[a], names[b]))
    valence = {name: 0 for name in names}
    for a, b in edges:
        valence[a] += 1
        valence[b] += 1
    weights = {}
    for name in names:
        excess = rng.choices([0, 1, 2, 3], weights=[8, 4, 2, 1])[0]
        weights[name] = max(2, valence[name]) + excess
    g = ResolutionGraph.build(weights, edges)
    assert validate_minimal(g) == []
    return g


def brute_force_floor(g: ResolutionGraph, d: RationalCycle) -> dict[str, int]:
    """Exhaustive coefficientwise minimum over the box [0, 2*max(w)]^V.

    Enumerates with numpy in chunks; the componentwise minimum of all valid
    points must itself be valid (the constraint set is closed under min) and
    is returned. Exact integer arithmetic throughout: the rational targets
    are scaled by their common denominator.
    """
    import numpy as np

    n = len(g.vertices)
    hi = 2 * max(g.weight.values())
    m = np.array(graphmod.negated_intersection_matrix(g), dtype=np.int64)
    targets = [pair_with_component(g, d, v) for v in g.vertices]
    scale = lcm(*(t.denominator for t in targets)) if targets else 1
    # V . L_x <= t_x  <=>  (M V)_x >= -t_x, scaled to integers
    rhs = np.array([int(-t * scale) for t in targets], dtype=np.int64)
    best: np.ndarray | None = None
    tail = np.indices((hi + 1,) * (n - 1), dtype=np.int64).reshape(n - 1, -1).T \
        if n > 1 else np.zeros((1, 0), dtype=np.int64)
    for v0 in range(hi + 1):
        block = np.concatenate(
            [np.full((tail.shape[0], 1), v0, dtype=np.int64), tail], axis=1
        )
        prod = block @ m
        mask = (prod * scale >= rhs).all(axis=1)
        if mask.any():
            local = block[mask].min(axis=0)
            best = local if best is None else np.minimum(best, local)
    assert best is not None, "the box contains no valid cycle"
    coeffs = {v: int(best[i]) for i, v in enumerate(g.vertices)}
    check = RationalCycle.of(g, coeffs)
    for i, v in enumerate(g.vertices):
        if pair_with_component(g, check, v) > targets[i]:
            raise CrossCheckError("componentwise minimum of valid cycles is not valid")
    return coeffs


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def run_graph_checks(
    g: ResolutionGraph,
    *,
    realize_models: bool = True,
    oracle: bool = True,
    route_cap: int = ROUTE_CAP,
    round_trip_cap: int = ROUND_TRIP_CAP,
    skip: frozenset[str] = frozenset(),
) -> list[CheckResult]:
    """Run every cross-module invariant on one valid graph."""
    results: list[CheckResult] = []

    def check(name: str, fn) -> None:
        if name in skip:
            return
        try:
            detail = fn()
            results.append(CheckResult(name, True, detail or ""))
        except Exception as exc:  # noqa: BLE001 - failures become findings
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))

    def c_fundamental():
        z = fundamental_cycle(g)
        assert -intersect(g, z, z) == multiplicity(g)
        return f"-Z.Z = {multiplicity(g)}"

    def c_counts_formula():
        s = heights(g)
        adj = g.adjacency()
        counts = branch_counts(g)
        for v in g.vertices:
            direct = s[v] * g.weight[v] + g.weight[v] - 2 - sum(s[w] for w in adj[v])
            assert counts[v] == direct, f"{v}: {counts[v]} != {direct}"
        return f"total {sum(counts.values())}"

    def c_restriction():
        zo = polar_cycle(g)
        for comp in tyurina_components(g):
            zo_c = polar_cycle(comp)
            for v in comp.vertices:
                assert pair_with_component(g, zo, v) == pair_with_component(
                    comp, zo_c, v
                ), f"restriction fails at {v}"
        return ""

    def c_heights_restriction():
        s = heights(g)
        for comp in tyurina_components(g):
            s_c = heights(comp)
            for v in comp.vertices:
                assert s[v] == s_c[v] + 1, f"height restriction fails at {v}"
        return ""

    def c_tyurina():
        tc = set(tangent_cone_data(g)[0])
        for comp in tyurina_components(g):
            assert validate_minimal(comp) == []
            boundary = sum(
                1 for a, b in g.edges if (a in comp.vertices) != (b in comp.vertices)
            )
            assert boundary == multiplicity(comp), "boundary edges != multiplicity"
            assert not set(comp.vertices) & tc
        return ""

    def c_reduce_preserves():
        red = reduce_graph(g)
        if red.smooth:
            assert len(g.vertices) == 1
            return "smooth"
        gr = red.graph
        assert tangent_cone_data(gr)[0] == tangent_cone_data(g)[0]
        assert heights(gr) == heights(g)
        assert central_elements(gr) == central_elements(g)
        comps_g = sorted(c.vertices for c in tyurina_components(g))
        comps_r = sorted(c.vertices for c in tyurina_components(gr))
        assert comps_g == comps_r
        return ""

    def c_floor():
        zo = polar_cycle(g)
        v = floor_cycle(g, zo)
        assert v.is_integral()
        for x in g.vertices:
            assert pair_with_component(g, v, x) <= pair_with_component(g, zo, x)
        return ""

    def c_floor_oracle():
        if len(g.vertices) > ORACLE_MAX_VERTICES:
            return "skipped (graph too large)"
        zo = polar_cycle(g)
        incremental = floor_cycle(g, zo)
        brute = brute_force_floor(g, zo)
        assert {v: int(c) for v, c in incremental.coefficients.items()} == brute
        return "matched exhaustive search"

    def c_deltas():
        a, b = giraud_delta(g), scott_delta(g)
        assert a == b, f"cycle delta {a} != deformation delta {b}"
        assert a >= 1
        return f"delta = {a}"

    def c_scott_shape():
        tree = scott_tree(g)
        assert tree.depth() == max(heights(g).values())
        assert all(d >= 2 for d in tree.degrees())
        return f"degrees {sorted(tree.degrees(), reverse=True)}"

    pt_holder: dict[str, object] = {}

    def c_routes():
        pt_h = assemble_from_heights(g)
        red = reduce_graph(g)
        if red.smooth:
            pt_l = assemble_from_limit_tree(g)
            assert equals(pt_l, pt_h)
            pt_holder["pt"] = canonicalize(pt_l)
            return "smooth reduction"
        assignments = limit_assignments(red.graph, cap=route_cap, seed=0)
        first = None
        for a in assignments:
            pt_l = assemble_from_limit_tree(g, a)
            assert equals(pt_l, pt_h), "limit route disagrees with heights route"
            if first is None:
                first = pt_l
            else:
                assert equals(pt_l, first), "limit assignments disagree"
        pt_holder["pt"] = canonicalize(first if first is not None else pt_h)
        return f"{len(assignments)} assignments agree"

    def c_branch_count_match():
        pt = pt_holder.get("pt") or canonicalize(assemble_from_heights(g))
        assert expected_branch_counts(pt, g) == branch_counts(g)
        return ""

    def c_polar_multiplicity():
        pt = pt_holder.get("pt") or canonicalize(assemble_from_heights(g))
        assert polar_multiplicity(pt) == 2 * multiplicity(g) - 2
        return f"pm = {polar_multiplicity(pt)}"

    def c_round_trip():
        red = reduce_graph(g)
        if red.smooth:
            return "smooth reduction"
        gr = red.graph
        assignments = limit_assignments(gr, cap=round_trip_cap, seed=0)
        for a in assignments:
            rebuilt = reconstruct_from_tree(quotient(gr, a))
            assert isomorphic(rebuilt, gr), "round trip lost the graph"
        return f"{len(assignments)} assignments round-trip"

    def c_realization():
        pt = pt_holder.get("pt") or canonicalize(assemble_from_heights(g))
        model = realize(pt)
        report = verify(model, pt)
        assert report.ok, "; ".join(report.mismatches[:3])
        assert model.y_degree() == pt.polar_multiplicity
        assert model.origin_order() == pt.polar_multiplicity
        return f"{report.checked_pairs} sheet pairs verified"

    def c_canonical():
        canonical_cycle(g)  # verifies its defining equations internally
        return ""

    check("fundamental-cycle", c_fundamental)
    check("canonical-cycle", c_canonical)
    check("branch-counts", c_counts_formula)
    check("polar-cycle-restriction", c_restriction)
    check("heights-restriction", c_heights_restriction)
    check("tyurina-components", c_tyurina)
    check("reduce-preserves", c_reduce_preserves)
    check("floor-cycle", c_floor)
    if oracle:
        check("floor-oracle", c_floor_oracle)
    check("delta-agreement", c_deltas)
    check("scott-tree-shape", c_scott_shape)
    check("route-agreement", c_routes)
    check("branch-count-match", c_branch_count_match)
    check("polar-multiplicity", c_polar_multiplicity)
    check("limit-tree-round-trip", c_round_trip)
    if realize_models:
        check("realization", c_realization)
    return results


def first_failure(results: list[CheckResult]) -> CheckResult | None:
    for r in results:
        if not r.ok:
            return r
    return None


def shrink(g: ResolutionGraph, failing_check: str, **check_kwargs) -> ResolutionGraph:
    """Minimize a failing graph by deleting leaves and lowering excess weights
    while the same check keeps failing."""

    def still_fails(candidate: ResolutionGraph) -> bool:
        if validate_minimal(candidate):
            return False
        results = run_graph_checks(candidate, **check_kwargs)
        bad = first_failure(results)
        return bad is not None and bad.name == failing_check

    current = g
    changed = True
    while changed:
        changed = False
        for v in current.vertices:
            if current.valence(v) <= 1 and len(current.vertices) > 1:
                weights = {w: current.weight[w] for w in current.vertices if w != v}
                edges = [e for e in current.edges if v not in e]
                candidate = ResolutionGraph.build(weights, edges)
                if still_fails(candidate):
                    current = candidate
                    changed = True
                    break
        if changed:
            continue
        for v in current.vertices:
            floor_w = max(2, current.valence(v))
            if current.weight[v] > floor_w:
                weights = dict(current.weight)
                weights[v] -= 1
                candidate = ResolutionGraph.build(weights, current.edges)
                if still_fails(candidate):
                    current = candidate
                    changed = True
                    break
    return current


@dataclass(frozen=True)
class FuzzFailure:
    case_index: int
    seed: int
    check: str
    detail: str
    graph_text: str
    reproducer_text: str


@dataclass(frozen=True)
class FuzzSummary:
    passed: bool
    cases: int
    reduced_seen: int
    nonreduced_seen: int
    failure: FuzzFailure | None


def fuzz_sweep(
    seed: int,
    count: int,
    size: int,
    *,
    realize_models: bool = True,
    skip: frozenset[str] = frozenset(),
) -> FuzzSummary:
    """Deterministic sweep: case i uses seed + i. Stops at the first failure
    and attaches a minimized reproducer."""
    reduced_seen = 0
    nonreduced_seen = 0
    for i in range(count):
        case_seed = seed + i
        g = gen_random_minimal(case_seed, size)
        tc, degrees = tangent_cone_data(g)
        if all(degrees[v] == 1 for v in tc):
            reduced_seen += 1
        else:
            nonreduced_seen += 1
        results = run_graph_checks(g, realize_models=realize_models, skip=skip)
        bad = first_failure(results)
        if bad is not None:
            small = shrink(g, bad.name, realize_models=realize_models, skip=skip)
            return FuzzSummary(
                passed=False,
                cases=i + 1,
                reduced_seen=reduced_seen,
                nonreduced_seen=nonreduced_seen,
                failure=FuzzFailure(
                    case_index=i,
                    seed=case_seed,
                    check=bad.name,
                    detail=bad.detail,
                    graph_text=graph_to_text(g),
                    reproducer_text=graph_to_text(small),
                ),
            )
    return FuzzSummary(
        passed=True,
        cases=count,
        reduced_seen=reduced_seen,
        nonreduced_seen=nonreduced_seen,
        failure=None,
    )
