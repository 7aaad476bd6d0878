"""Full analysis pipeline and deterministic report/DOT rendering.

Reports are plain dicts with a fixed key order, rationals rendered as
normalized "p/q" strings ("0" for zero), and no floating point anywhere, so
identical inputs produce byte-identical JSON.
"""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

from .cycles import (
    CrossCheckError,
    RationalCycle,
    branch_counts,
    canonical_cycle,
    floor_cycle,
    fundamental_cycle,
    giraud_delta,
    intersect,
    polar_cycle,
)
from .graph import (
    ResolutionGraph,
    analyze_vertices,
    embdim,
    multiplicity,
    reduce_graph,
    tyurina_components,
)
from .limittree import (
    ASSIGNMENT_CAP,
    LimitTree,
    count_assignments,
    limit_assignments,
    quotient,
)
from .polartype import (
    PolarType,
    assemble_from_heights,
    assemble_from_limit_tree,
    canonicalize,
    equals,
    expected_branch_counts,
)
from .realize import PlaneCurveModel, realize, verify
from .scott import scott_delta, scott_tree


def rational_str(x: Fraction | int) -> str:
    x = Fraction(x)
    if x == 0:
        return "0"
    return f"{x.numerator}/{x.denominator}"


def cycle_json(g: ResolutionGraph, cycle: RationalCycle) -> dict[str, str]:
    return {v: rational_str(cycle[v]) for v in g.vertices}


def polar_type_json(pt: PolarType) -> dict:
    return {
        "bunches": [
            {"vertex": b.vertex, "m": b.degree, "lines": b.lines} for b in pt.bunches
        ],
        "curves": [
            {
                "n": c.n,
                "site": {"kind": c.site_kind, "at": list(c.site), "height": c.site_height},
            }
            for c in pt.curves
        ],
        "contacts": [list(row) for row in pt.contact],
        "polar_multiplicity": pt.polar_multiplicity,
        "delta": pt.delta,
    }


def limit_tree_json(tree: LimitTree) -> dict:
    return {
        "classes": {root: list(members) for root, members in sorted(tree.classes.items())},
        "edges": [
            {"ends": list(e), "length": tree.length[e]} for e in tree.tree_edges
        ],
        "overlaps": [
            {"arms": [x, y], "at": z, "value": r}
            for (x, y, z), r in sorted(tree.overlap.items())
        ],
    }


def model_json(model: PlaneCurveModel) -> dict:
    return {
        "factored": model.factored_string(),
        "monomials": model.product_monomials(),
        "sheets": [
            {
                "component": mc.index,
                "kind": mc.kind,
                "branches": [
                    [[rational_str(e), rational_str(c)] for e, c in sheet.terms]
                    for sheet in mc.sheets
                ],
            }
            for mc in model.components
        ],
    }


def analyze_graph(
    g: ResolutionGraph,
    *,
    realize_model: bool = True,
    limit_trees: str = "one",
) -> dict:
    """Run the full pipeline on a valid graph and return the report dict.

    Raises CrossCheckError when any internal consistency assertion fails
    (route disagreement, delta disagreement, count mismatch, realization
    mismatch). Validation failures are the caller's responsibility.
    """
    if limit_trees not in ("one", "all"):
        raise ValueError(f"limit_trees must be 'one' or 'all', got {limit_trees!r}")
    va = analyze_vertices(g)
    z = fundamental_cycle(g)
    zk = canonical_cycle(g)
    zo = polar_cycle(g)
    counts = branch_counts(g)
    floor_zo = floor_cycle(g, zo)
    components = tyurina_components(g)
    reduction = reduce_graph(g)

    trees_json: list[dict] = []
    total_assignments = 0
    capped = False
    pt_limit: PolarType | None = None
    if not reduction.smooth:
        gr = reduction.graph
        assert gr is not None
        total_assignments = count_assignments(gr)
        capped = total_assignments > ASSIGNMENT_CAP
        wanted = ASSIGNMENT_CAP if limit_trees == "all" else 1
        assignments = limit_assignments(gr, cap=wanted, seed=0)
        if limit_trees != "all":
            assignments = assignments[:1]
        for a in assignments:
            tree = quotient(gr, a)
            trees_json.append(limit_tree_json(tree))
            pt_a = assemble_from_limit_tree(g, a)
            if pt_limit is None:
                pt_limit = pt_a
            elif not equals(pt_a, pt_limit):
                raise CrossCheckError("limit assignments yield distinct polar types")
    else:
        pt_limit = assemble_from_limit_tree(g)

    pt_heights = assemble_from_heights(g)
    assert pt_limit is not None
    if not equals(pt_limit, pt_heights):
        raise CrossCheckError("assembly routes disagree")

    if expected_branch_counts(pt_heights, g) != counts:
        raise CrossCheckError("assembled type does not reproduce the branch counts")

    delta_cycles = giraud_delta(g)
    delta_deformation = scott_delta(g)
    if delta_cycles != delta_deformation:
        raise CrossCheckError(
            f"delta mismatch: cycles {delta_cycles}, deformation {delta_deformation}"
        )
    pt = replace(canonicalize(pt_limit), delta=delta_deformation)
    tree = scott_tree(g)

    model_block = None
    verification_block = {"ok": True, "checked_pairs": 0, "mismatches": []}
    if realize_model:
        model = realize(pt)
        report = verify(model, pt)
        model_block = model_json(model)
        verification_block = {
            "ok": report.ok,
            "checked_pairs": report.checked_pairs,
            "mismatches": list(report.mismatches),
        }
        if not report.ok:
            raise CrossCheckError(
                "realized model failed blow-up verification: "
                + "; ".join(report.mismatches[:3])
            )

    return {
        "graph": {
            "vertices": list(g.vertices),
            "weights": {v: g.weight[v] for v in g.vertices},
            "edges": [list(e) for e in g.edges],
        },
        "validation": {"ok": True, "violations": []},
        "heights": {v: va.height[v] for v in g.vertices},
        "tangent_cone": {
            "vertices": list(va.tc_vertices),
            "cone_degree": {v: va.cone_degree[v] for v in va.tc_vertices},
            "central_vertices": list(va.central_vertices),
            "central_arcs": [list(e) for e in va.central_arcs],
        },
        "multiplicity": multiplicity(g),
        "embdim": embdim(g),
        "fundamental_cycle_self_intersection": rational_str(intersect(g, z, z)),
        "cycles": {
            "canonical": cycle_json(g, zk),
            "polar": cycle_json(g, zo),
            "polar_floor": cycle_json(g, floor_zo),
            "branch_counts": {v: counts[v] for v in g.vertices},
        },
        "tyurina_components": [
            {
                "vertices": list(c.vertices),
                "weights": {v: c.weight[v] for v in c.vertices},
                "multiplicity": multiplicity(c),
            }
            for c in components
        ],
        "reduction": {
            "smooth": reduction.smooth,
            "weights": None
            if reduction.smooth
            else {v: reduction.graph.weight[v] for v in reduction.graph.vertices},
        },
        "limit_trees": {
            "total_assignments": total_assignments,
            "enumerated": len(trees_json),
            "capped": capped,
            "trees": trees_json,
        },
        "polar_type": polar_type_json(pt),
        "scott_tree": tree.to_json(),
        "delta": {"cycles": delta_cycles, "deformation": delta_deformation},
        "model": model_block,
        "verification": verification_block,
    }


# --- DOT exports -----------------------------------------------------------------


def export_dot(g: ResolutionGraph, what: str) -> str:
    if what == "graph":
        return _dot_graph(g)
    if what == "limit-tree":
        return _dot_limit_tree(g)
    if what == "scott":
        return _dot_scott(g)
    raise ValueError(f"unknown export target {what!r}")


def _dot_graph(g: ResolutionGraph) -> str:
    va = analyze_vertices(g)
    tc = set(va.tc_vertices)
    lines = ["graph resolution {"]
    for v in g.vertices:
        shape = "star" if v in tc else "circle"
        lines.append(
            f'  "{v}" [label="{v}:w={g.weight[v]},s={va.height[v]}", shape={shape}];'
        )
    for a, b in g.edges:
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_limit_tree(g: ResolutionGraph) -> str:
    reduction = reduce_graph(g)
    if reduction.smooth:
        return "graph limit_tree {\n}\n/* smooth reduction: no limit tree */\n"
    gr = reduction.graph
    assert gr is not None
    tree = quotient(gr, limit_assignments(gr, cap=1, seed=0)[0])
    lines = ["graph limit_tree {"]
    for root in sorted(tree.classes):
        lines.append(f'  "{root}" [shape=star];')
    for e in tree.tree_edges:
        lines.append(f'  "{e[0]}" -- "{e[1]}" [label="l={tree.length[e]}"];')
    lines.append("}")
    overlaps = {
        f"{x},{y};{z}": r for (x, y, z), r in sorted(tree.overlap.items())
    }
    sidecar = ", ".join(f'"{k}": {v}' for k, v in overlaps.items())
    return "\n".join(lines) + "\n/* overlaps {" + sidecar + "} */\n"


def _dot_scott(g: ResolutionGraph) -> str:
    tree = scott_tree(g)
    lines = ["graph scott {"]
    counter = [0]

    def walk(node, parent_id: str | None) -> None:
        node_id = f"s{counter[0]}"
        counter[0] += 1
        lines.append(f'  "{node_id}" [label="degree {node.degree}"];')
        if parent_id is not None:
            lines.append(f'  "{parent_id}" -- "{node_id}";')
        for child in node.children:
            walk(child, node_id)

    walk(tree, None)
    lines.append("}")
    return "\n".join(lines) + "\n"
