"""Equisingularity type of the generic polar curve and discriminant.

The type consists of line bunches (one per tangent-cone vertex of cone
degree at least 2), a list of A_n components, and a symmetric contact
matrix over all components (individual lines included). Two independent
assembly routes are provided and must agree:

* ``assemble_from_limit_tree``: one A_l component per limit-tree edge of the
  reduced graph, contacts from overlaps and tree-path minima;
* ``assemble_from_heights``: components read off the per-vertex branch
  counts at central vertices and arcs, contacts from the minimum height
  along connecting chains.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

from .cycles import CrossCheckError, branch_counts
from .graph import (
    ResolutionGraph,
    analyze_vertices,
    heights,
    multiplicity,
    reduce_graph,
    require_valid,
)
from .limittree import LimitAssignment, chain, limit_assignments, quotient


@dataclass(frozen=True)
class Bunch:
    """Lines contributed by one tangent-cone vertex of cone degree m >= 2."""

    vertex: str
    degree: int

    @property
    def lines(self) -> int:
        return 2 * self.degree - 2


@dataclass(frozen=True)
class AnCurve:
    """One A_n component, sited at a central vertex or a central arc.

    site_kind is "vertex" or "arc"; site is a 1- or 2-tuple of vertex names.
    n = 2s - 1 for vertex sites and n = 2s for arc sites, where s is the
    site height. ``limit_edge`` records the originating limit-tree edge when
    the component was assembled by that route.
    """

    n: int
    site_kind: str
    site: tuple[str, ...]
    site_height: int
    limit_edge: tuple[str, str] | None = None

    def __post_init__(self):
        expected = 2 * self.site_height if self.site_kind == "arc" else 2 * self.site_height - 1
        if self.n != expected:
            raise CrossCheckError(
                f"A_{self.n} at {self.site_kind} site of height {self.site_height}"
            )


@dataclass(frozen=True)
class PolarType:
    """Full equisingularity report.

    Components are indexed lines-first (bunches in vertex order, lines within
    a bunch consecutive) then curves; ``contact`` is the symmetric matrix in
    that order with 0 on the diagonal. Contact involving any line is 1.
    """

    bunches: tuple[Bunch, ...]
    curves: tuple[AnCurve, ...]
    contact: tuple[tuple[int, ...], ...]
    polar_multiplicity: int
    delta: int | None = None

    @property
    def line_count(self) -> int:
        return sum(b.lines for b in self.bunches)

    def component_labels(self) -> list[str]:
        labels = []
        for b in self.bunches:
            labels += [f"line:{b.vertex}.{i+1}" for i in range(b.lines)]
        labels += [f"A{c.n}@{','.join(c.site)}" for c in self.curves]
        return labels

    def curve_contact(self, i: int, j: int) -> int:
        """Contact between the i-th and j-th curves (curve indexing)."""
        off = self.line_count
        return self.contact[off + i][off + j]


def polar_multiplicity(pt: PolarType) -> int:
    """Total lines plus twice the number of A_n components."""
    return pt.line_count + 2 * len(pt.curves)


def _site_of_chain(g: ResolutionGraph, path: list[str], s: dict[str, int]) -> AnCurve:
    """Site of the component attached to a limit-tree edge.

    The chain between two height-1 vertices joined by a tree edge climbs by
    one per step, crosses once, and descends; its top is the middle vertex
    (odd length, a central vertex) or the middle edge (even length, a
    central arc).
    """
    l = len(path)
    if l % 2 == 1:
        mid = path[l // 2]
        return AnCurve(
            n=l, site_kind="vertex", site=(mid,), site_height=s[mid],
        )
    a, b = path[l // 2 - 1], path[l // 2]
    site = tuple(sorted((a, b)))
    return AnCurve(n=l, site_kind="arc", site=site, site_height=s[a])


def _finish(
    g: ResolutionGraph,
    bunches: tuple[Bunch, ...],
    curves: list[AnCurve],
    curve_contact: dict[tuple[int, int], int],
) -> PolarType:
    """Assemble the full contact matrix (lines all at contact 1) and validate."""
    curves_t = tuple(curves)
    nlines = sum(b.lines for b in bunches)
    n = nlines + len(curves_t)
    matrix = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if i < nlines or j < nlines:
                matrix[i][j] = 1
            else:
                a, b = i - nlines, j - nlines
                key = (min(a, b), max(a, b))
                matrix[i][j] = curve_contact[key]
    pm = nlines + 2 * len(curves_t)
    expected = 2 * multiplicity(g) - 2
    if pm != expected:
        raise CrossCheckError(f"polar multiplicity {pm} != 2*mult-2 = {expected}")
    pt = PolarType(
        bunches=bunches,
        curves=curves_t,
        contact=tuple(tuple(row) for row in matrix),
        polar_multiplicity=pm,
    )
    _validate_contacts(pt)
    return pt


def _validate_contacts(pt: PolarType) -> None:
    n = len(pt.contact)
    off = pt.line_count
    for i in range(off):
        for j in range(n):
            if i != j and pt.contact[i][j] != 1:
                raise CrossCheckError("line component with contact above 1")
    for i, j in itertools.combinations(range(off, n), 2):
        c = pt.contact[i][j]
        bound = min(pt.curves[i - off].site_height, pt.curves[j - off].site_height)
        if not 1 <= c <= bound:
            raise CrossCheckError(
                f"contact({i},{j}) = {c} outside [1, {bound}] (site-height bound)"
            )
    # triples through a line are trivially ultrametric (every line contact is 1)
    for i, j, k in itertools.combinations(range(off, n), 3):
        a, b, c = pt.contact[i][j], pt.contact[j][k], pt.contact[i][k]
        if c < min(a, b) or a < min(b, c) or b < min(a, c):
            raise CrossCheckError("contact matrix violates the ultrametric inequality")


def _bunches_of(g: ResolutionGraph) -> tuple[Bunch, ...]:
    va = analyze_vertices(g)
    return tuple(
        Bunch(v, va.cone_degree[v]) for v in va.tc_vertices if va.cone_degree[v] >= 2
    )


def assemble_from_limit_tree(
    g: ResolutionGraph, assignment: LimitAssignment | None = None
) -> PolarType:
    """Polar type via the limit tree of the reduced graph.

    One A_l component per tree edge (l the chain length); contacts between
    components on adjacent edges are the overlaps, on non-adjacent edges the
    minimum of the adjacent contacts along the connecting path of edges.
    """
    require_valid(g)
    bunches = _bunches_of(g)
    reduction = reduce_graph(g)
    if reduction.smooth:
        return _finish(g, bunches, [], {})
    gr = reduction.graph
    assert gr is not None
    if assignment is None:
        assignment = limit_assignments(gr, cap=1, seed=0)[0]
    tree = quotient(gr, assignment)
    s = heights(gr)

    curves: list[AnCurve] = []
    edge_of: list[tuple[str, str]] = []
    for e in tree.tree_edges:
        path = chain(gr, e[0], e[1])
        curve = _site_of_chain(gr, path, s)
        curves.append(replace(curve, limit_edge=e))
        edge_of.append(e)

    pair_contact: dict[tuple[int, int], int] = {}
    for i, j in itertools.combinations(range(len(edge_of)), 2):
        seq = _edge_path(tree.tree_edges, edge_of[i], edge_of[j])
        value = None
        for e, f in zip(seq, seq[1:]):
            (z,) = set(e) & set(f)
            x = e[0] if e[1] == z else e[1]
            y = f[0] if f[1] == z else f[1]
            step = tree.rho(x, y, z)
            value = step if value is None else min(value, step)
        assert value is not None
        pair_contact[(i, j)] = value
    return _finish(g, bunches, curves, pair_contact)


def _edge_path(
    edges: tuple[tuple[str, str], ...], e: tuple[str, str], f: tuple[str, str]
) -> list[tuple[str, str]]:
    """The sequence of tree edges from e to f, both included, consecutive
    edges sharing a vertex. Computed from the unique vertex path in the tree
    between the near endpoints of e and f."""
    adj: dict[str, list[str]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    def vertex_path(x: str, y: str) -> list[str]:
        parent: dict[str, str | None] = {x: None}
        stack = [x]
        while stack:
            v = stack.pop()
            if v == y:
                break
            for w in adj[v]:
                if w not in parent:
                    parent[w] = v
                    stack.append(w)
        path = [y]
        while path[-1] != x:
            nxt = parent[path[-1]]
            assert nxt is not None
            path.append(nxt)
        path.reverse()
        return path

    best: list[str] | None = None
    for x in e:
        for y in f:
            p = vertex_path(x, y)
            if set(p) & set(e) == {x} and set(p) & set(f) == {y}:
                if best is None or len(p) < len(best):
                    best = p
    assert best is not None
    seq = [e]
    for a, b in zip(best, best[1:]):
        seq.append(tuple(sorted((a, b))))
    seq.append(f)
    return [edge for k, edge in enumerate(seq) if k == 0 or edge != seq[k - 1]]


def assemble_from_heights(g: ResolutionGraph) -> PolarType:
    """Polar type read directly off branch counts, central vertices and arcs.

    At a tangent-cone vertex the 2m - 2 bunch lines absorb that many
    branches; every central arc carries one A_{2s}; the remaining branches
    at a central vertex of height s pair into A_{2s-1} components. A parity
    failure in that pairing is a hard error.
    """
    require_valid(g)
    va = analyze_vertices(g)
    counts = branch_counts(g)
    bunches = _bunches_of(g)

    remaining = dict(counts)
    for v in va.tc_vertices:
        lines = 2 * (va.cone_degree[v] - 1)
        remaining[v] -= lines
    curves: list[AnCurve] = []
    for a, b in va.central_arcs:
        sa = va.height[a]
        curves.append(AnCurve(n=2 * sa, site_kind="arc", site=(a, b), site_height=sa))
        remaining[a] -= 1
        remaining[b] -= 1
    for v in g.vertices:
        left = remaining[v]
        if left == 0:
            continue
        if left < 0 or left % 2 != 0 or v not in va.central_vertices:
            raise CrossCheckError(
                f"cannot pair {counts[v]} branches at {v} into components"
            )
        s = va.height[v]
        for _ in range(left // 2):
            curves.append(AnCurve(n=2 * s - 1, site_kind="vertex", site=(v,), site_height=s))
    curves.sort(key=lambda c: (c.n, c.site_kind, c.site))

    support = {i: c.site[0] for i, c in enumerate(curves)}
    pair_contact: dict[tuple[int, int], int] = {}
    for i, j in itertools.combinations(range(len(curves)), 2):
        path = chain(g, support[i], support[j])
        pair_contact[(i, j)] = min(va.height[v] for v in path)
    return _finish(g, bunches, curves, pair_contact)


def expected_branch_counts(pt: PolarType, g: ResolutionGraph) -> dict[str, int]:
    """Per-vertex branch totals implied by the assembled type.

    2(m - 1) at each bunch vertex, one per arc endpoint, two per component
    centered at a vertex. Must reproduce the cycle-theoretic counts.
    """
    totals = {v: 0 for v in g.vertices}
    for b in pt.bunches:
        totals[b.vertex] += 2 * (b.degree - 1)
    for c in pt.curves:
        if c.site_kind == "arc":
            totals[c.site[0]] += 1
            totals[c.site[1]] += 1
        else:
            totals[c.site[0]] += 2
    return totals


# --- canonical form ------------------------------------------------------------


def canonicalize(pt: PolarType) -> PolarType:
    """Reorder components into a canonical order.

    Lines are already grouped by bunch (their contact rows are identical);
    curves are sorted by (n, refined colour, site) where colours are
    iteratively refined against the contact matrix. Components left tied
    after refinement are mutually interchangeable, which is asserted.
    """
    ncurves = len(pt.curves)
    off = pt.line_count
    colors = [(pt.curves[i].n,) for i in range(ncurves)]
    for _ in range(ncurves + 1):
        keys = []
        for i in range(ncurves):
            profile = sorted(
                (pt.contact[off + i][off + j], colors[j]) for j in range(ncurves) if j != i
            )
            keys.append((colors[i], tuple(profile)))
        ranking = sorted(set(keys))
        new_colors = [(ranking.index(k),) for k in keys]
        if new_colors == colors:
            break
        colors = new_colors
    def sort_key(i: int):
        return (pt.curves[i].n, colors[i], pt.curves[i].site_kind, pt.curves[i].site)

    order = sorted(range(ncurves), key=sort_key)
    # components tied on the full key must be interchangeable: identical
    # contact rows outside the pair (their mutual contact is symmetric)
    for a, b in itertools.combinations(range(ncurves), 2):
        if sort_key(a) == sort_key(b):
            for k in range(ncurves):
                if k in (a, b):
                    continue
                if pt.contact[off + a][off + k] != pt.contact[off + b][off + k]:
                    raise CrossCheckError("tied components with distinct contact rows")
    perm = list(range(off)) + [off + i for i in order]
    matrix = tuple(tuple(pt.contact[i][j] for j in perm) for i in perm)
    return PolarType(
        bunches=tuple(sorted(pt.bunches, key=lambda b: b.vertex)),
        curves=tuple(pt.curves[i] for i in order),
        contact=matrix,
        polar_multiplicity=pt.polar_multiplicity,
        delta=pt.delta,
    )


def equals(pt1: PolarType, pt2: PolarType) -> bool:
    """Equality of equisingularity data (sites included, delta ignored)."""
    a, b = canonicalize(pt1), canonicalize(pt2)
    return (
        a.bunches == b.bunches
        and [(c.n, c.site_kind, c.site) for c in a.curves]
        == [(c.n, c.site_kind, c.site) for c in b.curves]
        and a.contact == b.contact
        and a.polar_multiplicity == b.polar_multiplicity
    )
