"""Limit trees: quotients of a reduced graph by a limit equivalence.

A limit assignment ties every vertex of height s >= 2 to exactly one
neighbour of height s - 1 (its parent). The classes of the induced
equivalence each contain one height-1 vertex; the quotient is a tree on the
height-1 vertices carrying a length per edge and an overlap per adjacent
edge pair. That data determines the reduced graph up to isomorphism, and
``reconstruct`` inverts the construction.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .graph import ResolutionGraph, heights, require_valid

ASSIGNMENT_CAP = 10_000


class ReconstructError(Exception):
    """Limit-tree data not realizable as shared chain prefixes."""


def chain(g: ResolutionGraph, x: str, y: str) -> list[str]:
    """The unique path from x to y, endpoints included."""
    adj = g.adjacency()
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
        prev = parent[path[-1]]
        assert prev is not None
        path.append(prev)
    path.reverse()
    return path


def chain_length(g: ResolutionGraph, x: str, y: str) -> int:
    """Number of vertices on the chain, endpoints included."""
    return len(chain(g, x, y))


def overlap(g: ResolutionGraph, x: str, y: str, z: str) -> int:
    """Number of vertices shared by the chains from x to z and from y to z."""
    return len(set(chain(g, x, z)) & set(chain(g, y, z)))


@dataclass(frozen=True)
class LimitAssignment:
    """Parent choice for every vertex of height >= 2."""

    parent: dict[str, str]


def parent_candidates(g: ResolutionGraph) -> dict[str, tuple[str, ...]]:
    """For each vertex of height >= 2, its neighbours one level below."""
    s = heights(g)
    adj = g.adjacency()
    return {
        v: tuple(w for w in adj[v] if s[w] == s[v] - 1)
        for v in g.vertices
        if s[v] >= 2
    }


def count_assignments(g: ResolutionGraph) -> int:
    total = 1
    for options in parent_candidates(g).values():
        total *= len(options)
    return total


def limit_assignments(
    g: ResolutionGraph, cap: int | None = None, seed: int = 0
) -> list[LimitAssignment]:
    """All limit assignments (full Cartesian product of parent choices).

    With ``cap`` set and more assignments than the cap, a deterministic
    seeded sample of ``cap`` assignments is returned instead.
    """
    candidates = parent_candidates(g)
    keys = sorted(candidates)
    total = count_assignments(g)
    if cap is not None and total > cap:
        rng = random.Random(seed)
        sampled = []
        for _ in range(cap):
            sampled.append(
                LimitAssignment({k: rng.choice(candidates[k]) for k in keys})
            )
        return sampled
    result = []
    for combo in itertools.product(*(candidates[k] for k in keys)):
        result.append(LimitAssignment(dict(zip(keys, combo))))
    return result


@dataclass(frozen=True)
class LimitTree:
    """Quotient tree with per-edge lengths and per-adjacent-pair overlaps.

    ``classes`` maps each height-1 vertex to its equivalence class;
    ``length`` is keyed by sorted tree edges; ``overlap`` is keyed by
    (x, y, z) with x < y, the shared vertex z last.
    """

    classes: dict[str, tuple[str, ...]]
    tree_edges: tuple[tuple[str, str], ...]
    length: dict[tuple[str, str], int]
    overlap: dict[tuple[str, str, str], int]

    def rho(self, x: str, y: str, z: str) -> int:
        a, b = sorted((x, y))
        return self.overlap[(a, b, z)]


def quotient(g: ResolutionGraph, assignment: LimitAssignment) -> LimitTree:
    """Build the limit tree of a reduced graph under one assignment."""
    s = heights(g)
    roots = [v for v in g.vertices if s[v] == 1]
    rep: dict[str, str] = {}

    def root_of(v: str) -> str:
        seen = [v]
        while s[seen[-1]] > 1:
            seen.append(assignment.parent[seen[-1]])
        return seen[-1]

    for v in g.vertices:
        rep[v] = root_of(v)
    classes = {r: tuple(sorted(v for v in g.vertices if rep[v] == r)) for r in roots}
    tree_edges = set()
    for a, b in g.edges:
        if rep[a] != rep[b]:
            tree_edges.add(tuple(sorted((rep[a], rep[b]))))
    edges = tuple(sorted(tree_edges))
    length = {e: chain_length(g, e[0], e[1]) for e in edges}
    overlaps: dict[tuple[str, str, str], int] = {}
    incident: dict[str, list[str]] = {r: [] for r in roots}
    for a, b in edges:
        incident[a].append(b)
        incident[b].append(a)
    for z, ends in incident.items():
        for x, y in itertools.combinations(sorted(ends), 2):
            overlaps[(x, y, z)] = overlap(g, x, y, z)
    return LimitTree(classes, edges, length, overlaps)


def _check_prefix_consistency(
    edges: tuple[tuple[str, str], ...],
    length: dict[tuple[str, str], int],
    rho: dict[tuple[str, str, str], int],
) -> None:
    incident: dict[str, list[str]] = {}
    for a, b in edges:
        incident.setdefault(a, []).append(b)
        incident.setdefault(b, []).append(a)

    def get_rho(x: str, y: str, z: str) -> int:
        a, b = sorted((x, y))
        try:
            return rho[(a, b, z)]
        except KeyError:
            raise ReconstructError(f"missing overlap for edges ({x},{z}) and ({y},{z})")

    for e in edges:
        if length[e] < 2:
            raise ReconstructError(f"edge {e}: length {length[e]} below 2")
    for z, ends in incident.items():
        for x, y in itertools.combinations(sorted(ends), 2):
            r = get_rho(x, y, z)
            lx = length[tuple(sorted((x, z)))]
            ly = length[tuple(sorted((y, z)))]
            bound = min((lx + 1) // 2, (ly + 1) // 2)
            if not 1 <= r <= bound:
                raise ReconstructError(
                    f"overlap ({x},{y};{z}) = {r} outside [1, {bound}]"
                )
        for x, y, w in itertools.combinations(sorted(ends), 3):
            trio = sorted([get_rho(x, y, z), get_rho(x, w, z), get_rho(y, w, z)])
            if trio[0] != trio[1]:
                raise ReconstructError(
                    f"overlaps at {z} for {x},{y},{w} not realizable as shared "
                    f"prefixes (two smallest must agree, got {trio})"
                )
    # the two glued ends of one chain must not meet in the middle
    for a, b in edges:
        max_a = max((get_rho(b, o, a) for o in incident[a] if o != b), default=0)
        max_b = max((get_rho(a, o, b) for o in incident[b] if o != a), default=0)
        if max_a + max_b > length[(a, b)]:
            raise ReconstructError(
                f"edge ({a},{b}): prefix glue depths {max_a}+{max_b} exceed length "
                f"{length[(a, b)]}"
            )


def reconstruct(
    edges,
    length: dict[tuple[str, str], int],
    rho: dict[tuple[str, str, str], int],
) -> ResolutionGraph:
    """Rebuild the reduced graph from limit-tree data.

    One chain of fresh vertices is laid down per tree edge; at every shared
    tree vertex the first rho vertices of two incident chains are merged.
    Final weights are v(x) + 1 on the height-1 vertices (the tree vertices)
    and v(x) elsewhere.
    """
    edges = tuple(sorted(tuple(sorted(e)) for e in edges))
    _check_prefix_consistency(edges, length, rho)
    tree_vertices = sorted({v for e in edges for v in e})
    if not edges:
        raise ReconstructError("no tree edges; the single-vertex case has no reduced graph")

    # union-find over chain slots; slot (edge, position from the edge's first end)
    parent: dict[tuple, tuple] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[min(rx, ry)] = max(rx, ry)

    def slot(edge: tuple[str, str], end: str, pos: int) -> tuple:
        # pos counts from 1 at `end`
        if end == edge[0]:
            return ("slot", edge, pos)
        return ("slot", edge, length[edge] + 1 - pos)

    def get_rho(x: str, y: str, z: str) -> int:
        a, b = sorted((x, y))
        return rho[(a, b, z)]

    incident: dict[str, list[str]] = {v: [] for v in tree_vertices}
    for a, b in edges:
        incident[a].append(b)
        incident[b].append(a)

    for z in tree_vertices:
        for other in incident[z]:
            union(("root", z), slot(tuple(sorted((z, other))), z, 1))
        for x, y in itertools.combinations(sorted(incident[z]), 2):
            ex, ey = tuple(sorted((x, z))), tuple(sorted((y, z)))
            for t in range(1, get_rho(x, y, z) + 1):
                union(slot(ex, z, t), slot(ey, z, t))

    # name clusters: tree vertices keep their names, middles get fresh ones
    # (kept inside the [A-Za-z0-9_]+ grammar so the result re-parses)
    cluster_name: dict[tuple, str] = {}
    taken = set(tree_vertices)
    for z in tree_vertices:
        cluster_name[find(("root", z))] = z
    for e in edges:
        for pos in range(2, length[e]):
            root = find(("slot", e, pos))
            if root not in cluster_name:
                name = f"{e[0]}_{e[1]}_{pos}"
                while name in taken:
                    name += "_"
                taken.add(name)
                cluster_name[root] = name

    def name_of(s: tuple) -> str:
        return cluster_name[find(s)]

    graph_edges: set[tuple[str, str]] = set()
    for e in edges:
        for pos in range(1, length[e]):
            a = name_of(slot(e, e[0], pos))
            b = name_of(slot(e, e[0], pos + 1))
            if a == b:
                raise ReconstructError(f"edge {e}: glue collapses consecutive chain vertices")
            graph_edges.add(tuple(sorted((a, b))))

    names = sorted({n for pair in graph_edges for n in pair} | set(tree_vertices))
    valence = {n: 0 for n in names}
    for a, b in graph_edges:
        valence[a] += 1
        valence[b] += 1
    weights = {
        n: valence[n] + 1 if n in set(tree_vertices) else valence[n] for n in names
    }
    g = ResolutionGraph.build(weights, graph_edges)
    require_valid(g)
    return g


def reconstruct_from_tree(tree: LimitTree) -> ResolutionGraph:
    return reconstruct(tree.tree_edges, tree.length, tree.overlap)
