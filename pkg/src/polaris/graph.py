"""Weighted dual resolution graphs of minimal normal-surface singularities.

A graph is a weighted tree: vertices carry integer weights w(x) >= 2 with
w(x) >= v(x) (the valence). Vertices with w(x) > v(x) are the tangent-cone
vertices; the height of a vertex is one plus its distance to that set.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass

from .exact import leading_principal_minors

_NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")


class ParseError(Exception):
    """Raised on malformed graph-format input; carries line number and token."""

    def __init__(self, line: int, token: str, message: str):
        self.line = line
        self.token = token
        super().__init__(f"line {line}: {message} ({token!r})")


@dataclass(frozen=True)
class ResolutionGraph:
    """Immutable weighted tree; vertices are opaque strings, sorted lexicographically."""

    vertices: tuple[str, ...]
    weight: dict[str, int]
    edges: tuple[tuple[str, str], ...]

    @staticmethod
    def build(weights: dict[str, int], edges) -> "ResolutionGraph":
        vs = tuple(sorted(weights))
        es = tuple(sorted(tuple(sorted(e)) for e in edges))
        return ResolutionGraph(vs, dict(weights), es)

    def adjacency(self) -> dict[str, tuple[str, ...]]:
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    def valence(self, x: str) -> int:
        return sum(1 for e in self.edges if x in e)

    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}


def parse_graph(text: str) -> ResolutionGraph:
    """Parse the line-oriented graph format.

    Blank lines and lines starting with '#' are ignored. Directives:
    ``vertex <name> <weight>`` and ``edge <name> <name>``.
    """
    weights: dict[str, int] = {}
    edges: list[tuple[str, str]] = []
    seen_edges: set[tuple[str, str]] = set()
    pending_edges: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "vertex":
            if len(parts) != 3:
                raise ParseError(lineno, raw.strip(), "vertex line needs a name and a weight")
            name, weight_tok = parts[1], parts[2]
            if not _NAME_RE.match(name):
                raise ParseError(lineno, name, "invalid vertex name")
            if not re.fullmatch(r"[0-9]+", weight_tok) or int(weight_tok) <= 0:
                raise ParseError(lineno, weight_tok, "weight must be a positive integer")
            if name in weights:
                raise ParseError(lineno, name, "duplicate vertex name")
            weights[name] = int(weight_tok)
        elif kind == "edge":
            if len(parts) != 3:
                raise ParseError(lineno, raw.strip(), "edge line needs two vertex names")
            a, b = parts[1], parts[2]
            if a == b:
                raise ParseError(lineno, a, "self-loop is not allowed")
            pending_edges.append((lineno, a, b))
        else:
            raise ParseError(lineno, kind, "unknown directive")
    for lineno, a, b in pending_edges:
        for name in (a, b):
            if name not in weights:
                raise ParseError(lineno, name, "edge references unknown vertex")
        key = tuple(sorted((a, b)))
        if key in seen_edges:
            raise ParseError(lineno, f"{a} {b}", "duplicate edge")
        seen_edges.add(key)
        edges.append(key)
    return ResolutionGraph.build(weights, edges)


def graph_to_text(g: ResolutionGraph) -> str:
    """Render a graph back into the input format (deterministic ordering)."""
    lines = [f"vertex {v} {g.weight[v]}" for v in g.vertices]
    lines += [f"edge {a} {b}" for a, b in g.edges]
    return "\n".join(lines) + "\n"


def negated_intersection_matrix(g: ResolutionGraph) -> list[list[int]]:
    """Matrix with w(x) on the diagonal and -1 for adjacent pairs.

    This is minus the intersection matrix of the exceptional components; for
    a valid graph it is positive definite.
    """
    idx = g.index()
    n = len(g.vertices)
    m = [[0] * n for _ in range(n)]
    for v in g.vertices:
        m[idx[v]][idx[v]] = g.weight[v]
    for a, b in g.edges:
        m[idx[a]][idx[b]] = -1
        m[idx[b]][idx[a]] = -1
    return m


def _is_tree(g: ResolutionGraph) -> bool:
    n = len(g.vertices)
    if len(g.edges) != n - 1:
        return False
    if n == 0:
        return False
    adj = g.adjacency()
    seen = {g.vertices[0]}
    queue = deque([g.vertices[0]])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == n


def validate_minimal(g: ResolutionGraph) -> list[str]:
    """Return all rule violations (empty list means the graph is valid).

    Checks: tree shape, w(x) >= 2, w(x) >= v(x), and positive definiteness of
    the negated intersection matrix. The last check cannot fail when the
    first three pass, but it is cheap and guards the exact solver.
    """
    violations: list[str] = []
    if not _is_tree(g):
        violations.append("graph: not a tree (must be connected with |E| = |V| - 1)")
    for v in g.vertices:
        if g.weight[v] < 2:
            violations.append(f"vertex {v}: weight {g.weight[v]} below 2")
        if g.weight[v] < g.valence(v):
            violations.append(
                f"vertex {v}: weight {g.weight[v]} below valence {g.valence(v)}"
            )
    if not violations:
        minors = leading_principal_minors(negated_intersection_matrix(g))
        if any(m <= 0 for m in minors):
            violations.append("matrix: negated intersection form is not positive definite")
    return violations


def require_valid(g: ResolutionGraph) -> None:
    violations = validate_minimal(g)
    if violations:
        raise ValueError("invalid graph: " + "; ".join(violations))


def heights(g: ResolutionGraph) -> dict[str, int]:
    """Height of every vertex: 1 + distance to the nearest vertex with w > v.

    Multi-source breadth-first search from the tangent-cone set.
    """
    tc = [v for v in g.vertices if g.weight[v] > g.valence(v)]
    adj = g.adjacency()
    dist = {v: 1 for v in tc}
    queue = deque(tc)
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return {v: dist[v] for v in g.vertices}


def tangent_cone_data(g: ResolutionGraph) -> tuple[tuple[str, ...], dict[str, int]]:
    """Vertices with w > v together with their cone degrees m(x) = w(x) - v(x)."""
    tc = tuple(v for v in g.vertices if g.weight[v] > g.valence(v))
    return tc, {v: g.weight[v] - g.valence(v) for v in tc}


def multiplicity(g: ResolutionGraph) -> int:
    _, degrees = tangent_cone_data(g)
    return sum(degrees.values())


def embdim(g: ResolutionGraph) -> int:
    return multiplicity(g) + 1


def tyurina_components(g: ResolutionGraph) -> list[ResolutionGraph]:
    """Connected components of the graph minus its tangent-cone vertices.

    Each component inherits weights and induced edges and is itself a valid
    graph (the removed neighbours only lower valences).
    """
    tc = set(tangent_cone_data(g)[0])
    rest = [v for v in g.vertices if v not in tc]
    adj = g.adjacency()
    seen: set[str] = set()
    components: list[ResolutionGraph] = []
    for start in rest:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in tc and w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        weights = {v: g.weight[v] for v in comp}
        edges = [e for e in g.edges if e[0] in comp and e[1] in comp]
        components.append(ResolutionGraph.build(weights, edges))
    return components


def central_elements(g: ResolutionGraph) -> tuple[tuple[str, ...], tuple[tuple[str, str], ...]]:
    """Central vertices (two or more neighbours one level below) and central arcs
    (edges joining vertices of equal height)."""
    s = heights(g)
    adj = g.adjacency()
    central_vertices = tuple(
        v for v in g.vertices if sum(1 for w in adj[v] if s[w] == s[v] - 1) >= 2
    )
    central_arcs = tuple(e for e in g.edges if s[e[0]] == s[e[1]])
    return central_vertices, central_arcs


@dataclass(frozen=True)
class VertexAnalysis:
    """Bundle of the per-vertex combinatorics used throughout the pipeline."""

    height: dict[str, int]
    tc_vertices: tuple[str, ...]
    cone_degree: dict[str, int]
    central_vertices: tuple[str, ...]
    central_arcs: tuple[tuple[str, str], ...]


def analyze_vertices(g: ResolutionGraph) -> VertexAnalysis:
    tc, degrees = tangent_cone_data(g)
    cv, ca = central_elements(g)
    return VertexAnalysis(heights(g), tc, degrees, cv, ca)


@dataclass(frozen=True)
class Reduction:
    """Result of lowering tangent-cone weights to v(x) + 1.

    ``graph`` is None exactly in the degenerate single-vertex case, whose
    reduced weight would be 1 (the singularity reduces to a smooth point).
    """

    graph: ResolutionGraph | None

    @property
    def smooth(self) -> bool:
        return self.graph is None


def reduce_graph(g: ResolutionGraph) -> Reduction:
    tc, _ = tangent_cone_data(g)
    weights = dict(g.weight)
    for v in tc:
        weights[v] = g.valence(v) + 1
    if any(w < 2 for w in weights.values()):
        # only possible for an isolated vertex (valence 0)
        return Reduction(None)
    return Reduction(ResolutionGraph.build(weights, g.edges))


# --- weighted-tree isomorphism -------------------------------------------------

def _rooted_encoding(g: ResolutionGraph, root: str) -> tuple:
    adj = g.adjacency()

    def encode(v: str, parent: str | None) -> tuple:
        children = sorted(
            (encode(w, v) for w in adj[v] if w != parent)
        )
        return (g.weight[v], tuple(children))

    return encode(root, None)


def _tree_centers(g: ResolutionGraph) -> list[str]:
    n = len(g.vertices)
    if n == 1:
        return [g.vertices[0]]
    adj = {v: set(ns) for v, ns in g.adjacency().items()}
    layer = [v for v in g.vertices if len(adj[v]) == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            (w,) = adj[v]
            adj[w].discard(v)
            adj[v].clear()
            if len(adj[w]) == 1:
                nxt.append(w)
        layer = nxt
    return sorted(layer)


def canonical_key(g: ResolutionGraph) -> tuple:
    """Label-independent canonical form of a weighted tree (AHU encoding
    rooted at the tree centre; the smaller encoding is taken for bicentral
    trees)."""
    return min(_rooted_encoding(g, c) for c in _tree_centers(g))


def isomorphic(g1: ResolutionGraph, g2: ResolutionGraph) -> bool:
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return False
    return canonical_key(g1) == canonical_key(g2)
