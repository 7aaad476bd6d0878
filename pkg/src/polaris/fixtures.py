"""Built-in fixture graphs used by the test suite and the CLI.

``g_note`` and ``g_join`` are reverse-engineered rather than copied from a
published picture: g_note is the unique star-shaped reduced graph with limit
lengths (4, 3, 5) and overlaps (2, 1, 1) after raising one end weight to 4,
and g_join the smallest graph whose deformation tree has cone degrees
{3, 3, 2, 2} and whose polar type is two A_5 components with mutual
contact 2. See docs/formats.md.
"""

from __future__ import annotations

from .graph import ResolutionGraph, graph_to_text


def g_ver(n: int) -> ResolutionGraph:
    """Single vertex of weight n (cone over a degree-n rational normal curve)."""
    if n < 2:
        raise ValueError("weight must be at least 2")
    return ResolutionGraph.build({"a": n}, [])


def g_32() -> ResolutionGraph:
    return ResolutionGraph.build({"a": 3, "b": 2}, [("a", "b")])


def g_fig2() -> ResolutionGraph:
    weights = {"x1": 2, "a": 2, "b": 3, "c": 2, "x2": 3, "d": 2, "x3": 2, "e": 2, "x4": 2}
    edges = [
        ("x1", "a"), ("a", "b"), ("b", "c"), ("c", "x2"),
        ("x2", "d"), ("d", "x3"), ("b", "e"), ("e", "x4"),
    ]
    return ResolutionGraph.build(weights, edges)


def g_note() -> ResolutionGraph:
    weights = {"x1": 4, "p": 2, "q": 3, "x2": 3, "r": 2, "x3": 2, "v": 2, "w": 2, "x4": 2}
    edges = [
        ("x1", "p"), ("p", "q"), ("q", "x2"), ("x2", "r"),
        ("r", "x3"), ("q", "v"), ("v", "w"), ("w", "x4"),
    ]
    return ResolutionGraph.build(weights, edges)


def g_join() -> ResolutionGraph:
    weights = {"s1": 2, "t1": 2, "u": 2, "t2": 3, "v": 2, "t3": 2, "s3": 2, "s2": 2}
    edges = [
        ("s1", "t1"), ("t1", "u"), ("u", "t2"), ("t2", "v"),
        ("v", "t3"), ("t3", "s3"), ("t2", "s2"),
    ]
    return ResolutionGraph.build(weights, edges)


def g_a(k: int) -> ResolutionGraph:
    """Chain of k weight-2 vertices (the A_k surface singularity)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    names = [f"a{i}" for i in range(1, k + 1)]
    weights = {name: 2 for name in names}
    edges = [(names[i], names[i + 1]) for i in range(k - 1)]
    return ResolutionGraph.build(weights, edges)


FIXTURES: dict[str, tuple[str, ResolutionGraph]] = {
    "g_ver2": ("single vertex of weight 2", g_ver(2)),
    "g_ver3": ("single vertex of weight 3", g_ver(3)),
    "g_ver4": ("single vertex of weight 4", g_ver(4)),
    "g_32": ("two vertices of weights 3 and 2", g_32()),
    "g_fig2": ("nine-vertex reduced graph, four tangent-cone vertices", g_fig2()),
    "g_note": (
        "reconstructed nine-vertex graph: 4-line bunch plus A5, A4, A3",
        g_note(),
    ),
    "g_join": (
        "reconstructed eight-vertex graph with deformation degrees 3,3,2,2",
        g_join(),
    ),
    **{
        f"g_a{k}": (f"chain of {k} weight-2 vertices", g_a(k))
        for k in range(1, 7)
    },
}


def fixture_text(name: str) -> str:
    return graph_to_text(FIXTURES[name][1])


def fixture_names() -> list[str]:
    return sorted(FIXTURES)
