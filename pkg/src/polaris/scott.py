"""Delta invariant via the deformation recursion.

Blowing up splits a minimal singularity into its blow-up singularities plus
a cone of degree equal to the multiplicity; iterating yields a tree of cone
degrees, and the delta invariant of the generic polar curve is the sum over
the tree of the delta invariants of generic line configurations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import ResolutionGraph, multiplicity, require_valid, tyurina_components


@dataclass(frozen=True)
class ScottTree:
    """Recursion tree: node degree = multiplicity, children = blow-up singularities."""

    degree: int
    children: tuple["ScottTree", ...]

    def nodes(self) -> list["ScottTree"]:
        out = [self]
        for child in self.children:
            out.extend(child.nodes())
        return out

    def degrees(self) -> list[int]:
        return [node.degree for node in self.nodes()]

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def to_json(self) -> dict:
        return {"degree": self.degree, "children": [c.to_json() for c in self.children]}

    def to_text(self, indent: int = 0) -> str:
        lines = [" " * indent + f"cone degree {self.degree}"]
        for child in self.children:
            lines.append(child.to_text(indent + 2))
        return "\n".join(lines)


def scott_tree(g: ResolutionGraph) -> ScottTree:
    require_valid(g)
    children = tuple(scott_tree(c) for c in tyurina_components(g))
    return ScottTree(degree=multiplicity(g), children=children)


def delta_generic_lines(m: int) -> int:
    """Delta invariant of the generic polar configuration of a degree-m cone.

    2m - 2 generic lines through the origin: 0 for m = 1 (no lines), 1 for
    m = 2 (two lines spanning a plane), 3m - 6 for m >= 3.
    """
    if m < 1:
        raise ValueError(f"cone degree must be positive, got {m}")
    if m == 1:
        return 0
    if m == 2:
        return 1
    return 3 * m - 6


def scott_delta(g: ResolutionGraph) -> int:
    """Sum of generic-line deltas over the deformation tree."""
    return sum(delta_generic_lines(d) for d in scott_tree(g).degrees())
