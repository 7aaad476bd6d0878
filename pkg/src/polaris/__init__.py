"""Exact equisingularity analysis of generic polar curves of minimal
normal-surface singularities."""

__version__ = "0.1.0"

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
    ParseError,
    Reduction,
    ResolutionGraph,
    heights,
    multiplicity,
    embdim,
    parse_graph,
    reduce_graph,
    tangent_cone_data,
    tyurina_components,
    validate_minimal,
)
from .limittree import (
    LimitAssignment,
    LimitTree,
    chain,
    chain_length,
    limit_assignments,
    overlap,
    quotient,
    reconstruct,
)
from .polartype import (
    AnCurve,
    Bunch,
    PolarType,
    assemble_from_heights,
    assemble_from_limit_tree,
    canonicalize,
    equals,
    expected_branch_counts,
    polar_multiplicity,
)
from .realize import (
    PlaneCurveModel,
    PuiseuxBranch,
    branch_contact_by_blowups,
    realize,
    verify,
)
from .scott import ScottTree, delta_generic_lines, scott_delta, scott_tree

__all__ = [
    "AnCurve",
    "Bunch",
    "CrossCheckError",
    "LimitAssignment",
    "LimitTree",
    "ParseError",
    "PlaneCurveModel",
    "PolarType",
    "PuiseuxBranch",
    "RationalCycle",
    "Reduction",
    "ResolutionGraph",
    "ScottTree",
    "assemble_from_heights",
    "assemble_from_limit_tree",
    "branch_contact_by_blowups",
    "branch_counts",
    "canonical_cycle",
    "canonicalize",
    "chain",
    "chain_length",
    "delta_generic_lines",
    "embdim",
    "equals",
    "expected_branch_counts",
    "floor_cycle",
    "fundamental_cycle",
    "giraud_delta",
    "heights",
    "intersect",
    "limit_assignments",
    "multiplicity",
    "overlap",
    "parse_graph",
    "polar_cycle",
    "polar_multiplicity",
    "quotient",
    "realize",
    "reconstruct",
    "reduce_graph",
    "scott_delta",
    "scott_tree",
    "tangent_cone_data",
    "tyurina_components",
    "validate_minimal",
    "verify",
]
