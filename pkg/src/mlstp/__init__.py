"""Solvers and evaluation tools for the minimum labelling spanning tree problem."""

from .graph import (
    ComponentLabeling,
    DisconnectedError,
    InvalidGraphError,
    LabeledGraph,
    build_graph,
    components_with_extra,
    label_frequencies,
    restricted_components,
    spanning_tree,
    uncovered_gain,
)
from .heuristics import (
    A,
    A1,
    A2,
    A12,
    SolveResult,
    TieBreak,
    Variant,
    mvca_original,
    mvca_revised,
    post_optimize,
    solve_variant,
)
from .exact import PilotConfig, SearchStats, astar, brute_force, pilot

__version__ = "0.1.0"

__all__ = [
    "A",
    "A1",
    "A2",
    "A12",
    "ComponentLabeling",
    "DisconnectedError",
    "InvalidGraphError",
    "LabeledGraph",
    "PilotConfig",
    "SearchStats",
    "SolveResult",
    "TieBreak",
    "Variant",
    "astar",
    "brute_force",
    "build_graph",
    "components_with_extra",
    "label_frequencies",
    "mvca_original",
    "mvca_revised",
    "pilot",
    "post_optimize",
    "restricted_components",
    "solve_variant",
    "spanning_tree",
    "uncovered_gain",
]
