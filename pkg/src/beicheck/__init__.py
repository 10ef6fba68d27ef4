"""Combinatorial checks on binomial edge ideals of small graphs.

Graphs are immutable bitmask adjacency structures (:class:`Graph`).  The
package decides unmixedness, accessibility, good cut vertices and strong
unmixedness, generates blocks up to isomorphism, and runs the exhaustive
search over blocks with whiskers.
"""

__version__ = "0.1.0"

from .graph import (
    BlockWithWhiskers,
    CapacityError,
    Graph,
    GraphError,
    add_whiskers,
    count_components,
    cut_vertices,
    free_vertices,
    from_edge_list,
    from_graph6,
    is_block,
    parse_graph,
    saturate,
    to_edge_list,
    to_graph6,
)
from .canon import canonical_form, canonical_graph, canonical_labeling
from .cutsets import CutSetFamily, enumerate_cut_sets, is_cut_set
from .properties import (
    PropertyReport,
    good_cut_vertices,
    implication_report,
    is_accessible,
    is_strongly_unmixed,
    is_unmixed,
)
from .blockgen import BlockFilterConfig, edge_bounds, generate_blocks, generate_connected
from .search import SearchConfig, candidate_passes, dismissal_screen, run_search, screen_conditions

__all__ = [
    "BlockWithWhiskers",
    "CapacityError",
    "Graph",
    "GraphError",
    "add_whiskers",
    "count_components",
    "cut_vertices",
    "free_vertices",
    "from_edge_list",
    "from_graph6",
    "is_block",
    "parse_graph",
    "saturate",
    "to_edge_list",
    "to_graph6",
    "canonical_form",
    "canonical_graph",
    "canonical_labeling",
    "CutSetFamily",
    "enumerate_cut_sets",
    "is_cut_set",
    "PropertyReport",
    "good_cut_vertices",
    "implication_report",
    "is_accessible",
    "is_strongly_unmixed",
    "is_unmixed",
    "BlockFilterConfig",
    "edge_bounds",
    "generate_blocks",
    "generate_connected",
    "SearchConfig",
    "candidate_passes",
    "dismissal_screen",
    "run_search",
    "screen_conditions",
]
