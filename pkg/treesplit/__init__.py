"""
treesplit v1.0.0
Balanced edge cuts in vertex-weighted trees
"""

__version__ = "1.0.0"

# Core types
from .tree import (
    Edge,
    TreeTopology,
    WeightedTree,
    build,
    from_topology,
    topology,
    total_weight,
    max_degree,
    rescaled,
    component_weight,
    components_without,
    subtree_weights,
)

# Search
from .splitter import (
    ToleranceWindow,
    Found,
    Descend,
    NotSplittable,
    Split,
    TraceStep,
    CutResult,
    edge_split_weights,
    is_cut_edge,
    is_witness,
    verify_result,
    oracle_find_all,
    classify_vertex,
    find_cut_edge,
    find_cut_edge_literal,
    find_cut_edge_descent,
    improved_start,
    avg_component_weight,
    min_average_start,
    choose_start,
    split_unweighted,
)

from .baseline import FoundEdge, GaveUp, random_edge_baseline

# Instances
from .generators import prufer_random_tree, wilson_spanning_tree, grid_graph, assign_weights
from .schemas import WeightSpec
from .treefile import parse_tree, serialize_tree, read_tree, write_tree, parse_epsilon

# Config
from .config import settings

from .errors import TreeSplitError


__all__ = [
    "__version__",

    # Types
    "Edge",
    "TreeTopology",
    "WeightedTree",
    "ToleranceWindow",
    "CutResult",
    "Split",
    "NotSplittable",

    # Construction
    "build",
    "from_topology",

    # Search
    "is_cut_edge",
    "find_cut_edge",
    "find_cut_edge_literal",
    "find_cut_edge_descent",
    "improved_start",
    "avg_component_weight",
    "oracle_find_all",
    "split_unweighted",
    "random_edge_baseline",

    # Instances
    "prufer_random_tree",
    "wilson_spanning_tree",
    "assign_weights",
    "WeightSpec",

    # Files
    "parse_tree",
    "serialize_tree",
    "read_tree",
    "write_tree",

    "settings",
    "TreeSplitError",
]
