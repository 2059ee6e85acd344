"""
Shared fixtures: hand-checked trees with known answers, and tree files on disk.
"""

import pytest

from treesplit.tree import build
from treesplit.treefile import serialize_tree


# 13 vertices, S = 4.7 at scale 1. Vertex 2 (weight 0.6, degree 5) is the
# unique maximum-degree vertex; every component of T-{2} is lighter than
# S/2 - 0.05 = 2.3, so at eps = 0.05 there is no cut edge.
BALANCED_FAILURE_WEIGHTS = [2, 1, 6, 3, 7, 4, 2, 1, 3, 5, 6, 4, 3]
BALANCED_FAILURE_EDGES = [
    (0, 1), (1, 2), (2, 3), (1, 12), (2, 7), (2, 10), (2, 11),
    (7, 8), (7, 9), (3, 4), (3, 5), (3, 6),
]

# S = 10. Removing vertex 1 leaves a component of weight 7 > S/2 + 1, yet at
# eps = 1 no edge splits the tree.
HEAVY_COMPONENT_WEIGHTS = [2, 1, 1, 2, 2, 1, 1]
HEAVY_COMPONENT_EDGES = [(0, 1), (1, 2), (2, 3), (2, 4), (2, 5), (2, 6)]


@pytest.fixture
def balanced_failure_tree():
    return build(13, BALANCED_FAILURE_WEIGHTS, BALANCED_FAILURE_EDGES, scale_exponent=1)


@pytest.fixture
def heavy_component_tree():
    return build(7, HEAVY_COMPONENT_WEIGHTS, HEAVY_COMPONENT_EDGES)


@pytest.fixture
def path4():
    return build(4, [1, 1, 1, 1], [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def balanced_failure_file(tmp_path):
    """The balanced-failure tree written at scale 2 (weights 0.20, 0.10, ...)."""
    tree = build(13, [w * 10 for w in BALANCED_FAILURE_WEIGHTS], BALANCED_FAILURE_EDGES, scale_exponent=2)
    path = tmp_path / "balanced_failure.tree"
    path.write_text(serialize_tree(tree), encoding="utf-8")
    return path


@pytest.fixture
def pair_file(tmp_path):
    path = tmp_path / "pair.tree"
    path.write_text("tree 2 scale=0\nv 0 5\nv 1 5\ne 0 1\n", encoding="utf-8")
    return path
