"""
Reproducible random instances.

All randomness comes from numpy's Generator(PCG64(seed)), so the same seed
gives the same tree on every platform.
"""

import logging

import networkx as nx
import numpy as np

from .schemas import WeightSpec
from .tree import TreeTopology, WeightedTree, from_topology

logger = logging.getLogger("treesplit.generators")


class _UniformDraws:
    """Doubles from one generator, fetched in blocks; index(k) maps the next one into [0, k)."""

    def __init__(self, rng: np.random.Generator, block: int = 4096):
        self._rng = rng
        self._block = block
        self._buf: list = []
        self._pos = 0

    def index(self, k: int) -> int:
        if self._pos == len(self._buf):
            self._buf = self._rng.random(self._block).tolist()
            self._pos = 0
        x = self._buf[self._pos]
        self._pos += 1
        return int(x * k)


def prufer_random_tree(n: int, seed: int) -> TreeTopology:
    """Uniform labeled tree on n vertices, decoded from a random Prüfer sequence."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return TreeTopology(1, ())
    if n == 2:
        return TreeTopology(2, ((0, 1),))
    rng = np.random.default_rng(seed)
    sequence = rng.integers(0, n, size=n - 2).tolist()
    graph = nx.from_prufer_sequence(sequence)
    return TreeTopology.from_edges(n, graph.edges())


def grid_graph(width: int, height: int) -> nx.Graph:
    """width x height grid with vertices numbered row-major (row * width + col)."""
    if width < 1 or height < 1:
        raise ValueError(f"grid dimensions must be >= 1, got {width}x{height}")
    grid = nx.grid_2d_graph(height, width)
    # sorted (row, col) labels map to row * width + col
    return nx.convert_node_labels_to_integers(grid, ordering="sorted")


def wilson_spanning_tree(width: int, height: int, seed: int) -> TreeTopology:
    """
    Uniform spanning tree of the grid graph via Wilson's loop-erased random walk.

    Each walk overwrites next_vertex[u] on every visit, so the pointers left
    behind when the walk hits the tree are exactly the loop-erased path.
    """
    grid = grid_graph(width, height)
    n = width * height
    neighbors = [sorted(grid.neighbors(v)) for v in range(n)]

    draws = _UniformDraws(np.random.default_rng(seed))
    root = draws.index(n)
    in_tree = [False] * n
    in_tree[root] = True
    next_vertex = [-1] * n

    for v in range(n):
        u = v
        while not in_tree[u]:
            nbrs = neighbors[u]
            next_vertex[u] = nbrs[draws.index(len(nbrs))]
            u = next_vertex[u]
        u = v
        while not in_tree[u]:
            in_tree[u] = True
            u = next_vertex[u]

    return TreeTopology.from_edges(n, ((v, next_vertex[v]) for v in range(n) if v != root))


def assign_weights(topology: TreeTopology, spec: WeightSpec, scale_exponent: int = 0) -> WeightedTree:
    """Attach weights drawn from the WeightSpec (in scaled units) and validate the result."""
    n = topology.vertex_count
    if spec.kind == "const":
        weights = [spec.value] * n
    else:
        rng = np.random.default_rng(spec.seed)
        weights = rng.integers(spec.lo, spec.hi, size=n, endpoint=True).tolist()
    return from_topology(topology, weights, scale_exponent)
