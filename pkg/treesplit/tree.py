"""
Vertex-weighted trees for treesplit.

A WeightedTree is validated once in build() and immutable afterwards.
Weights are exact integers in "scaled units": the real weight of a vertex
is weights[v] / 10**scale_exponent. All traversals are iterative so that
path-shaped trees with millions of vertices never hit the recursion limit.
"""

from __future__ import annotations

import logging
from bisect import bisect_left
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Sequence, Tuple

from .errors import (
    Disconnected,
    DuplicateEdge,
    EdgeCountMismatch,
    EmptyTree,
    IdOutOfRange,
    InvalidVertex,
    NegativeWeight,
    SelfLoop,
    TreeBuildError,
    WeightCountMismatch,
    WeightOverflow,
)

logger = logging.getLogger("treesplit.tree")

INT64_MAX = 2**63 - 1

# parent[] value of the root in subtree_weights()
NO_PARENT = -1


@dataclass(frozen=True, order=True)
class Edge:
    """Undirected tree edge in canonical form (u < v)."""

    u: int
    v: int

    def __post_init__(self):
        if self.u >= self.v:
            raise ValueError(f"edge endpoints must satisfy u < v, got ({self.u}, {self.v})")

    @classmethod
    def of(cls, a: int, b: int) -> "Edge":
        """Canonical edge between a and b, in either order."""
        a, b = int(a), int(b)
        return cls(a, b) if a < b else cls(b, a)

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u

    def as_tuple(self) -> Tuple[int, int]:
        return (self.u, self.v)


@dataclass(frozen=True)
class TreeTopology:
    """Unweighted tree shape: vertex count plus canonical, sorted edge list."""

    vertex_count: int
    edges: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "TreeTopology":
        canonical = sorted((min(a, b), max(a, b)) for a, b in ((int(a), int(b)) for a, b in edges))
        return cls(n, tuple(canonical))


@dataclass(frozen=True)
class WeightedTree:
    """
    Validated vertex-weighted tree. Create through build() or from_topology().

    adjacency[v] is the ascending tuple of v's neighbors; total is the exact
    sum of all weights.
    """

    vertex_count: int
    weights: Tuple[int, ...]
    adjacency: Tuple[Tuple[int, ...], ...]
    scale_exponent: int
    total: int

    @cached_property
    def edges(self) -> Tuple[Edge, ...]:
        """All n-1 edges, canonical and sorted."""
        return tuple(
            Edge(u, v)
            for u, nbrs in enumerate(self.adjacency)
            for v in nbrs
            if u < v
        )

    @cached_property
    def rooted(self) -> Tuple[List[int], List[int]]:
        """subtree_weights() rooted at vertex 0, computed on first use."""
        return subtree_weights(self, 0)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, a: int, b: int) -> bool:
        if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
            return False
        nbrs = self.adjacency[a]
        i = bisect_left(nbrs, b)
        return i < len(nbrs) and nbrs[i] == b

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.vertex_count):
            raise InvalidVertex(f"vertex {v} not in [0, {self.vertex_count})")


def build(
    n: int,
    weights: Sequence[int],
    edges: Iterable[Tuple[int, int]],
    scale_exponent: int = 0,
) -> WeightedTree:
    """
    Validate the inputs and return a WeightedTree.

    Raises one distinct TreeBuildError subclass per kind of malformed input.
    """
    if n < 1:
        raise EmptyTree(f"a tree needs at least one vertex, got n={n}")
    if scale_exponent < 0:
        raise TreeBuildError(f"scale exponent must be non-negative, got {scale_exponent}")

    weights = tuple(int(w) for w in weights)
    if len(weights) != n:
        raise WeightCountMismatch(f"expected {n} weights, got {len(weights)}")
    for v, w in enumerate(weights):
        if w < 0:
            raise NegativeWeight(f"vertex {v} has negative weight {w}")
    total = sum(weights)
    if total > INT64_MAX:
        raise WeightOverflow(f"total weight {total} exceeds the signed 64-bit range")

    edges = list(edges)
    if len(edges) != n - 1:
        raise EdgeCountMismatch(f"a tree on {n} vertices has {n - 1} edges, got {len(edges)}")

    adjacency: List[List[int]] = [[] for _ in range(n)]
    for a, b in edges:
        a, b = int(a), int(b)
        if not (0 <= a < n and 0 <= b < n):
            raise IdOutOfRange(f"edge ({a}, {b}) references a vertex outside [0, {n})")
        if a == b:
            raise SelfLoop(f"self-loop at vertex {a}")
        adjacency[a].append(b)
        adjacency[b].append(a)

    for u, nbrs in enumerate(adjacency):
        nbrs.sort()
        if len(set(nbrs)) != len(nbrs):
            dup = next(x for i, x in enumerate(nbrs[1:]) if x == nbrs[i])
            raise DuplicateEdge(f"edge {Edge.of(u, dup).as_tuple()} appears more than once")

    seen = bytearray(n)
    seen[0] = 1
    reached = 1
    stack = [0]
    while stack:
        u = stack.pop()
        for x in adjacency[u]:
            if not seen[x]:
                seen[x] = 1
                reached += 1
                stack.append(x)
    if reached != n:
        raise Disconnected(f"{n - reached} of {n} vertices are unreachable from vertex 0")

    tree = WeightedTree(
        vertex_count=n,
        weights=weights,
        adjacency=tuple(tuple(nbrs) for nbrs in adjacency),
        scale_exponent=scale_exponent,
        total=total,
    )
    logger.debug(f"Built tree: n={n}, total={total}, scale={scale_exponent}")
    return tree


def from_topology(topology: TreeTopology, weights: Sequence[int], scale_exponent: int = 0) -> WeightedTree:
    return build(topology.vertex_count, weights, topology.edges, scale_exponent)


def topology(t: WeightedTree) -> TreeTopology:
    return TreeTopology(t.vertex_count, tuple(e.as_tuple() for e in t.edges))


def total_weight(t: WeightedTree) -> int:
    return t.total


def max_degree(t: WeightedTree) -> int:
    return max(len(nbrs) for nbrs in t.adjacency)


def rescaled(t: WeightedTree, extra_digits: int) -> WeightedTree:
    """Same tree with every weight multiplied by 10**extra_digits."""
    if extra_digits < 0:
        raise ValueError("extra_digits must be non-negative")
    if extra_digits == 0:
        return t
    factor = 10**extra_digits
    total = t.total * factor
    if total > INT64_MAX:
        raise WeightOverflow(f"rescaled total weight {total} exceeds the signed 64-bit range")
    return WeightedTree(
        vertex_count=t.vertex_count,
        weights=tuple(w * factor for w in t.weights),
        adjacency=t.adjacency,
        scale_exponent=t.scale_exponent + extra_digits,
        total=total,
    )


def component_weight(t: WeightedTree, anchor: int, blocked: int) -> int:
    """Weight of the component of T-{blocked} that contains anchor."""
    weights = t.weights
    adjacency = t.adjacency
    total = 0
    stack = [(anchor, blocked)]
    while stack:
        u, came_from = stack.pop()
        total += weights[u]
        for x in adjacency[u]:
            if x != came_from:
                stack.append((x, u))
    return total


def components_without(t: WeightedTree, v: int) -> List[Tuple[int, int]]:
    """
    Components of the forest T-{v}, one per neighbor of v.

    Returns (anchor, weight) pairs in ascending anchor order, where anchor is
    the neighbor of v inside the component.
    """
    t.check_vertex(v)
    return [(a, component_weight(t, a, v)) for a in t.adjacency[v]]


def subtree_weights(t: WeightedTree, root: int) -> Tuple[List[int], List[int]]:
    """
    Root the tree at root and return (parent, down_weight).

    parent[root] is NO_PARENT; down_weight[u] is the weight of the subtree
    hanging below u, so down_weight[root] == total_weight(t).
    """
    t.check_vertex(root)
    adjacency = t.adjacency
    parent = [NO_PARENT] * t.vertex_count
    order = [root]
    for u in order:
        pu = parent[u]
        for x in adjacency[u]:
            if x != pu:
                parent[x] = u
                order.append(x)

    down = list(t.weights)
    for u in reversed(order[1:]):
        down[parent[u]] += down[u]
    return parent, down
