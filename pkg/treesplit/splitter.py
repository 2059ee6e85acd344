"""
Balanced edge cuts of vertex-weighted trees.

Given a tree with total weight S and a tolerance eps, an edge is a cut edge
when both components left by removing it weigh within [S/2 - eps, S/2 + eps].
The search removes one vertex at a time and looks at the components of the
resulting forest:

  - a component inside the window  -> the edge to it is a cut edge
  - a component above S/2 + eps    -> descend into it
  - every component below S/2 - eps -> no cut edge exists; the vertex is
                                      the witness

Everything is compared in exact integer arithmetic on 2w against S and 2*eps.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np

from .errors import EdgeNotInTree, IsolatedVertex, WindowMismatch, EpsilonNotRepresentable
from .tree import (
    Edge,
    NO_PARENT,
    TreeTopology,
    WeightedTree,
    build,
    component_weight,
    components_without,
    subtree_weights,
)

logger = logging.getLogger("treesplit.splitter")

METHODS = ("descent", "literal")
START_STRATEGIES = ("improved", "min-average", "random")


@dataclass(frozen=True)
class ToleranceWindow:
    """Total weight S and doubled tolerance 2*eps, both in scaled units."""

    total: int
    doubled_epsilon: int

    def __post_init__(self):
        if self.doubled_epsilon < 0:
            raise EpsilonNotRepresentable(f"2*epsilon must be >= 0, got {self.doubled_epsilon}")

    @classmethod
    def for_tree(cls, t: WeightedTree, doubled_epsilon: int) -> "ToleranceWindow":
        return cls(t.total, doubled_epsilon)

    def in_range(self, w: int) -> bool:
        return abs(2 * w - self.total) <= self.doubled_epsilon

    def is_heavy(self, w: int) -> bool:
        return 2 * w > self.total + self.doubled_epsilon

    def is_light(self, w: int) -> bool:
        return 2 * w < self.total - self.doubled_epsilon


@dataclass(frozen=True)
class Found:
    """The edge to a component inside the window; w_side is that component's weight."""

    edge: Edge
    w_side: int


@dataclass(frozen=True)
class Descend:
    next_vertex: int
    component_weight: int


@dataclass(frozen=True)
class NotSplittable:
    witness: int


Classification = Union[Found, Descend, NotSplittable]


@dataclass(frozen=True)
class Split:
    """w1 is the weight on edge.u's side, w2 on edge.v's side."""

    edge: Edge
    w1: int
    w2: int


@dataclass(frozen=True)
class TraceStep:
    vertex: int
    classification: Classification


@dataclass(frozen=True)
class CutResult:
    verdict: Union[Split, NotSplittable]
    trace: Tuple[TraceStep, ...]

    @property
    def is_split(self) -> bool:
        return isinstance(self.verdict, Split)

    @property
    def iterations(self) -> int:
        return len(self.trace)

    @property
    def vertices(self) -> List[int]:
        return [step.vertex for step in self.trace]


def _check_window(t: WeightedTree, win: ToleranceWindow) -> None:
    if win.total != t.total:
        raise WindowMismatch(f"window total {win.total} != tree total {t.total}")


def _as_edge(e: Union[Edge, Tuple[int, int]]) -> Edge:
    if isinstance(e, Edge):
        return e
    a, b = e
    if a == b:
        raise EdgeNotInTree(f"({a}, {b}) is not an edge")
    return Edge.of(a, b)


# --- predicates --------------------------------------------------------------

def edge_split_weights(t: WeightedTree, e: Union[Edge, Tuple[int, int]]) -> Tuple[int, int]:
    """Weights (w1, w2) of the two sides of e; w1 is the side containing e.u."""
    e = _as_edge(e)
    if not t.has_edge(e.u, e.v):
        raise EdgeNotInTree(f"edge {e.as_tuple()} is not in the tree")
    parent, down = t.rooted
    if parent[e.v] == e.u:
        w1 = t.total - down[e.v]
    else:
        w1 = down[e.u]
    return w1, t.total - w1


def is_cut_edge(t: WeightedTree, e: Union[Edge, Tuple[int, int]], win: ToleranceWindow) -> bool:
    _check_window(t, win)
    w1, _ = edge_split_weights(t, e)
    # w2 = S - w1, so |2*w2 - S| == |2*w1 - S|
    return win.in_range(w1)


def is_witness(t: WeightedTree, v: int, win: ToleranceWindow) -> bool:
    """True when every component of T-{v} weighs strictly less than S/2 - eps."""
    _check_window(t, win)
    return all(win.is_light(w) for _, w in components_without(t, v))


def verify_result(t: WeightedTree, win: ToleranceWindow, result: CutResult) -> bool:
    verdict = result.verdict
    if isinstance(verdict, Split):
        if not t.has_edge(verdict.edge.u, verdict.edge.v):
            return False
        return (
            (verdict.w1, verdict.w2) == edge_split_weights(t, verdict.edge)
            and is_cut_edge(t, verdict.edge, win)
        )
    return is_witness(t, verdict.witness, win)


def oracle_find_all(t: WeightedTree, win: ToleranceWindow) -> List[Edge]:
    """Every cut edge, by brute force over one rooted subtree-weight pass."""
    _check_window(t, win)
    parent, down = subtree_weights(t, 0)
    cuts = [
        Edge.of(parent[u], u)
        for u in range(t.vertex_count)
        if parent[u] != NO_PARENT and win.in_range(down[u])
    ]
    cuts.sort()
    return cuts


# --- vertex classification ---------------------------------------------------

def _classify(v: int, components: Iterable[Tuple[int, int]], win: ToleranceWindow) -> Classification:
    # components arrive in ascending anchor order; at most one can be heavy
    heavy: Optional[Tuple[int, int]] = None
    for anchor, w in components:
        if win.in_range(w):
            return Found(Edge.of(v, anchor), w)
        if heavy is None and win.is_heavy(w):
            heavy = (anchor, w)
    if heavy is not None:
        return Descend(*heavy)
    return NotSplittable(v)


def classify_vertex(
    t: WeightedTree,
    v: int,
    win: ToleranceWindow,
    excluded: Optional[int] = None,
) -> Classification:
    """
    Classify v by the components of (domain)-{v}.

    The domain is the whole tree when excluded is None. Otherwise it is the
    component of T-{excluded} containing v, i.e. the component the search
    descended into from its neighbor excluded.
    """
    _check_window(t, win)
    t.check_vertex(v)
    components = (
        (a, component_weight(t, a, v))
        for a in t.adjacency[v]
        if a != excluded
    )
    return _classify(v, components, win)


def _finish(t: WeightedTree, v: int, cls: Classification, trace: List[TraceStep]) -> CutResult:
    if isinstance(cls, Found):
        anchor = cls.edge.other(v)
        w1 = cls.w_side if anchor == cls.edge.u else t.total - cls.w_side
        verdict: Union[Split, NotSplittable] = Split(cls.edge, w1, t.total - w1)
    else:
        verdict = cls
    return CutResult(verdict, tuple(trace))


def find_cut_edge_literal(t: WeightedTree, win: ToleranceWindow, start: int) -> CutResult:
    """
    Iterative search recomputing component weights by traversal each step.

    Worst case quadratic; kept as the reference for find_cut_edge_descent().
    """
    _check_window(t, win)
    t.check_vertex(start)
    current, previous = start, None
    trace: List[TraceStep] = []
    for _ in range(t.vertex_count):
        cls = classify_vertex(t, current, win, excluded=previous)
        trace.append(TraceStep(current, cls))
        logger.debug(f"literal: vertex {current} -> {cls}")
        if not isinstance(cls, Descend):
            return _finish(t, current, cls, trace)
        previous, current = current, cls.next_vertex
    raise RuntimeError(f"search did not terminate within {t.vertex_count} iterations")


def find_cut_edge_descent(t: WeightedTree, win: ToleranceWindow, start: int) -> CutResult:
    """
    Linear-time search: root at start, one subtree-weight pass, then walk down.

    Below the start the excluded component is always the parent side, so the
    components examined at u are exactly its children's subtrees.
    """
    _check_window(t, win)
    parent, down = subtree_weights(t, start)
    adjacency = t.adjacency
    u = start
    trace: List[TraceStep] = []
    for _ in range(t.vertex_count):
        pu = parent[u]
        cls = _classify(u, ((c, down[c]) for c in adjacency[u] if c != pu), win)
        trace.append(TraceStep(u, cls))
        logger.debug(f"descent: vertex {u} -> {cls}")
        if not isinstance(cls, Descend):
            return _finish(t, u, cls, trace)
        u = cls.next_vertex
    raise RuntimeError(f"search did not terminate within {t.vertex_count} iterations")


def find_cut_edge(
    t: WeightedTree,
    win: ToleranceWindow,
    method: str = "descent",
    start: Optional[int] = None,
) -> CutResult:
    if start is None:
        start = improved_start(t)
    if method == "descent":
        return find_cut_edge_descent(t, win, start)
    if method == "literal":
        return find_cut_edge_literal(t, win, start)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


# --- start vertices ----------------------------------------------------------

def improved_start(t: WeightedTree) -> int:
    """Maximum degree first, then maximum weight, then smallest id."""
    adjacency = t.adjacency
    weights = t.weights
    return max(range(t.vertex_count), key=lambda v: (len(adjacency[v]), weights[v], -v))


def avg_component_weight(t: WeightedTree, v: int) -> Fraction:
    """Average weight of the components of T-{v}: (S - w(v)) / deg(v)."""
    t.check_vertex(v)
    deg = t.degree(v)
    if deg == 0:
        raise IsolatedVertex(f"vertex {v} has no neighbors")
    return Fraction(t.total - t.weights[v], deg)


def min_average_start(t: WeightedTree) -> int:
    """The vertex with the smallest average component weight, ties by smallest id."""
    if t.vertex_count == 1:
        return 0
    return min(range(t.vertex_count), key=lambda v: (avg_component_weight(t, v), v))


def choose_start(t: WeightedTree, strategy: Union[str, int], seed: int = 0) -> int:
    if isinstance(strategy, int):
        t.check_vertex(strategy)
        return strategy
    if strategy == "improved":
        return improved_start(t)
    if strategy == "min-average":
        return min_average_start(t)
    if strategy == "random":
        return int(np.random.default_rng(seed).integers(t.vertex_count))
    raise ValueError(f"unknown start strategy {strategy!r}; expected one of {START_STRATEGIES} or a vertex id")


# --- unweighted trees --------------------------------------------------------

def split_unweighted(topology: TreeTopology) -> CutResult:
    """Split into two components of equal order, if possible (unit weights, eps = 0)."""
    t = build(topology.vertex_count, [1] * topology.vertex_count, topology.edges)
    return find_cut_edge_descent(t, ToleranceWindow(t.total, 0), improved_start(t))
