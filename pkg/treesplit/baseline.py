"""
Random-edge rejection sampling: the retry process the splitter replaces.

Edges are drawn uniformly with replacement and tested one at a time until a
cut edge turns up or max_attempts draws have failed. Giving up says nothing
about whether a cut edge exists.
"""

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import NoEdges
from .splitter import ToleranceWindow, is_cut_edge
from .tree import Edge, WeightedTree

logger = logging.getLogger("treesplit.baseline")

# Edge indices are drawn from Generator(PCG64(seed)).integers in blocks of at
# most this many; the stream is a function of (seed, max_attempts) only.
DRAW_BLOCK = 1024


@dataclass(frozen=True)
class FoundEdge:
    edge: Edge
    attempts: int


@dataclass(frozen=True)
class GaveUp:
    attempts: int


BaselineOutcome = Union[FoundEdge, GaveUp]


def random_edge_baseline(
    t: WeightedTree,
    win: ToleranceWindow,
    max_attempts: int,
    seed: int,
) -> BaselineOutcome:
    if t.vertex_count < 2:
        raise NoEdges("a single-vertex tree has no edges to sample")
    if max_attempts < 1:
        raise ValueError(f"max_attempts must be >= 1, got {max_attempts}")

    edges = t.edges
    rng = np.random.default_rng(seed)
    attempts = 0
    while attempts < max_attempts:
        block = rng.integers(0, len(edges), size=min(DRAW_BLOCK, max_attempts - attempts))
        for index in block.tolist():
            attempts += 1
            edge = edges[index]
            if is_cut_edge(t, edge, win):
                logger.debug(f"baseline: cut edge {edge.as_tuple()} after {attempts} attempts")
                return FoundEdge(edge, attempts)

    logger.debug(f"baseline: gave up after {max_attempts} attempts")
    return GaveUp(max_attempts)
