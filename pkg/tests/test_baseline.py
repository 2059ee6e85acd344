"""Random-edge rejection sampling."""

import numpy as np
import pytest
from hypothesis import given

from treesplit.baseline import FoundEdge, GaveUp, random_edge_baseline
from treesplit.errors import NoEdges
from treesplit.splitter import ToleranceWindow, is_cut_edge, oracle_find_all
from treesplit.tree import Edge, build

from tests.strategies import trees_with_windows


def test_wide_window_first_draw(balanced_failure_tree):
    win = ToleranceWindow.for_tree(balanced_failure_tree, balanced_failure_tree.total)
    outcome = random_edge_baseline(balanced_failure_tree, win, 10, seed=0)
    assert isinstance(outcome, FoundEdge)
    assert outcome.attempts == 1


def test_gives_up_without_cut_edge(balanced_failure_tree):
    win = ToleranceWindow.for_tree(balanced_failure_tree, 1)
    assert random_edge_baseline(balanced_failure_tree, win, 1000, seed=5) == GaveUp(1000)


def test_gives_up_across_blocks(heavy_component_tree):
    # more draws than one block
    assert random_edge_baseline(heavy_component_tree, ToleranceWindow(10, 2), 2500, seed=1) == GaveUp(2500)


def test_single_vertex():
    t = build(1, [1], [])
    with pytest.raises(NoEdges):
        random_edge_baseline(t, ToleranceWindow(1, 0), 10, seed=0)


def test_max_attempts_must_be_positive(path4):
    with pytest.raises(ValueError):
        random_edge_baseline(path4, ToleranceWindow(4, 0), 0, seed=0)


def test_deterministic(path4):
    win = ToleranceWindow(4, 0)
    runs = [random_edge_baseline(path4, win, 50, seed=123) for _ in range(3)]
    assert runs[0] == runs[1] == runs[2]


def test_mean_attempts_on_path(path4):
    # one cut edge among three: attempts are geometric with mean 3
    win = ToleranceWindow(4, 0)
    attempts = []
    for seed in range(10_000):
        outcome = random_edge_baseline(path4, win, 1000, seed)
        assert outcome.edge == Edge(1, 2)
        attempts.append(outcome.attempts)
    assert np.mean(attempts) == pytest.approx(3.0, rel=0.05)


@given(trees_with_windows(min_n=2, max_n=40))
def test_found_edge_is_cut_edge(case):
    t, win = case
    outcome = random_edge_baseline(t, win, 50, seed=0)
    if isinstance(outcome, FoundEdge):
        assert is_cut_edge(t, outcome.edge, win)
        assert 1 <= outcome.attempts <= 50
    else:
        assert outcome.attempts == 50
    if not oracle_find_all(t, win):
        assert isinstance(outcome, GaveUp)
