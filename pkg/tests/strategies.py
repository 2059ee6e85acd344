"""Hypothesis strategies for random weighted trees and tolerances."""

from hypothesis import strategies as st

from treesplit.generators import prufer_random_tree
from treesplit.splitter import ToleranceWindow
from treesplit.tree import from_topology


@st.composite
def weighted_trees(draw, min_n=1, max_n=40, max_weight=100, min_weight=0):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    weights = draw(st.lists(st.integers(min_weight, max_weight), min_size=n, max_size=n))
    return from_topology(prufer_random_tree(n, seed), weights)


@st.composite
def windows_for(draw, tree):
    """2*eps of zero, small, or large enough that every edge qualifies."""
    s = tree.total
    kind = draw(st.sampled_from(["zero", "small", "large"]))
    if kind == "zero":
        return ToleranceWindow(s, 0)
    if kind == "small":
        return ToleranceWindow(s, draw(st.integers(0, max(1, s // 5))))
    return ToleranceWindow(s, draw(st.integers(s, s + 10)))


@st.composite
def trees_with_windows(draw, **kwargs):
    tree = draw(weighted_trees(**kwargs))
    return tree, draw(windows_for(tree))
