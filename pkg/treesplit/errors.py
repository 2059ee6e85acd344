"""
Exception hierarchy for treesplit.

Every error the library raises derives from TreeSplitError; the CLI maps
all of them to exit code 2.
"""

from typing import Optional


class TreeSplitError(Exception):
    """Base class for all treesplit errors."""


# --- tree construction -------------------------------------------------------

class TreeBuildError(TreeSplitError, ValueError):
    """Raised when build() is given input that is not a valid weighted tree."""


class EmptyTree(TreeBuildError):
    pass


class WeightCountMismatch(TreeBuildError):
    pass


class EdgeCountMismatch(TreeBuildError):
    pass


class Disconnected(TreeBuildError):
    pass


class SelfLoop(TreeBuildError):
    pass


class DuplicateEdge(TreeBuildError):
    pass


class IdOutOfRange(TreeBuildError):
    pass


class NegativeWeight(TreeBuildError):
    pass


class WeightOverflow(TreeBuildError):
    """Total weight would not fit in a signed 64-bit integer."""


# --- queries -----------------------------------------------------------------

class InvalidVertex(TreeSplitError, ValueError):
    pass


class EdgeNotInTree(TreeSplitError, ValueError):
    pass


class IsolatedVertex(TreeSplitError, ValueError):
    """The average component weight is undefined for a vertex of degree 0."""


class NoEdges(TreeSplitError, ValueError):
    """The edge sampler needs at least one edge to draw from."""


# --- text formats and CLI ----------------------------------------------------

class TreeFileError(TreeSplitError, ValueError):
    """Problem reading a tree file; carries the 1-based line number when known."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class TreeFileSyntaxError(TreeFileError):
    pass


class TooManyFractionalDigits(TreeFileError):
    pass


class EpsilonNotRepresentable(TreeSplitError, ValueError):
    """2*epsilon is negative or not an integer at the tree's decimal scale."""


class InvalidWeightSpec(TreeSplitError, ValueError):
    pass


class InvalidBenchConfig(TreeSplitError, ValueError):
    pass


class BenchAgreementError(TreeSplitError, AssertionError):
    """The benchmark harness found two methods disagreeing on one instance."""


class WindowMismatch(TreeSplitError, ValueError):
    """A ToleranceWindow built for a different total weight than the tree's."""
