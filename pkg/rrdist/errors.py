"""
Exceptions raised by rrdist.

Bad input raises a ValueError subclass, failures of a long-running
computation raise a RuntimeError subclass.
"""

from typing import Optional


class RrdistError(Exception):
    """Base class for all rrdist errors."""


class EncodingError(RrdistError, ValueError):
    """
    Malformed preorder encoding.

    Args:
        message: Human readable description
        position: Index of the first offending character (len(text) when
            the text ends before the tree is complete)
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


class SizeMismatchError(RrdistError, ValueError):
    """The two trees of a pair have different sizes."""

    def __init__(self, left_size: int, right_size: int):
        super().__init__(
            f"Tree sizes differ: {left_size} != {right_size}. "
            "A tree pair needs two trees of the same size."
        )
        self.left_size = left_size
        self.right_size = right_size


class NodeNotFoundError(RrdistError, ValueError):
    """An address does not resolve to an internal node."""


class InapplicableRotationError(RrdistError, ValueError):
    """A rotation or restricted move needs an internal child that is a leaf."""


class UnreducedPairError(RrdistError, ValueError):
    """A pair that must be reduced still has a common sibling-leaf pair."""

    def __init__(self, leaf: int):
        super().__init__(
            f"Tree pair is not reduced: leaves {leaf} and {leaf + 1} are "
            "siblings in both trees"
        )
        self.leaf = leaf


class ClassificationError(RrdistError, ValueError):
    """Node types cannot be computed or paired."""


class OracleBoundError(RrdistError, ValueError):
    """Requested size is beyond what exhaustive enumeration supports."""

    def __init__(self, size: int, limit: int, what: str = "enumeration"):
        super().__init__(
            f"Size {size} is above the practical bound {limit} for {what}"
        )
        self.size = size
        self.limit = limit


class DegenerateFitError(RrdistError, ValueError):
    """A linear fit needs at least two distinct sizes."""


class OverlappingBucketsError(RrdistError, ValueError):
    """Bucket ranges overlap or are not sorted."""


class SamplingBudgetError(RrdistError, RuntimeError):
    """
    Histogram sampling ran out of budget before collecting enough pairs.

    Args:
        target: Requested reduced size
        kept: Number of pairs of that reduced size collected
        min_count: Number of pairs that was requested
        generated: Number of pairs generated in total
    """

    def __init__(
        self,
        target: int,
        kept: int,
        min_count: int,
        generated: int,
        hint: Optional[str] = None,
    ):
        message = (
            f"Only {kept}/{min_count} pairs of reduced size {target} "
            f"after generating {generated} pairs"
        )
        if hint:
            message = f"{message}. {hint}"
        super().__init__(message)
        self.target = target
        self.kept = kept
        self.min_count = min_count
        self.generated = generated
