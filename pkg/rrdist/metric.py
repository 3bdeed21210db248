"""
Restricted rotation distance by node-type weights.

Every internal node of a reduced tree pair gets one of seven types from its
position in its tree. Nodes with the same in-order number form a node pair
and the distance is the sum of the pair weights in WEIGHTS. Classification
and summation are linear in the tree size.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Sequence, Tuple, Union

import numpy as np

from .errors import ClassificationError, SizeMismatchError
from .transform import AnyPair, ReducedTreePair, reduce_pair
from .tree import Tree

logger = logging.getLogger(__name__)


class FordhamType(Enum):
    R0 = "R0"
    RNI = "RNI"
    RI = "RI"
    LL = "LL"
    I0 = "I0"
    IR = "IR"
    L0 = "L0"

    @property
    def code(self) -> int:
        return _CODES[self]


TYPES: Tuple[FordhamType, ...] = tuple(FordhamType)
_CODES = {t: i for i, t in enumerate(TYPES)}

# rows and columns in TYPES order; L0 only pairs with L0
WEIGHTS = np.array(
    [
        [0, 2, 2, 1, 1, 3, -1],
        [2, 2, 2, 1, 1, 3, -1],
        [2, 2, 2, 1, 3, 3, -1],
        [1, 1, 1, 2, 2, 2, -1],
        [1, 1, 3, 2, 2, 4, -1],
        [3, 3, 3, 2, 4, 4, -1],
        [-1, -1, -1, -1, -1, -1, 0],
    ],
    dtype=np.int64,
)
WEIGHTS.setflags(write=False)

_R0, _RNI, _RI, _LL, _I0, _IR, _L0 = range(7)
_LEFT, _RIGHT, _INTERIOR = 0, 1, 2


def _classify_codes(bits: str) -> bytearray:
    """Type codes indexed by in-order number, from one preorder pass."""
    n = len(bits) // 2
    if n == 0:
        raise ClassificationError("Cannot classify the empty tree")
    cats = bytearray(n)
    right_leaf = bytearray(n)
    # categories of nodes whose left subtree is still being read
    stack: List[int] = []
    ctx = _LEFT
    k = 0
    for q, c in enumerate(bits):
        if c == "1":
            stack.append(ctx)
            ctx = _LEFT if ctx == _LEFT else _INTERIOR
            continue
        if not stack:
            break
        x = stack.pop()
        cats[k] = x
        right_leaf[k] = bits[q + 1] == "0"
        k += 1
        # an empty stack means x is on the right arm (the root included)
        ctx = _INTERIOR if stack else _RIGHT

    codes = bytearray(n)
    later_interior = False
    for k in range(n - 1, -1, -1):
        cat = cats[k]
        if cat == _INTERIOR:
            codes[k] = _I0 if right_leaf[k] else _IR
            later_interior = True
        elif cat == _LEFT:
            codes[k] = _LL
        elif k + 1 < n and cats[k + 1] == _INTERIOR:
            codes[k] = _RI
        else:
            codes[k] = _RNI if later_interior else _R0
    codes[0] = _L0
    return codes


def classify(t: Tree) -> List[FordhamType]:
    """
    Node types of ``t`` indexed by in-order number.

    Index 0 is L0, other left nodes are LL, interior nodes are I0 when their
    right child is a leaf and IR otherwise. A right node k is RI when node
    k + 1 is interior, RNI when some later node is interior, R0 otherwise.

    Raises:
        ClassificationError: For the empty tree
    """
    return [TYPES[c] for c in _classify_codes(t.bits)]


def pair_weight(a: Union[FordhamType, str], b: Union[FordhamType, str]) -> int:
    """
    Weight of a node pair.

    Raises:
        ClassificationError: If L0 is paired with another type
    """
    w = int(WEIGHTS[FordhamType(a).code, FordhamType(b).code])
    if w < 0:
        raise ClassificationError(f"L0 can only pair with L0, got ({a}, {b})")
    return w


@dataclass(frozen=True)
class DistanceResult:
    """
    Restricted rotation distance of a tree pair.

    Args:
        distance: Sum of node pair weights
        reduced_size: Size of the reduced pair the weights were taken from
        original_size: Size of the pair before reduction
    """

    distance: int
    reduced_size: int
    original_size: int
    s_codes: bytes = field(default=b"", repr=False)
    t_codes: bytes = field(default=b"", repr=False)

    @property
    def type_pairs(self) -> List[Tuple[FordhamType, FordhamType]]:
        return [(TYPES[a], TYPES[b]) for a, b in zip(self.s_codes, self.t_codes)]

    def describe_types(self) -> str:
        """Type pairs as ``(L0,L0) (LL,R0) ...``."""
        return " ".join(f"({a.value},{b.value})" for a, b in self.type_pairs)


def weigh(reduced: ReducedTreePair) -> DistanceResult:
    """Sum the node pair weights of an already reduced pair."""
    if reduced.size == 0:
        return DistanceResult(0, 0, reduced.original_size)
    a = _classify_codes(reduced.s.bits)
    b = _classify_codes(reduced.t.bits)
    weights = WEIGHTS[
        np.frombuffer(bytes(a), dtype=np.uint8),
        np.frombuffer(bytes(b), dtype=np.uint8),
    ]
    if (weights < 0).any():
        raise ClassificationError("L0 paired with another type")
    return DistanceResult(
        int(weights.sum()), reduced.size, reduced.original_size, bytes(a), bytes(b)
    )


def rrd(pair: Union[AnyPair, Sequence[Tree]], strict: bool = False) -> DistanceResult:
    """
    Restricted rotation distance d_R(S, T).

    Args:
        pair: TreePair, ReducedTreePair or (S, T) sequence
        strict: If True, reject pairs that are not already reduced instead
            of reducing them

    Returns:
        DistanceResult: Distance, reduced size and per-index type pairs

    Raises:
        SizeMismatchError: If the trees differ in size
        UnreducedPairError: In strict mode, if the pair still reduces
    """
    s, t = pair
    if s.size != t.size:
        raise SizeMismatchError(s.size, t.size)
    if strict and not isinstance(pair, ReducedTreePair):
        reduced = ReducedTreePair(s, t, s.size)
    else:
        reduced = reduce_pair(pair)
    return weigh(reduced)


def distance(s: Tree, t: Tree) -> int:
    """Shorthand for rrd((s, t)).distance."""
    return rrd((s, t)).distance


def type_pair_counts(result: DistanceResult) -> Counter:
    """Unordered type pair counts of a distance result, L0 pair excluded."""
    counts: Counter = Counter()
    for a, b in zip(result.s_codes, result.t_codes):
        if a == _L0:
            continue
        key = (TYPES[min(a, b)], TYPES[max(a, b)])
        counts[key] += 1
    return counts
