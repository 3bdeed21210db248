"""
Rotations, the four restricted moves, and tree-pair reduction.

A left rotation at a node P promotes its right child, a right rotation
promotes its left child. In encodings a left rotation rewrites ``1x1yz``
into ``11xyz`` where x, y and z are subtree encodings.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, Iterator, List, Sequence, Union

from .errors import (
    InapplicableRotationError,
    SizeMismatchError,
    UnreducedPairError,
)
from .tree import NodeRef, Tree, cherry_position, common_sibling_leaf_pairs

logger = logging.getLogger(__name__)


class Direction(Enum):
    LEFT = "left"
    RIGHT = "right"


class Move(Enum):
    """
    Restricted rotations, named after the generators of Thompson's group F.

    x0 is a right rotation at the root; x1 is taken to be a right rotation
    at the right child of the root. The ``i`` suffix marks the inverse.
    """

    RIGHT_AT_ROOT = "x0"
    LEFT_AT_ROOT = "x0i"
    RIGHT_AT_RIGHT_CHILD = "x1"
    LEFT_AT_RIGHT_CHILD = "x1i"

    @property
    def address(self) -> str:
        return "" if self in (Move.RIGHT_AT_ROOT, Move.LEFT_AT_ROOT) else "1"

    @property
    def direction(self) -> Direction:
        if self in (Move.RIGHT_AT_ROOT, Move.RIGHT_AT_RIGHT_CHILD):
            return Direction.RIGHT
        return Direction.LEFT

    @property
    def inverse(self) -> "Move":
        return _INVERSES[self]

    @property
    def letter(self) -> str:
        """Group letter, e.g. ``x0`` or ``x1⁻¹``."""
        return self.value[:2] + ("⁻¹" if self.value.endswith("i") else "")


_INVERSES = {
    Move.RIGHT_AT_ROOT: Move.LEFT_AT_ROOT,
    Move.LEFT_AT_ROOT: Move.RIGHT_AT_ROOT,
    Move.RIGHT_AT_RIGHT_CHILD: Move.LEFT_AT_RIGHT_CHILD,
    Move.LEFT_AT_RIGHT_CHILD: Move.RIGHT_AT_RIGHT_CHILD,
}


def parse_move(name: str) -> Move:
    """
    Parse a CLI/CSV move name (``x0``, ``x0i``, ``x1``, ``x1i``).

    Raises:
        ValueError: For any other name
    """
    try:
        return Move(name.strip())
    except ValueError:
        raise ValueError(
            f"Unknown move {name!r}. Available: {[m.value for m in Move]}"
        ) from None


def move_word(moves: Iterable[Move]) -> str:
    """Space separated move names."""
    return " ".join(m.value for m in moves)


@dataclass(frozen=True)
class TreePair:
    """
    Two trees of the same size.

    Raises:
        SizeMismatchError: If the sizes differ
    """

    s: Tree
    t: Tree

    def __post_init__(self):
        if self.s.size != self.t.size:
            raise SizeMismatchError(self.s.size, self.t.size)

    @property
    def size(self) -> int:
        return self.s.size

    def __iter__(self) -> Iterator[Tree]:
        yield self.s
        yield self.t

    def swapped(self) -> "TreePair":
        return TreePair(self.t, self.s)


@dataclass(frozen=True)
class ReducedTreePair:
    """
    A tree pair with no common sibling-leaf pair.

    Args:
        s: Reduced first tree
        t: Reduced second tree
        original_size: Size of the pair before reduction

    Raises:
        SizeMismatchError: If the trees differ in size or are larger than
            original_size
        UnreducedPairError: If leaves i, i + 1 are siblings in both trees
    """

    s: Tree
    t: Tree
    original_size: int

    def __post_init__(self):
        if self.s.size != self.t.size:
            raise SizeMismatchError(self.s.size, self.t.size)
        if self.original_size < self.s.size:
            raise SizeMismatchError(self.original_size, self.s.size)
        common = common_sibling_leaf_pairs((self.s, self.t))
        if common:
            raise UnreducedPairError(min(common))

    @property
    def size(self) -> int:
        return self.s.size

    def __iter__(self) -> Iterator[Tree]:
        yield self.s
        yield self.t


AnyPair = Union[TreePair, ReducedTreePair]


def _position(t: Tree, at: Union[NodeRef, str]) -> int:
    address = at.address if isinstance(at, NodeRef) else at
    return t.node_at(address)


def rotate(t: Tree, at: Union[NodeRef, str], direction: Direction) -> Tree:
    """
    Rotate at an internal node.

    Args:
        t: Tree to rotate
        at: NodeRef or binary address of the node
        direction: LEFT promotes the right child, RIGHT promotes the left child

    Returns:
        Tree: The rotated tree; size and leaf order are preserved

    Raises:
        NodeNotFoundError: If ``at`` does not resolve to an internal node
        InapplicableRotationError: If the child to promote is a leaf
    """
    bits = t.bits
    p = _position(t, at)
    direction = Direction(direction)
    if direction is Direction.LEFT:
        c = t.right_child(p)
        if bits[c] == "0":
            raise InapplicableRotationError(
                f"Left rotation at {t.address_of(p)!r} needs an internal "
                f"right child in tree {bits}"
            )
        # 1 x 1 y z -> 1 1 x y z
        return Tree(bits[: p + 1] + "1" + bits[p + 1 : c] + bits[c + 1 :])

    if bits[p + 1] == "0":
        raise InapplicableRotationError(
            f"Right rotation at {t.address_of(p)!r} needs an internal "
            f"left child in tree {bits}"
        )
    # 1 1 x y z -> 1 x 1 y z
    x_end = t.subtree_end(p + 2)
    return Tree(bits[: p + 1] + bits[p + 2 : x_end] + "1" + bits[x_end:])


def applicable_moves(t: Tree) -> FrozenSet[Move]:
    """Restricted moves that can be applied to ``t``."""
    if t.size == 0:
        return frozenset()
    bits = t.bits
    moves = set()
    if bits[1] == "1":
        moves.add(Move.RIGHT_AT_ROOT)
    r = t.right_child(0)
    if bits[r] == "1":
        moves.add(Move.LEFT_AT_ROOT)
        if bits[r + 1] == "1":
            moves.add(Move.RIGHT_AT_RIGHT_CHILD)
        if bits[t.right_child(r)] == "1":
            moves.add(Move.LEFT_AT_RIGHT_CHILD)
    return frozenset(moves)


def apply_move(t: Tree, move: Union[Move, str]) -> Tree:
    """
    Apply a restricted move.

    Raises:
        InapplicableRotationError: If the move is not applicable to ``t``
    """
    move = Move(move)
    if move not in applicable_moves(t):
        raise InapplicableRotationError(
            f"Move {move.value} is not applicable to tree {t.bits}"
        )
    return rotate(t, move.address, move.direction)


def apply_word(t: Tree, moves: Iterable[Union[Move, str]]) -> Tree:
    """Apply a sequence of restricted moves from left to right."""
    for move in moves:
        t = apply_move(t, move)
    return t


def remove_common_pair(pair: AnyPair, leaf: int) -> TreePair:
    """
    Perform a single reduction at leaves ``leaf`` and ``leaf + 1``.

    Raises:
        ValueError: If those leaves are not siblings in both trees
    """
    s, t = pair
    ps = cherry_position(s.bits, leaf)
    pt = cherry_position(t.bits, leaf)
    if ps < 0 or pt < 0:
        raise ValueError(f"Leaves {leaf}, {leaf + 1} are not common siblings")
    return TreePair(
        Tree(s.bits[:ps] + "0" + s.bits[ps + 3 :]),
        Tree(t.bits[:pt] + "0" + t.bits[pt + 3 :]),
    )


class _Side:
    """Mutable view of one tree of a pair during reduction."""

    __slots__ = ("bits", "right", "parent", "is_leaf")

    def __init__(self, t: Tree):
        layout = t.layout
        self.bits = t.bits
        self.right = layout.right
        self.parent = layout.parent
        self.is_leaf = bytearray(c == "0" for c in t.bits)

    def encode(self) -> str:
        out: List[str] = []
        stack = [0]
        while stack:
            p = stack.pop()
            if self.is_leaf[p]:
                out.append("0")
            else:
                out.append("1")
                stack.append(self.right[p])
                stack.append(p + 1)
        return "".join(out)


def reduce_pair(pair: Union[AnyPair, Sequence[Tree]]) -> ReducedTreePair:
    """
    Remove common sibling-leaf pairs until none remain.

    Each reduction replaces the parent of leaves i and i + 1 by a single
    leaf in both trees. The result does not depend on the order in which
    reductions are applied; identical trees reduce to the empty pair.

    Args:
        pair: TreePair, ReducedTreePair or (S, T) sequence

    Returns:
        ReducedTreePair: Reduced trees and the size before reduction

    Raises:
        SizeMismatchError: If the trees differ in size
    """
    if isinstance(pair, ReducedTreePair):
        return pair
    s, t = pair
    if s.size != t.size:
        raise SizeMismatchError(s.size, t.size)
    original = s.size
    if not common_sibling_leaf_pairs((s, t)):
        return ReducedTreePair(s, t, original)

    a, b = _Side(s), _Side(t)
    leaves_a = [p for p, c in enumerate(s.bits) if c == "0"]
    leaves_b = [p for p, c in enumerate(t.bits) if c == "0"]
    # doubly linked list over the current leaves; elements grow as leaves merge
    pos_a = leaves_a
    pos_b = leaves_b
    count = len(pos_a)
    nxt = list(range(1, count)) + [-1]
    prv = list(range(-1, count - 1))
    alive = [True] * count
    pending = list(range(count - 2, -1, -1))
    removed = 0
    while pending:
        e = pending.pop()
        if not alive[e]:
            continue
        f = nxt[e]
        if f < 0:
            continue
        qa = a.parent[pos_a[e]]
        qb = b.parent[pos_b[e]]
        if qa != a.parent[pos_a[f]] or qb != b.parent[pos_b[f]]:
            continue
        a.is_leaf[qa] = 1
        b.is_leaf[qb] = 1
        g = len(pos_a)
        pos_a.append(qa)
        pos_b.append(qb)
        alive.append(True)
        alive[e] = alive[f] = False
        before, after = prv[e], nxt[f]
        prv.append(before)
        nxt.append(after)
        if before >= 0:
            nxt[before] = g
            pending.append(before)
        if after >= 0:
            prv[after] = g
        pending.append(g)
        removed += 1

    reduced = ReducedTreePair(Tree(a.encode()), Tree(b.encode()), original)
    logger.debug("Reduced pair of size %d by %d carets", original, removed)
    return reduced
