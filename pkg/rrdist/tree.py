"""
Rooted ordered full binary trees and their preorder 0/1 encoding.

A tree of size n has n internal nodes and n + 1 leaves. It is stored as its
preorder encoding ('1' for an internal node, '0' for a leaf), so equality,
hashing and ordering are structural. Node positions used throughout the
package are indices into that encoding.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import accumulate
from math import comb
from typing import Iterator, List, Optional, Sequence, Set, Tuple

from .errors import EncodingError, NodeNotFoundError, SizeMismatchError


class NodeCategory(Enum):
    """Position of an internal node relative to the left and right arms."""

    LEFT = "LeftNode"
    RIGHT = "RightNode"
    INTERIOR = "InteriorNode"


@dataclass(frozen=True)
class NodeRef:
    """
    Reference to an internal node.

    Args:
        address: Path from the root, '0' for a left step and '1' for a
            right step. The root has the empty address.
        inorder_index: Rank of the node among internal nodes in in-order.
    """

    address: str
    inorder_index: int


class _Layout:
    """Child/parent links and in-order ranks of a tree, indexed by position."""

    __slots__ = ("right", "parent", "inorder", "rank", "category")

    def __init__(self, bits: str):
        m = len(bits)
        right = [-1] * m
        # reverse pass: the stack holds start positions of finished subtrees
        stack: List[int] = []
        for p in range(m - 1, -1, -1):
            if bits[p] == "1":
                stack.pop()
                right[p] = stack.pop()
            stack.append(p)

        parent = [-1] * m
        zeros = list(accumulate(1 if c == "0" else 0 for c in bits))
        size = m // 2
        inorder = [0] * size
        rank = [-1] * m
        category: List[Optional[NodeCategory]] = [None] * m
        on_left = [False] * m
        on_right = [False] * m
        if m:
            on_left[0] = True
        for p in range(m):
            r = right[p]
            if r < 0:
                continue
            parent[p + 1] = p
            parent[r] = p
            # leaves before the right subtree, minus one, is the in-order rank
            k = zeros[r - 1] - 1
            inorder[k] = p
            rank[p] = k
            on_left[p + 1] = on_left[p]
            on_right[r] = on_right[p] or p == 0
            if on_left[p]:
                category[p] = NodeCategory.LEFT
            elif on_right[p]:
                category[p] = NodeCategory.RIGHT
            else:
                category[p] = NodeCategory.INTERIOR

        self.right = right
        self.parent = parent
        self.inorder = inorder
        self.rank = rank
        self.category = category


@dataclass(frozen=True, order=True)
class Tree:
    """
    A rooted ordered full binary tree, identified by its preorder encoding.

    Use parse_encoding() to build a tree from untrusted text; the
    constructor assumes a valid encoding.

    Example:
        >>> t = parse_encoding("10100")
        >>> t.size
        2
    """

    bits: str

    @classmethod
    def leaf(cls) -> "Tree":
        """The empty tree: a single leaf, size 0."""
        return cls("0")

    @classmethod
    def node(cls, left: "Tree", right: "Tree") -> "Tree":
        """Join two trees under a new root."""
        return cls("1" + left.bits + right.bits)

    @property
    def size(self) -> int:
        return len(self.bits) // 2

    @property
    def leaf_count(self) -> int:
        return self.size + 1

    @cached_property
    def layout(self) -> _Layout:
        return _Layout(self.bits)

    def is_leaf(self, position: int) -> bool:
        return self.bits[position] == "0"

    def left_child(self, position: int) -> int:
        """Position of the left child of the internal node at ``position``."""
        return position + 1

    def right_child(self, position: int) -> int:
        """Position of the right child of the internal node at ``position``."""
        return self.layout.right[position]

    def subtree_end(self, position: int) -> int:
        """One past the last position of the subtree rooted at ``position``."""
        need = 1
        bits = self.bits
        q = position
        while need:
            need += 1 if bits[q] == "1" else -1
            q += 1
        return q

    def subtree(self, position: int) -> "Tree":
        return Tree(self.bits[position : self.subtree_end(position)])

    def node_at(self, address: str) -> int:
        """
        Resolve an address to the position of an internal node.

        Args:
            address: String over {'0', '1'}; empty for the root

        Returns:
            int: Position of the node in the encoding

        Raises:
            NodeNotFoundError: If the path leaves the tree or ends on a leaf
        """
        if any(c not in "01" for c in address):
            raise NodeNotFoundError(f"Invalid address {address!r}")
        p = 0
        for step, c in enumerate(address):
            if self.is_leaf(p):
                raise NodeNotFoundError(
                    f"Address {address!r} passes through a leaf after "
                    f"{step} steps in tree {self.bits}"
                )
            p = p + 1 if c == "0" else self.right_child(p)
        if self.is_leaf(p):
            raise NodeNotFoundError(
                f"Address {address!r} is a leaf in tree {self.bits}"
            )
        return p

    def address_of(self, position: int) -> str:
        """Binary address of the node at ``position``."""
        parent = self.layout.parent
        steps = []
        p = position
        while parent[p] >= 0:
            q = parent[p]
            steps.append("0" if p == q + 1 else "1")
            p = q
        return "".join(reversed(steps))

    def ref(self, position: int) -> NodeRef:
        """NodeRef for the internal node at ``position``."""
        if self.is_leaf(position):
            raise NodeNotFoundError(f"Position {position} is a leaf")
        return NodeRef(self.address_of(position), self.layout.rank[position])

    def sibling_leaf_pairs(self) -> Set[int]:
        """Leaf indices i such that leaves i and i + 1 hang from one node."""
        return set(_iter_cherries(self.bits))

    def __str__(self) -> str:
        return self.bits


def _iter_cherries(bits: str) -> Iterator[int]:
    """Yield the left leaf index of every node with two leaf children."""
    for leaf, _ in _iter_cherry_positions(bits):
        yield leaf


def cherry_position(bits: str, leaf: int) -> int:
    """Position of the node whose children are leaves ``leaf`` and ``leaf + 1``, or -1."""
    for p_leaf, p in _iter_cherry_positions(bits):
        if p_leaf == leaf:
            return p
        if p_leaf > leaf:
            break
    return -1


def _iter_cherry_positions(bits: str) -> Iterator[Tuple[int, int]]:
    zeros = 0
    last = 0
    p = bits.find("100")
    while p >= 0:
        zeros += bits.count("0", last, p)
        last = p
        yield zeros, p
        p = bits.find("100", p + 3)


def parse_encoding(text: str) -> Tree:
    """
    Parse a preorder 0/1 encoding.

    Args:
        text: Encoding, '1' for an internal node and '0' for a leaf

    Returns:
        Tree: The unique tree with that encoding

    Raises:
        EncodingError: With the first offending position. A character outside
            {'0', '1'} is reported at its index, a character following an
            already complete tree at its index, and a text that ends before
            the tree is complete at len(text).
    """
    if not isinstance(text, str):
        raise EncodingError(f"Expected a string, got {type(text).__name__}", 0)
    need = 1
    for i, c in enumerate(text):
        if c not in "01":
            raise EncodingError(f"Invalid character {c!r}", i)
        if need == 0:
            raise EncodingError("Trailing characters after a complete tree", i)
        need += 1 if c == "1" else -1
    if need != 0:
        raise EncodingError(
            f"Encoding ends with {need} missing leaves "
            "(leaves must number internal nodes + 1)",
            len(text),
        )
    return Tree(text)


def serialize(t: Tree) -> str:
    """Preorder encoding of ``t``, of length 2n + 1."""
    return t.bits


def inorder_internal_nodes(t: Tree) -> List[NodeRef]:
    """
    Internal nodes in in-order (left subtree, node, right subtree).

    Index 0 is the deepest node on the left arm.
    """
    layout = t.layout
    bits = t.bits
    addresses = {0: ""} if t.size else {}
    # preorder visits parents first, so each address extends a known one
    for p in range(len(bits)):
        r = layout.right[p]
        if r < 0:
            continue
        a = addresses[p]
        if bits[p + 1] == "1":
            addresses[p + 1] = a + "0"
        if bits[r] == "1":
            addresses[r] = a + "1"
    return [NodeRef(addresses[p], k) for k, p in enumerate(layout.inorder)]


def node_category(t: Tree, node: NodeRef) -> NodeCategory:
    """
    Category of a node by its address.

    Raises:
        NodeNotFoundError: If the address does not resolve in ``t``
    """
    t.node_at(node.address)
    return address_category(node.address)


def address_category(address: str) -> NodeCategory:
    if "1" not in address:
        return NodeCategory.LEFT
    if "0" not in address:
        return NodeCategory.RIGHT
    return NodeCategory.INTERIOR


def common_sibling_leaf_pairs(pair: Sequence[Tree]) -> Set[int]:
    """
    Leaf indices i whose leaves i, i + 1 are siblings in both trees.

    Args:
        pair: A TreePair or any (S, T) sequence of two trees

    Raises:
        SizeMismatchError: If the trees differ in size
    """
    s, t = pair
    if s.size != t.size:
        raise SizeMismatchError(s.size, t.size)
    return s.sibling_leaf_pairs() & t.sibling_leaf_pairs()


def catalan(n: int) -> int:
    """Number of trees of size n."""
    return comb(2 * n, n) // (n + 1)
