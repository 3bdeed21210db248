"""Test rotations, restricted moves and pair reduction."""

import random

import pytest
from hypothesis import given, strategies as st

from rrdist.errors import InapplicableRotationError, SizeMismatchError, UnreducedPairError
from rrdist.transform import (
    Direction,
    Move,
    ReducedTreePair,
    TreePair,
    applicable_moves,
    apply_move,
    apply_word,
    move_word,
    parse_move,
    reduce_pair,
    remove_common_pair,
    rotate,
)
from rrdist.tree import NodeRef, Tree, common_sibling_leaf_pairs, inorder_internal_nodes

from rrdist.sampling import Seed, sample_pair

from .strategies import encodings, sampled_pairs, small_pairs


def test_left_rotation_string_rewrite():
    t = Tree("1101100101000")
    assert rotate(t, "01", Direction.LEFT) == Tree("1101110001000")
    node = next(n for n in inorder_internal_nodes(t) if n.address == "01")
    assert rotate(t, node, "left") == Tree("1101110001000")


def test_right_rotation_undoes_left_rotation():
    assert rotate(Tree("1101110001000"), "01", Direction.RIGHT) == Tree("1101100101000")


def test_rotation_needs_internal_child():
    with pytest.raises(InapplicableRotationError):
        rotate(Tree("10100"), NodeRef("", 0), Direction.RIGHT)
    with pytest.raises(InapplicableRotationError):
        rotate(Tree("11000"), "", Direction.LEFT)


@given(encodings)
def test_rotation_inverse_law(text):
    t = Tree(text)
    for node in inorder_internal_nodes(t):
        p = t.node_at(node.address)
        if not t.is_leaf(t.right_child(p)):
            rotated = rotate(t, node.address, Direction.LEFT)
            assert rotated.size == t.size
            assert rotate(rotated, node.address, Direction.RIGHT) == t
        if not t.is_leaf(p + 1):
            rotated = rotate(t, node.address, Direction.RIGHT)
            assert rotate(rotated, node.address, Direction.LEFT) == t


@pytest.mark.parametrize(
    "bits, moves",
    [
        ("10100", {Move.LEFT_AT_ROOT}),
        ("0", set()),
        ("100", set()),
        ("1011000", {Move.LEFT_AT_ROOT, Move.RIGHT_AT_RIGHT_CHILD}),
        ("11000", {Move.RIGHT_AT_ROOT}),
        ("1010100", {Move.LEFT_AT_ROOT, Move.LEFT_AT_RIGHT_CHILD}),
    ],
)
def test_applicable_moves(bits, moves):
    assert applicable_moves(Tree(bits)) == moves


def test_apply_move_examples():
    assert apply_move(Tree("10100"), Move.LEFT_AT_ROOT) == Tree("11000")
    assert apply_move(Tree("1011000"), "x1") == Tree("1010100")
    with pytest.raises(InapplicableRotationError):
        apply_move(Tree("11000"), Move.RIGHT_AT_RIGHT_CHILD)


@given(encodings)
def test_moves_are_undone_by_their_inverse(text):
    t = Tree(text)
    for move in applicable_moves(t):
        assert apply_move(apply_move(t, move), move.inverse) == t


def test_apply_word_walks_the_size_three_path():
    path = ["1110000", "1100100", "1010100", "1011000", "1101000"]
    word = ["x0", "x0", "x1i", "x0i"]
    assert apply_word(Tree(path[0]), word) == Tree(path[-1])


def test_parse_move_and_word():
    assert parse_move(" x1i ") is Move.LEFT_AT_RIGHT_CHILD
    assert move_word([Move.RIGHT_AT_ROOT, Move.LEFT_AT_RIGHT_CHILD]) == "x0 x1i"
    assert Move.LEFT_AT_ROOT.letter == "x0⁻¹"
    assert Move.RIGHT_AT_RIGHT_CHILD.address == "1"
    with pytest.raises(ValueError):
        parse_move("x2")


def test_tree_pair_sizes_must_match():
    with pytest.raises(SizeMismatchError):
        TreePair(Tree("11000"), Tree("100"))
    with pytest.raises(SizeMismatchError):
        reduce_pair((Tree("11000"), Tree("100")))


def test_reduce_pair_example():
    reduced = reduce_pair(TreePair(Tree("1100100"), Tree("1110000")))
    assert (reduced.s, reduced.t) == (Tree("10100"), Tree("11000"))
    assert reduced.original_size == 3
    assert reduced.size == 2


def test_reduce_identical_trees_to_empty_pair():
    t = Tree("1101100101000")
    reduced = reduce_pair((t, t))
    assert (reduced.s, reduced.t) == (Tree.leaf(), Tree.leaf())
    assert reduced.original_size == 6


def test_reduce_already_reduced_pair_is_unchanged():
    reduced = reduce_pair((Tree("11000"), Tree("10100")))
    assert (reduced.s.bits, reduced.t.bits) == ("11000", "10100")
    assert reduce_pair(reduced) is reduced


def test_remove_common_pair_single_step():
    pair = remove_common_pair(TreePair(Tree("1100100"), Tree("1110000")), 0)
    assert pair == TreePair(Tree("10100"), Tree("11000"))
    with pytest.raises(ValueError):
        remove_common_pair(TreePair(Tree("11000"), Tree("10100")), 0)


@given(sampled_pairs)
def test_reduced_pairs_have_no_common_sibling_leaves(pair):
    reduced = reduce_pair(pair)
    assert isinstance(reduced, ReducedTreePair)
    assert reduced.s.size == reduced.t.size <= pair.size
    assert not common_sibling_leaf_pairs(reduced)


def _reduce_in_random_order(pair, rnd):
    current = pair
    while True:
        common = sorted(common_sibling_leaf_pairs(current))
        if not common:
            return current
        current = remove_common_pair(current, rnd.choice(common))


@given(small_pairs, st.randoms(use_true_random=False))
def test_reduction_is_confluent(pair, rnd):
    current = _reduce_in_random_order(pair, rnd)
    reduced = reduce_pair(pair)
    assert (current.s, current.t) == (reduced.s, reduced.t)


@pytest.mark.slow
def test_reduction_is_confluent_on_many_pairs():
    for index in range(10_000):
        pair = sample_pair(1 + index % 12, Seed(77, index))
        current = _reduce_in_random_order(pair, random.Random(index))
        reduced = reduce_pair(pair)
        assert (current.s, current.t) == (reduced.s, reduced.t)


def test_reduced_tree_pair_rejects_common_sibling_leaves():
    with pytest.raises(UnreducedPairError) as excinfo:
        ReducedTreePair(Tree("1100100"), Tree("1110000"), 3)
    assert excinfo.value.leaf == 0


def test_reduced_tree_pair_checks_sizes():
    with pytest.raises(SizeMismatchError):
        ReducedTreePair(Tree("11000"), Tree("100"), 2)
    with pytest.raises(SizeMismatchError):
        ReducedTreePair(Tree("11000"), Tree("10100"), 1)
    assert ReducedTreePair(Tree.leaf(), Tree.leaf(), 4).size == 0


def test_shared_rotation_can_change_the_reduced_pair():
    pair = TreePair(Tree("1010100"), Tree("1011000"))
    assert reduce_pair(pair) == ReducedTreePair(pair.s, pair.t, 3)
    rotated = TreePair(apply_move(pair.s, "x0i"), apply_move(pair.t, "x0i"))
    assert rotated == TreePair(Tree("1100100"), Tree("1101000"))
    reduced = reduce_pair(rotated)
    assert (reduced.s, reduced.t) == (rotated.s, rotated.t)
    assert (reduced.s, reduced.t) != (pair.s, pair.t)
