"""Test the tree model and preorder encoding."""

import pytest
from hypothesis import given

from rrdist.errors import EncodingError, NodeNotFoundError, SizeMismatchError
from rrdist.tree import (
    NodeCategory,
    NodeRef,
    Tree,
    catalan,
    cherry_position,
    common_sibling_leaf_pairs,
    inorder_internal_nodes,
    node_category,
    parse_encoding,
    serialize,
)

from .strategies import encodings

FIG1_LEFT = "1101100101000"
FIG1_RIGHT = "1101110001000"


def test_parse_empty_tree():
    t = parse_encoding("0")
    assert t.size == 0
    assert t.leaf_count == 1
    assert t == Tree.leaf()


def test_parse_size_six():
    t = parse_encoding(FIG1_LEFT)
    assert t.size == 6
    assert t.leaf_count == 7


@pytest.mark.parametrize(
    "text, position",
    [
        ("1100", 4),
        ("", 0),
        ("1", 1),
        ("00", 1),
        ("10a0", 2),
        ("1000", 3),
        ("12", 1),
    ],
)
def test_parse_reports_first_offending_position(text, position):
    with pytest.raises(EncodingError) as excinfo:
        parse_encoding(text)
    assert excinfo.value.position == position
    assert isinstance(excinfo.value, ValueError)


def test_serialize_examples():
    assert serialize(Tree.leaf()) == "0"
    assert serialize(parse_encoding(FIG1_RIGHT)) == FIG1_RIGHT
    assert serialize(Tree.node(Tree.leaf(), Tree.node(Tree.leaf(), Tree.leaf()))) == "10100"


@given(encodings)
def test_encoding_round_trip(text):
    t = parse_encoding(text)
    assert serialize(t) == text
    assert len(text) == 2 * t.size + 1


def test_inorder_small_trees():
    assert inorder_internal_nodes(parse_encoding("10100")) == [
        NodeRef("", 0),
        NodeRef("1", 1),
    ]
    assert inorder_internal_nodes(parse_encoding("11000")) == [
        NodeRef("0", 0),
        NodeRef("", 1),
    ]
    assert inorder_internal_nodes(Tree.leaf()) == []


def test_inorder_root_and_left_child():
    nodes = inorder_internal_nodes(parse_encoding(FIG1_RIGHT))
    by_address = {n.address: n.inorder_index for n in nodes}
    assert by_address[""] == 5
    assert by_address["0"] == 0
    assert [n.inorder_index for n in nodes] == list(range(6))


@given(encodings)
def test_inorder_matches_node_refs(text):
    t = parse_encoding(text)
    nodes = inorder_internal_nodes(t)
    assert len(nodes) == t.size
    for node in nodes:
        assert t.ref(t.node_at(node.address)) == node


def test_node_categories():
    t = parse_encoding(FIG1_RIGHT)
    nodes = inorder_internal_nodes(t)
    categories = [node_category(t, n) for n in nodes]
    assert categories[0] == NodeCategory.LEFT
    assert categories[5] == NodeCategory.LEFT
    assert categories[1:5] == [NodeCategory.INTERIOR] * 4
    assert node_category(parse_encoding("10100"), NodeRef("1", 1)) == NodeCategory.RIGHT


@given(encodings)
def test_root_is_left_node(text):
    t = parse_encoding(text)
    if t.size:
        assert node_category(t, NodeRef("", t.layout.rank[0])) == NodeCategory.LEFT


@given(encodings)
def test_layout_categories_match_addresses(text):
    t = parse_encoding(text)
    for node in inorder_internal_nodes(t):
        p = t.node_at(node.address)
        assert t.layout.category[p] == node_category(t, node)


def test_node_at_rejects_leaves_and_bad_addresses():
    t = parse_encoding("10100")
    assert t.node_at("") == 0
    assert t.node_at("1") == 2
    with pytest.raises(NodeNotFoundError):
        t.node_at("0")
    with pytest.raises(NodeNotFoundError):
        t.node_at("11")
    with pytest.raises(NodeNotFoundError):
        t.node_at("110")
    with pytest.raises(NodeNotFoundError):
        t.node_at("x")


def test_address_of_inverts_node_at():
    t = parse_encoding(FIG1_LEFT)
    for address in ["", "0", "01", "010", "011", "0111"]:
        assert t.address_of(t.node_at(address)) == address


def test_common_sibling_leaf_pairs_examples():
    assert common_sibling_leaf_pairs((parse_encoding("1100100"), parse_encoding("1110000"))) == {0}
    assert common_sibling_leaf_pairs((parse_encoding("11000"), parse_encoding("10100"))) == set()


@given(encodings)
def test_tree_shares_sibling_pairs_with_itself(text):
    t = parse_encoding(text)
    if t.size:
        assert common_sibling_leaf_pairs((t, t))


def test_common_sibling_leaf_pairs_size_mismatch():
    with pytest.raises(SizeMismatchError):
        common_sibling_leaf_pairs((parse_encoding("11000"), parse_encoding("100")))


def test_sibling_leaf_pairs_and_positions():
    t = parse_encoding("1100100")
    assert t.sibling_leaf_pairs() == {0, 2}
    assert cherry_position(t.bits, 0) == 1
    assert cherry_position(t.bits, 2) == 4
    assert cherry_position(t.bits, 1) == -1


def test_subtree():
    t = parse_encoding(FIG1_LEFT)
    assert t.subtree(t.node_at("01")).bits == "110010100"
    assert t.right_child(0) == 12
    assert t.left_child(0) == 1


def test_trees_compare_structurally():
    assert parse_encoding("10100") == Tree("10100")
    assert len({Tree("10100"), parse_encoding("10100"), Tree("11000")}) == 2
    assert sorted([Tree("11000"), Tree("10100")]) == [Tree("10100"), Tree("11000")]


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 14), (7, 429), (12, 208012)])
def test_catalan(n, expected):
    assert catalan(n) == expected
