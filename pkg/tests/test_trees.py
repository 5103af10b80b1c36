import pytest
from hypothesis import given
from hypothesis import strategies as st

from mnpterm import trees
from mnpterm.trees import Leaf, Node, TreeSyntaxError


def test_format_roundtrip_simple():
    t = trees.parse_tree("((transcription factor<h>) binding<h>)")
    assert t == Node(Node(Leaf("transcription"), Leaf("factor"), 1), Leaf("binding"), 1)
    assert trees.format_tree(t) == "((transcription factor<h>) binding<h>)"
    assert trees.head_leaf(t) == "binding"


def test_left_headed():
    t = trees.parse_tree("(NN<h> (IN=of NN<h>))")
    assert trees.head_leaf(t) == "NN"
    assert trees.leaves(t) == ["NN", "IN=of", "NN"]


@pytest.mark.parametrize(
    "text, message",
    [
        ("(NN NN", "unbalanced"),
        ("NN NN)", "unbalanced"),
        ("(NN NN)", "exactly one head"),
        ("(NN<h> NN<h>)", "exactly one head"),
        ("(NN<h> NN JJ)", "exactly 2 children"),
        ("(NN<h>)", "exactly 2 children"),
        ("(JJ NN<h>)<h>", "root"),
        ("", "empty"),
        ("(JJ NN<h><h>)", "repeated"),
    ],
)
def test_syntax_errors(text, message):
    with pytest.raises(TreeSyntaxError, match=message):
        trees.parse_tree(text)


def test_int_leaves():
    t = trees.parse_tree("(0 1<h>)", int)
    assert trees.leaves(t) == [0, 1]
    with pytest.raises(TreeSyntaxError, match="bad leaf"):
        trees.parse_tree("(0 x<h>)", int)


def test_graft_single_level():
    t = Node(Leaf(1), Leaf(2), 1)
    sub = Node(Leaf(0), Leaf(1), 1)  # contains leaf 1 again; must not recurse
    assert trees.graft(t, {1: sub}) == Node(sub, Leaf(2), 1)


def test_relabel_positions():
    t = Node(Leaf(4), Node(Leaf(6), Leaf(9), 0), 1)
    local, labels = trees.relabel_positions(t)
    assert labels == [4, 6, 9]
    assert local == Node(Leaf(0), Node(Leaf(1), Leaf(2), 0), 1)


@st.composite
def random_trees(draw, lo=0, hi=None):
    hi = draw(st.integers(1, 8)) if hi is None else hi
    if hi - lo == 1:
        return Leaf(lo)
    cut = draw(st.integers(lo + 1, hi - 1))
    return Node(draw(random_trees(lo, cut)), draw(random_trees(cut, hi)), draw(st.integers(0, 1)))


@given(random_trees())
def test_text_roundtrip(t):
    assert trees.parse_tree(trees.format_tree(t), int) == t


@given(random_trees())
def test_head_path_unique(t):
    # following head marks reaches exactly one leaf, which is a real leaf
    assert trees.head_leaf(t) in trees.leaves(t)
    assert sum(1 for _ in trees.internal_nodes(t)) == len(trees.leaves(t)) - 1
