"""Binary head-marked trees and their bracketed text form.

The same structure serves three purposes: parsing patterns (leaves are
``(tag, anchor)`` pairs), parses of testified terms and phrases (leaves
are word positions), and printed output (leaves are surfaces).

Text form::

    (JJ NN<h>)
    ((NN<h> NN) NN<h>)
    (NN<h> (IN=of NN<h>))

Every internal node has exactly two children and exactly one of them
carries ``<h>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterator, Mapping, Union


class TreeSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Leaf:
    label: Any


@dataclass(frozen=True)
class Node:
    left: "Tree"
    right: "Tree"
    head: int  # 0 = left child is head, 1 = right child

    def __post_init__(self):
        if self.head not in (0, 1):
            raise ValueError(f"head must be 0 or 1, got {self.head!r}")

    @property
    def children(self) -> tuple["Tree", "Tree"]:
        return (self.left, self.right)

    @property
    def head_child(self) -> "Tree":
        return self.right if self.head else self.left


Tree = Union[Leaf, Node]


def leaves(tree: Tree) -> list:
    """Leaf labels, left to right."""
    out = []
    stack = [tree]
    while stack:
        t = stack.pop()
        if isinstance(t, Leaf):
            out.append(t.label)
        else:
            stack.append(t.right)
            stack.append(t.left)
    return out


def head_leaf(tree: Tree):
    """Follow head marks from the root down to a leaf label."""
    while isinstance(tree, Node):
        tree = tree.head_child
    return tree.label


def internal_nodes(tree: Tree) -> Iterator[Node]:
    """All internal nodes, root first (pre-order)."""
    stack = [tree]
    while stack:
        t = stack.pop()
        if isinstance(t, Node):
            yield t
            stack.append(t.right)
            stack.append(t.left)


def depth(tree: Tree) -> int:
    if isinstance(tree, Leaf):
        return 0
    return 1 + max(depth(tree.left), depth(tree.right))


def map_leaves(tree: Tree, fn: Callable[[Any], Any]) -> Tree:
    if isinstance(tree, Leaf):
        return Leaf(fn(tree.label))
    return Node(map_leaves(tree.left, fn), map_leaves(tree.right, fn), tree.head)


def graft(tree: Tree, replacements: Mapping[Any, Tree]) -> Tree:
    """Replace every leaf whose label is a key of ``replacements`` by its subtree.

    Replacement is single-level: leaves inside a grafted subtree are not
    looked up again.
    """
    if isinstance(tree, Leaf):
        return replacements.get(tree.label, tree)
    return Node(graft(tree.left, replacements), graft(tree.right, replacements), tree.head)


def relabel_positions(tree: Tree) -> tuple[Tree, list]:
    """Renumber leaves to 0..k-1 in sorted label order.

    Returns the renumbered tree and the sorted original labels, so that
    ``original[new_label]`` recovers each leaf.
    """
    labels = sorted(leaves(tree))
    rank = {lab: i for i, lab in enumerate(labels)}
    return map_leaves(tree, rank.__getitem__), labels


def format_tree(tree: Tree, label: Callable[[Any], str] = str) -> str:
    if isinstance(tree, Leaf):
        return label(tree.label)
    left = format_tree(tree.left, label)
    right = format_tree(tree.right, label)
    if tree.head == 0:
        left += "<h>"
    else:
        right += "<h>"
    return f"({left} {right})"


def _tokenize(text: str) -> list[str]:
    spaced = text.replace("(", " ( ").replace(")", " ) ").replace("<h>", " <h> ")
    return spaced.split()


def parse_tree(text: str, leaf: Callable[[str], Any] = str) -> Tree:
    """Parse the bracketed form. ``leaf`` converts atom strings to labels.

    Raises TreeSyntaxError on unbalanced brackets, nodes that are not
    binary, or nodes without exactly one head mark.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise TreeSyntaxError("empty tree")
    pos = 0

    def parse_item() -> tuple[Tree, bool]:
        nonlocal pos
        if pos >= len(tokens):
            raise TreeSyntaxError("unbalanced brackets: unexpected end of input")
        tok = tokens[pos]
        if tok == ")":
            raise TreeSyntaxError("unbalanced brackets: unexpected ')'")
        if tok == "<h>":
            raise TreeSyntaxError("head mark without a preceding element")
        if tok == "(":
            pos += 1
            children = []
            while pos < len(tokens) and tokens[pos] != ")":
                children.append(parse_item())
            if pos >= len(tokens):
                raise TreeSyntaxError("unbalanced brackets: missing ')'")
            pos += 1
            if len(children) != 2:
                raise TreeSyntaxError(f"node must have exactly 2 children, found {len(children)}")
            marks = [is_head for _, is_head in children]
            if sum(marks) != 1:
                raise TreeSyntaxError(f"node must have exactly one head mark, found {sum(marks)}")
            item: Tree = Node(children[0][0], children[1][0], marks.index(True))
        else:
            try:
                item = Leaf(leaf(tok))
            except (ValueError, KeyError) as exc:
                raise TreeSyntaxError(f"bad leaf {tok!r}: {exc}") from None
            pos += 1
        marked = False
        if pos < len(tokens) and tokens[pos] == "<h>":
            marked = True
            pos += 1
            if pos < len(tokens) and tokens[pos] == "<h>":
                raise TreeSyntaxError("repeated head mark")
        return item, marked

    tree, marked = parse_item()
    if marked:
        raise TreeSyntaxError("head mark on the root")
    if pos != len(tokens):
        raise TreeSyntaxError(f"unbalanced brackets: trailing input {' '.join(tokens[pos:])!r}")
    return tree
