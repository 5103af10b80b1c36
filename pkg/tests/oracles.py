"""Independent reference implementations used to check the real code."""

import re

from mnpterm import trees

_LEAF = re.compile(r"(?<=[\s(])[^\s()<]+(?:<h>)?")


def pattern_leaf_tokens(pattern_text: str) -> list[tuple[str, str | None]]:
    """(tag, anchor) for each leaf token, read straight off the bracketed text."""
    out = []
    for tok in _LEAF.findall(pattern_text):
        tok = tok.removesuffix("<h>")
        tag, _, anchor = tok.partition("=")
        out.append((tag, anchor or None))
    return out


def brute_force_match(pattern_lines: list[str], seq: list[tuple[str, str]]) -> list:
    """Trees over offsets for every pattern line whose leaves accept ``seq``."""
    found = []
    for line in pattern_lines:
        leaves = pattern_leaf_tokens(line)
        if len(leaves) != len(seq):
            continue
        if all(t == tag and (a is None or a == lemma.casefold()) for (t, a), (tag, lemma) in zip(leaves, seq)):
            counter = iter(range(len(seq)))
            text = _LEAF.sub(lambda m: str(next(counter)) + ("<h>" if m.group().endswith("<h>") else ""), line)
            found.append(trees.parse_tree(text, int))
    return found


def random_tree(labels, rng):
    """Uniformly split, random head marks; labels stay in order."""
    labels = list(labels)
    if len(labels) == 1:
        return trees.Leaf(labels[0])
    cut = rng.randint(1, len(labels) - 1)
    return trees.Node(random_tree(labels[:cut], rng), random_tree(labels[cut:], rng), rng.randint(0, 1))
