"""User-supplied linguistic resources: chunking rules, parsing patterns,
testified terminologies.

All three are line-oriented text files with ``#`` comments. Loaded
objects are immutable and can be shared between threads.
"""

from __future__ import annotations

import io
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence, TextIO

from mnpterm import trees
from mnpterm.corpus_io import TaggedWord
from mnpterm.errors import FormatError
from mnpterm.trees import Leaf, Tree, TreeSyntaxError

DEFAULT_CONTENT_TAGS = frozenset({"NN", "NNS", "NNP", "NNPS", "JJ", "FW"})


def _lines(source: TextIO | str):
    stream = io.StringIO(source) if isinstance(source, str) else source
    for lineno, raw in enumerate(stream, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield lineno, line


# ---------------------------------------------------------------- chunking


@dataclass(frozen=True)
class WordRule:
    """A word constraint. Lemma comparison ignores case; surface comparison
    (opt-in per directive) is exact."""

    word: str
    pos: str | None = None
    on_surface: bool = False

    def matches(self, w: TaggedWord) -> bool:
        if self.pos is not None and w.pos != self.pos:
            return False
        if self.on_surface:
            return w.surface == self.word
        return w.lemma.casefold() == self.word.casefold()


@dataclass(frozen=True)
class StructureElement:
    word: str | None = None
    pos: str | None = None

    def matches(self, w: TaggedWord) -> bool:
        if self.pos is not None and w.pos != self.pos:
            return False
        if self.word is not None:
            key = self.word.casefold()
            return w.lemma.casefold() == key or w.surface.casefold() == key
        return True

    def __str__(self) -> str:
        return f"{self.word or '*'}/{self.pos or '*'}"


@dataclass(frozen=True)
class ChunkingConfig:
    frontier_tags: frozenset[str] = frozenset()
    frontier_words: tuple[WordRule, ...] = ()
    # tag -> words let through although the tag is a frontier ("of"/IN)
    frontier_tag_exceptions: dict[str, frozenset[WordRule]] = field(default_factory=dict)
    # tag -> words stopped although the tag is allowed ("many"/JJ)
    allowed_tag_word_exceptions: dict[str, frozenset[WordRule]] = field(default_factory=dict)
    forbidden_structures: tuple[tuple[StructureElement, ...], ...] = ()

    def __post_init__(self):
        for tag, rules in self.frontier_tag_exceptions.items():
            clash = {r.word for r in rules} & {
                r.word for r in self.allowed_tag_word_exceptions.get(tag, ())
            }
            if clash:
                raise ValueError(f"{sorted(clash)} both allowed and forbidden for {tag}")
        for struct in self.forbidden_structures:
            if not struct:
                raise ValueError("empty forbidden structure")
            if any(e.word is None and e.pos is None for e in struct):
                raise ValueError("forbidden structure element constrains nothing")

    def is_exception(self, w: TaggedWord) -> bool:
        """True if ``w`` passes only thanks to a frontier-tag exception."""
        return w.pos in self.frontier_tags and any(
            r.matches(w) for r in self.frontier_tag_exceptions.get(w.pos, ())
        )

    def is_frontier(self, w: TaggedWord) -> bool:
        if any(r.matches(w) for r in self.frontier_words):
            return True
        if w.pos in self.frontier_tags:
            return not any(r.matches(w) for r in self.frontier_tag_exceptions.get(w.pos, ()))
        return any(r.matches(w) for r in self.allowed_tag_word_exceptions.get(w.pos, ()))


def _word_rule(args: list[str], lineno: int, need_pos: bool) -> WordRule:
    # <w> [pos <TAG>] [surface]
    if not args:
        raise FormatError("missing word", lineno)
    word, rest = args[0], args[1:]
    pos = None
    on_surface = False
    if rest[:1] == ["pos"]:
        if len(rest) < 2:
            raise FormatError("'pos' needs a tag", lineno)
        pos, rest = rest[1], rest[2:]
    if rest == ["surface"]:
        on_surface, rest = True, []
    if rest:
        raise FormatError(f"unexpected tokens {' '.join(rest)!r}", lineno)
    if need_pos and pos is None:
        raise FormatError("a tag is required ('pos <TAG>')", lineno)
    return WordRule(word if on_surface else word.casefold(), pos, on_surface)


def _structure_element(tok: str, lineno: int) -> StructureElement:
    if "/" not in tok:
        raise FormatError(f"structure element {tok!r} is not word/TAG", lineno)
    word, pos = tok.rsplit("/", 1)
    if not word or not pos:
        raise FormatError(f"structure element {tok!r} is not word/TAG", lineno)
    elem = StructureElement(None if word == "*" else word, None if pos == "*" else pos)
    if elem.word is None and elem.pos is None:
        raise FormatError(f"structure element {tok!r} constrains nothing", lineno)
    return elem


def parse_chunking_config(source: TextIO | str, name: str | None = None) -> ChunkingConfig:
    """Read chunking directives.

    ::

        frontier pos <TAG>
        frontier word <w> [pos <TAG>] [surface]
        allow word <w> pos <TAG> [surface]      # exception to a frontier tag
        forbid word <w> pos <TAG> [surface]     # exception to an allowed tag
        forbidden-structure <w>/<T> <w>/<T> ... # either side may be '*'
    """
    frontier_tags: dict[str, int] = {}
    frontier_words: list[WordRule] = []
    allow: dict[str, dict[WordRule, int]] = defaultdict(dict)
    forbid: dict[str, dict[WordRule, int]] = defaultdict(dict)
    structures: list[tuple[StructureElement, ...]] = []

    try:
        for lineno, line in _lines(source):
            toks = line.split()
            head = tuple(toks[:2])
            if head == ("frontier", "pos") and len(toks) == 3:
                frontier_tags.setdefault(toks[2], lineno)
            elif head == ("frontier", "word"):
                rule = _word_rule(toks[2:], lineno, need_pos=False)
                if rule not in frontier_words:
                    frontier_words.append(rule)
            elif head == ("allow", "word"):
                rule = _word_rule(toks[2:], lineno, need_pos=True)
                allow[rule.pos].setdefault(rule, lineno)
            elif head == ("forbid", "word"):
                rule = _word_rule(toks[2:], lineno, need_pos=True)
                forbid[rule.pos].setdefault(rule, lineno)
            elif toks[0] == "forbidden-structure":
                if len(toks) < 2:
                    raise FormatError("empty forbidden structure", lineno)
                struct = tuple(_structure_element(t, lineno) for t in toks[1:])
                if struct not in structures:
                    structures.append(struct)
            else:
                raise FormatError(f"unknown directive {line.strip()!r}", lineno)

        for tag, rules in allow.items():
            for rule, lineno in rules.items():
                if any(r.word == rule.word for r in forbid.get(tag, ())):
                    raise FormatError(
                        f"{rule.word!r} is both allowed and forbidden for {tag}", lineno
                    )
                if tag not in frontier_tags:
                    raise FormatError(f"exception {rule.word!r} to non-frontier tag {tag}", lineno)
        for tag, rules in forbid.items():
            for rule, lineno in rules.items():
                if tag in frontier_tags:
                    raise FormatError(
                        f"forbidding {rule.word!r} under {tag} conflicts with "
                        f"'frontier pos {tag}' (line {frontier_tags[tag]})",
                        lineno,
                    )
    except FormatError as exc:
        raise exc.with_source(name) if name else exc

    return ChunkingConfig(
        frontier_tags=frozenset(frontier_tags),
        frontier_words=tuple(frontier_words),
        frontier_tag_exceptions={t: frozenset(r) for t, r in allow.items()},
        allowed_tag_word_exceptions={t: frozenset(r) for t, r in forbid.items()},
        forbidden_structures=tuple(structures),
    )


# ---------------------------------------------------------------- patterns


@dataclass(frozen=True)
class PatternLeaf:
    tag: str
    anchor: str | None = None  # lemma the word must carry

    def accepts(self, pos: str, lemma: str) -> bool:
        return self.tag == pos and (self.anchor is None or self.anchor == lemma.casefold())

    def __str__(self) -> str:
        return self.tag if self.anchor is None else f"{self.tag}={self.anchor}"


def _pattern_leaf(tok: str) -> PatternLeaf:
    tag, eq, anchor = tok.partition("=")
    if not tag or (eq and not anchor):
        raise ValueError("expected TAG or TAG=lemma")
    return PatternLeaf(tag, anchor.casefold() if eq else None)


def _number_leaves(tree: Tree) -> Tree:
    counter = iter(range(10**9))
    return trees.map_leaves(tree, lambda _: next(counter))


@dataclass(frozen=True, eq=False)
class ParsingPattern:
    tree: Tree  # leaves are PatternLeaf
    content_word_count: int
    source_line: int = 0

    def __post_init__(self):
        leaves = tuple(trees.leaves(self.tree))
        if len(leaves) < 2:
            raise ValueError("a pattern needs at least two leaves")
        object.__setattr__(self, "leaves", leaves)
        skeleton = _number_leaves(self.tree)
        object.__setattr__(self, "skeleton", skeleton)
        object.__setattr__(self, "head_offset", trees.head_leaf(skeleton))

    @property
    def tags(self) -> tuple[str, ...]:
        return tuple(l.tag for l in self.leaves)

    def __len__(self) -> int:
        return len(self.leaves)

    def accepts(self, seq: Sequence[tuple[str, str]]) -> bool:
        return len(seq) == len(self.leaves) and all(
            leaf.accepts(pos, lemma) for leaf, (pos, lemma) in zip(self.leaves, seq)
        )

    def instantiate(self, labels: Sequence) -> Tree:
        """The pattern's tree with leaf i relabelled ``labels[i]``."""
        return trees.map_leaves(self.skeleton, labels.__getitem__)

    def __str__(self) -> str:
        return trees.format_tree(self.tree)


@dataclass(frozen=True)
class PatternSet:
    patterns: tuple[ParsingPattern, ...] = ()

    def __post_init__(self):
        index: dict[tuple[PatternLeaf, ...], list[ParsingPattern]] = defaultdict(list)
        by_tags: dict[tuple[str, ...], list[ParsingPattern]] = defaultdict(list)
        for p in self.patterns:
            index[p.leaves].append(p)
            by_tags[p.tags].append(p)
        object.__setattr__(self, "index", {k: tuple(v) for k, v in index.items()})
        object.__setattr__(self, "_by_tags", {k: tuple(v) for k, v in by_tags.items()})
        object.__setattr__(self, "max_len", max((len(p) for p in self.patterns), default=0))

    def __len__(self) -> int:
        return len(self.patterns)

    def __iter__(self):
        return iter(self.patterns)

    def matching(self, seq: Sequence[tuple[str, str]]) -> list[ParsingPattern]:
        """Patterns accepting ``seq`` (a list of (pos, lemma)), in file order."""
        candidates = self._by_tags.get(tuple(pos for pos, _ in seq), ())
        return [p for p in candidates if p.accepts(seq)]


def parse_pattern(text: str, content_tags=DEFAULT_CONTENT_TAGS, source_line: int = 0) -> ParsingPattern:
    tree = trees.parse_tree(text, _pattern_leaf)
    leaves = trees.leaves(tree)
    if len(leaves) < 2:
        raise TreeSyntaxError("a pattern needs at least two leaves")
    count = sum(1 for l in leaves if l.tag in content_tags)
    return ParsingPattern(tree, count, source_line)


def parse_pattern_set(
    source: TextIO | str, name: str | None = None, content_tags=DEFAULT_CONTENT_TAGS
) -> PatternSet:
    patterns: list[ParsingPattern] = []
    seen: dict[Tree, int] = {}
    for lineno, line in _lines(source):
        try:
            p = parse_pattern(line.strip(), content_tags, lineno)
        except TreeSyntaxError as exc:
            raise FormatError(str(exc), lineno, name) from None
        if p.tree in seen:
            raise FormatError(f"duplicate pattern (first on line {seen[p.tree]})", lineno, name)
        seen[p.tree] = lineno
        patterns.append(p)
    return PatternSet(tuple(patterns))


# ------------------------------------------------------------- terminology


@dataclass(frozen=True)
class TestifiedTerm:
    __test__ = False  # keep pytest from collecting this

    surface_words: tuple[str, ...]
    pos_tags: tuple[str, ...] | None = None
    lemmas: tuple[str, ...] | None = None
    parse: Tree | None = None  # leaves are word positions 0..n-1
    source: str = ""

    def __post_init__(self):
        n = len(self.surface_words)
        if n == 0:
            raise ValueError("term has no words")
        if self.pos_tags is not None and len(self.pos_tags) != n:
            raise ValueError(f"{len(self.pos_tags)} tags for {n} words")
        if self.lemmas is not None and len(self.lemmas) != n:
            raise ValueError(f"{len(self.lemmas)} lemmas for {n} words")
        if self.parse is not None and trees.leaves(self.parse) != list(range(n)):
            raise ValueError(f"parse must cover positions 0..{n - 1} in order")

    def __len__(self) -> int:
        return len(self.surface_words)

    @property
    def text(self) -> str:
        return " ".join(self.surface_words)


def normalize_key(words: Iterable[str], case_sensitive: bool = False) -> tuple[str, ...]:
    if case_sensitive:
        return tuple(words)
    return tuple(w.casefold() for w in words)


@dataclass(frozen=True)
class Terminology:
    terms: tuple[TestifiedTerm, ...] = ()
    case_sensitive: bool = False

    def __post_init__(self):
        # first occurrence of a surface key wins
        kept: list[TestifiedTerm] = []
        surface: dict[tuple[str, ...], tuple[int, ...]] = {}
        lemma: dict[tuple[str, ...], list[int]] = defaultdict(list)
        for term in self.terms:
            key = normalize_key(term.surface_words, self.case_sensitive)
            if key in surface:
                continue
            tid = len(kept)
            kept.append(term)
            surface[key] = (tid,)
            if term.lemmas is not None:
                lemma[normalize_key(term.lemmas, self.case_sensitive)].append(tid)
        object.__setattr__(self, "terms", tuple(kept))
        object.__setattr__(self, "surface_index", surface)
        object.__setattr__(self, "lemma_index", {k: tuple(v) for k, v in lemma.items()})
        object.__setattr__(self, "max_len", max((len(t) for t in kept), default=0))
        # every proper and full prefix of a key, so span search can stop early
        prefixes = set()
        for key in list(surface) + list(lemma):
            prefixes.update(key[:i] for i in range(1, len(key) + 1))
        object.__setattr__(self, "prefixes", frozenset(prefixes))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def key(self, words: Iterable[str]) -> tuple[str, ...]:
        return normalize_key(words, self.case_sensitive)

    def lookup(self, surfaces: Sequence[str], lemmas: Sequence[str]) -> int | None:
        """Term id matching by surface, else by lemma; None if neither."""
        hit = self.surface_index.get(self.key(surfaces))
        if hit is None:
            hit = self.lemma_index.get(self.key(lemmas))
        return hit[0] if hit else None


def parse_terminology(
    source: TextIO | str, source_name: str = "", case_sensitive: bool = False, name: str | None = None
) -> Terminology:
    """Read ``words<TAB>tags<TAB>lemmas<TAB>parse`` lines; ``-`` marks an absent field."""
    terms: list[TestifiedTerm] = []
    for lineno, line in _lines(source):
        fields = line.split("\t")
        if len(fields) != 4:
            raise FormatError(f"expected 4 TAB-separated fields, found {len(fields)}", lineno, name)
        words = tuple(fields[0].split())
        tags, lemmas = (None if f.strip() == "-" else tuple(f.split()) for f in fields[1:3])
        parse = None
        if fields[3].strip() != "-":
            try:
                parse = trees.parse_tree(fields[3], int)
            except TreeSyntaxError as exc:
                raise FormatError(f"bad parse: {exc}", lineno, name) from None
        try:
            terms.append(TestifiedTerm(words, tags, lemmas, parse, source_name))
        except ValueError as exc:
            raise FormatError(str(exc), lineno, name) from None
    return Terminology(tuple(terms), case_sensitive)


def merge_terminologies(terminologies: Sequence[Terminology]) -> Terminology:
    if not terminologies:
        raise ValueError("nothing to merge")
    case_sensitive = terminologies[0].case_sensitive
    return Terminology(tuple(t for term in terminologies for t in term.terms), case_sensitive)


def read_chunking_config(path) -> ChunkingConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_chunking_config(fh, str(path))


def read_pattern_set(path) -> PatternSet:
    with open(path, encoding="utf-8") as fh:
        return parse_pattern_set(fh, str(path))


def read_terminology(path, case_sensitive: bool = False) -> Terminology:
    with open(path, encoding="utf-8") as fh:
        return parse_terminology(fh, Path(path).stem, case_sensitive, str(path))
