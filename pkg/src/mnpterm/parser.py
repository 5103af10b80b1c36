"""Head-modifier parsing of multi-word MNP types.

Three methods, tried in decreasing order of reliability; the first that
yields a parse ends the search for that type:

* TT_COVERED: the phrase is a testified term, or an exact concatenation
  of testified terms whose heads a pattern can combine.
* PATTERN_COVERED: the tag sequence matches a pattern, either directly or
  once an island of reliability has been collapsed onto its head word.
* PROGRESSIVE: the sequence is eaten from its left and right ends by
  patterns and islands until a single head remains.

Parsing runs in two passes. The first uses only testified terms as
islands. Every tree it produces, and each subtree of it, then becomes an
endogenous island for the second pass.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from mnpterm import trees
from mnpterm.chunker import MnpType
from mnpterm.resources import PatternSet, TestifiedTerm, Terminology, normalize_key
from mnpterm.trees import Leaf, Node, Tree


class Method(enum.IntEnum):
    # value doubles as the reliability score
    TT_COVERED = 3
    PATTERN_COVERED = 2
    PROGRESSIVE = 1

    @property
    def reliability(self) -> int:
        return int(self)


@dataclass(frozen=True)
class ParseResult:
    tree: Tree  # leaves are word positions in the MNP
    method: Method
    islands_used: tuple[int, ...] = ()
    terms_used: tuple[int, ...] = ()

    @property
    def reliability(self) -> int:
        return self.method.reliability

    @property
    def head(self) -> int:
        return trees.head_leaf(self.tree)


@dataclass(frozen=True)
class ParseOptions:
    non_deterministic: bool = False
    noncontiguous_islands: bool = False
    gap_limit: int = 1
    fixpoint_islands: bool = False
    case_sensitive_terms: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.gap_limit < 0:
            raise ValueError("gap_limit must be >= 0")


# ------------------------------------------------------------------ islands


@dataclass(frozen=True)
class Island:
    id: int
    surface_key: tuple[str, ...]
    lemma_key: tuple[str, ...] | None
    tree: Tree  # leaves are offsets 0..k-1
    origin: str  # "testified" or "endogenous"
    term_id: int | None = None

    @property
    def head_offset(self) -> int:
        return trees.head_leaf(self.tree)

    def __len__(self) -> int:
        return len(self.surface_key)


class IslandIndex:
    """Known sub-phrases with their internal parses, looked up by surface
    form first and lemma form second."""

    def __init__(self, case_sensitive: bool = False):
        self.case_sensitive = case_sensitive
        self.islands: list[Island] = []
        self.by_surface: dict[tuple[str, ...], int] = {}
        self.by_lemma: dict[tuple[str, ...], int] = {}
        self.prefixes: set[tuple[str, ...]] = set()
        self.max_len = 0

    def __len__(self) -> int:
        return len(self.islands)

    def __getitem__(self, island_id: int) -> Island:
        return self.islands[island_id]

    def key(self, words: Iterable[str]) -> tuple[str, ...]:
        return normalize_key(words, self.case_sensitive)

    def add(self, surfaces, lemmas, tree: Tree, origin: str, term_id: int | None = None) -> int | None:
        """Register an island; returns its id, or None if its surface form is already known."""
        s_key = self.key(surfaces)
        if len(s_key) < 2 or s_key in self.by_surface:
            return None
        if trees.leaves(tree) != list(range(len(s_key))):
            raise ValueError("island tree must cover offsets 0..k-1 in order")
        l_key = self.key(lemmas) if lemmas is not None else None
        island = Island(len(self.islands), s_key, l_key, tree, origin, term_id)
        self.islands.append(island)
        self.by_surface[s_key] = island.id
        self.prefixes.update(s_key[:i] for i in range(1, len(s_key) + 1))
        if l_key is not None:
            self.by_lemma.setdefault(l_key, island.id)
            self.prefixes.update(l_key[:i] for i in range(1, len(l_key) + 1))
        self.max_len = max(self.max_len, len(s_key))
        return island.id

    def lookup(self, s_key: tuple[str, ...], l_key: tuple[str, ...]) -> int | None:
        hit = self.by_surface.get(s_key)
        return hit if hit is not None else self.by_lemma.get(l_key)

    def copy(self) -> "IslandIndex":
        other = IslandIndex(self.case_sensitive)
        other.islands = list(self.islands)
        other.by_surface = dict(self.by_surface)
        other.by_lemma = dict(self.by_lemma)
        other.prefixes = set(self.prefixes)
        other.max_len = self.max_len
        return other

    @classmethod
    def from_terminology(cls, terminology: Terminology, patterns: PatternSet) -> "IslandIndex":
        """Testified terms of two or more words whose parse is given or can
        be computed from their own tags."""
        index = cls(terminology.case_sensitive)
        for tid, term in enumerate(terminology.terms):
            if len(term) < 2:
                continue
            found = _term_trees(term, None, range(len(term)), patterns)
            if found:
                index.add(term.surface_words, term.lemmas, found[0], "testified", tid)
        return index


@dataclass(frozen=True)
class IslandMatch:
    positions: tuple[int, ...]  # indices into the sequence being parsed
    island_id: int


@dataclass(frozen=True)
class Item:
    """One element of a (possibly simplified) sequence under parse.

    ``position`` is the MNP word position of the head word; ``tree`` is the
    full subtree the item stands for.
    """

    position: int
    surface: str
    pos: str
    lemma: str
    tree: Tree

    @property
    def reduced(self) -> bool:
        return isinstance(self.tree, Node)


def items_for(words) -> list[Item]:
    return [Item(i, w.surface, w.pos, w.lemma, Leaf(i)) for i, w in enumerate(words)]


def find_islands(
    seq: Sequence, index: IslandIndex, allow_noncontiguous: bool = False, gap_limit: int = 1
) -> list[IslandMatch]:
    """Island occurrences in ``seq`` (anything with .surface and .lemma).

    Matches are strictly shorter than ``seq``; one per position set, the
    longest first, then leftmost. With ``allow_noncontiguous``, up to
    ``gap_limit`` words may be skipped between consecutive matched words.
    """
    n = len(seq)
    maxlen = min(index.max_len, n - 1)
    if maxlen < 2:
        return []
    surfaces = index.key(x.surface for x in seq)
    lemmas = index.key(x.lemma for x in seq)
    prefixes = index.prefixes
    step = gap_limit + 1 if allow_noncontiguous else 1
    found: dict[tuple[int, ...], int] = {}

    def extend(positions: tuple[int, ...], s_key, l_key):
        if len(positions) >= 2:
            hit = index.lookup(s_key, l_key)
            if hit is not None:
                found.setdefault(positions, hit)
        if len(positions) == maxlen:
            return
        last = positions[-1]
        for p in range(last + 1, min(n, last + 1 + step)):
            s2, l2 = s_key + (surfaces[p],), l_key + (lemmas[p],)
            if s2 in prefixes or l2 in prefixes:
                extend(positions + (p,), s2, l2)

    for i in range(n):
        s1, l1 = (surfaces[i],), (lemmas[i],)
        if s1 in prefixes or l1 in prefixes:
            extend((i,), s1, l1)
    ordered = sorted(found, key=lambda ps: (-len(ps), ps))
    return [IslandMatch(ps, found[ps]) for ps in ordered]


def reduce_by_island(
    items: Sequence[Item], match: IslandMatch, index: IslandIndex
) -> tuple[list[Item], dict[int, Tree]]:
    """Collapse the matched items onto the island's head item.

    Returns the simplified sequence and ``{head position: island subtree}``.
    Gap words of a non-contiguous match stay in place.
    """
    island = index[match.island_id]
    matched = [items[k] for k in match.positions]
    subtree = trees.graft(
        trees.map_leaves(island.tree, lambda o: matched[o].position),
        {m.position: m.tree for m in matched if m.reduced},
    )
    head = matched[island.head_offset]
    merged = Item(head.position, head.surface, head.pos, head.lemma, subtree)
    drop = set(match.positions)
    head_k = match.positions[island.head_offset]
    out = [merged if k == head_k else it for k, it in enumerate(items) if k == head_k or k not in drop]
    return out, {head.position: subtree}


def expand_parse(tree: Tree, substitutions: Mapping[int, Tree]) -> Tree:
    """Put each substituted subtree back in place of its head leaf."""
    if substitutions:
        missing = set(substitutions) - set(trees.leaves(tree))
        if missing:
            raise ValueError(f"internal error: substituted positions {sorted(missing)} are not leaves")
    return trees.graft(tree, substitutions)


def match_pattern(seq: Sequence[tuple[str, str]], patterns: PatternSet) -> list[Tree]:
    """Trees (leaves = offsets into ``seq``) for every pattern accepting the (pos, lemma) sequence."""
    if len(seq) < 2:
        return []
    return [p.instantiate(range(len(seq))) for p in patterns.matching(seq)]


def _assemble(pattern, items: Sequence[Item]) -> Tree:
    simplified = pattern.instantiate([it.position for it in items])
    return expand_parse(simplified, {it.position: it.tree for it in items if it.reduced})


def _sig(items: Sequence[Item]) -> list[tuple[str, str]]:
    return [(it.pos, it.lemma) for it in items]


# ------------------------------------------------------------------ methods


def _term_trees(term: TestifiedTerm, words, positions: range, patterns: PatternSet) -> list[Tree]:
    """Parses of a testified term laid over ``positions``: its own parse if
    given, else pattern parses from its tags (falling back to the words' tags)."""
    if len(positions) == 1:
        return [Leaf(positions[0])]
    if term.parse is not None:
        return [trees.map_leaves(term.parse, positions.__getitem__)]
    if term.pos_tags is not None:
        tags = term.pos_tags
    elif words is not None:
        tags = [words[p].pos for p in positions]
    else:
        return []
    if term.lemmas is not None:
        lemmas = term.lemmas
    elif words is not None:
        lemmas = [words[p].lemma for p in positions]
    else:
        lemmas = [s.casefold() for s in term.surface_words]
    return [p.instantiate(positions) for p in patterns.matching(list(zip(tags, lemmas)))]


MAX_DECOMPOSITIONS = 256


def _decompositions(words, terminology: Terminology) -> list[list[tuple[int, int, int]]]:
    n = len(words)
    surfaces = [w.surface for w in words]
    lemmas = [w.lemma for w in words]
    segments: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, min(n, i + terminology.max_len) + 1):
            if j - i == n:
                break
            tid = terminology.lookup(surfaces[i:j], lemmas[i:j])
            if tid is not None:
                segments[i].append((j, tid))
    out: list[list[tuple[int, int, int]]] = []

    def walk(i, acc):
        if len(out) >= MAX_DECOMPOSITIONS:
            return
        if i == n:
            out.append(list(acc))
            return
        for j, tid in segments[i]:
            acc.append((i, j, tid))
            walk(j, acc)
            acc.pop()

    walk(0, [])
    out.sort(key=lambda d: (len(d), [s[0] - s[1] for s in d]))
    return out


def parse_tt_covered(
    mnp: MnpType, terminology: Terminology, patterns: PatternSet, opts: ParseOptions = ParseOptions()
) -> list[ParseResult]:
    words = mnp.words
    n = len(words)
    if n < 2 or not terminology.terms:
        return []
    keep = (lambda xs: xs) if opts.non_deterministic else (lambda xs: xs[:1])

    tid = terminology.lookup([w.surface for w in words], [w.lemma for w in words])
    if tid is not None:
        found = _term_trees(terminology.terms[tid], words, range(n), patterns)
        if found:
            return [ParseResult(t, Method.TT_COVERED, terms_used=(tid,)) for t in keep(found)]

    for decomp in _decompositions(words, terminology):
        items = []
        for i, j, seg_tid in decomp:
            seg_trees = _term_trees(terminology.terms[seg_tid], words, range(i, j), patterns)
            if not seg_trees:
                break
            head = trees.head_leaf(seg_trees[0])
            w = words[head]
            items.append(Item(head, w.surface, w.pos, w.lemma, seg_trees[0]))
        else:
            used = tuple(sorted({s[2] for s in decomp}))
            found = [_assemble(p, items) for p in patterns.matching(_sig(items))]
            if found:
                return [ParseResult(t, Method.TT_COVERED, terms_used=used) for t in keep(found)]
    return []


def _island_terms(index: IslandIndex, island_ids) -> tuple[int, ...]:
    return tuple(sorted({index[i].term_id for i in island_ids if index[i].term_id is not None}))


def parse_pattern_covered(
    mnp: MnpType, patterns: PatternSet, index: IslandIndex, opts: ParseOptions = ParseOptions()
) -> list[ParseResult]:
    items = items_for(mnp.words)
    if len(items) < 2:
        return []
    results = [
        ParseResult(_assemble(p, items), Method.PATTERN_COVERED) for p in patterns.matching(_sig(items))
    ]
    if results and not opts.non_deterministic:
        return results[:1]
    for match in find_islands(items, index, opts.noncontiguous_islands, opts.gap_limit):
        simplified, _ = reduce_by_island(items, match, index)
        if len(simplified) < 2:
            continue
        ids = (match.island_id,)
        for p in patterns.matching(_sig(simplified)):
            results.append(
                ParseResult(_assemble(p, simplified), Method.PATTERN_COVERED, ids, _island_terms(index, ids))
            )
        if results and not opts.non_deterministic:
            return results[:1]
    return _dedupe(results)


def parse_progressive(
    mnp: MnpType, patterns: PatternSet, index: IslandIndex, opts: ParseOptions = ParseOptions()
) -> list[ParseResult]:
    items = items_for(mnp.words)
    if len(items) < 2:
        return []
    used: list[int] = []
    while len(items) > 1:
        n = len(items)
        # (span length, left end first, island before pattern, file order)
        best_key, best = None, None
        for length in range(min(patterns.max_len, n), 1, -1):
            for end, span in ((0, range(0, length)), (1, range(n - length, n))):
                for order, p in enumerate(patterns.matching(_sig([items[k] for k in span]))):
                    key = (-length, end, 1, order)
                    if best_key is None or key < best_key:
                        best_key, best = key, ("pattern", span, p)
        for match in find_islands(items, index, opts.noncontiguous_islands, opts.gap_limit):
            if any(items[k].reduced for k in match.positions):
                continue
            if match.positions[0] == 0:
                end = 0
            elif match.positions[-1] == n - 1:
                end = 1
            else:
                continue
            key = (-len(match.positions), end, 0, match.island_id)
            if best_key is None or key < best_key:
                best_key, best = key, ("island", match)
        if best is None:
            return []
        if best[0] == "pattern":
            _, span, p = best
            sub = [items[k] for k in span]
            head = sub[p.head_offset]
            merged = Item(head.position, head.surface, head.pos, head.lemma, _assemble(p, sub))
            items = items[: span.start] + [merged] + items[span.stop :]
        else:
            match = best[1]
            items, _ = reduce_by_island(items, match, index)
            used.append(match.island_id)
    ids = tuple(used)
    return [ParseResult(items[0].tree, Method.PROGRESSIVE, ids, _island_terms(index, ids))]


def _dedupe(results: list[ParseResult]) -> list[ParseResult]:
    seen = set()
    out = []
    for r in results:
        if r.tree not in seen:
            seen.add(r.tree)
            out.append(r)
    return out


# ------------------------------------------------------------------ driver


@dataclass
class ParsingOutcome:
    parsed: dict[str, list[ParseResult]]  # inflected key -> parses
    unparsed: list[MnpType]
    index: IslandIndex = field(repr=False, default=None)


def harvest_islands(index: IslandIndex, mnp: MnpType, results: Iterable[ParseResult]) -> int:
    """Add each parsed tree and every internal subtree of it as an endogenous island."""
    words = mnp.words
    added = 0
    for r in results:
        for node in trees.internal_nodes(r.tree):
            local, positions = trees.relabel_positions(node)
            surfaces = [words[p].surface for p in positions]
            lemmas = [words[p].lemma for p in positions]
            if index.add(surfaces, lemmas, local, "endogenous") is not None:
                added += 1
    return added


def _map(fn: Callable, xs: list, jobs: int) -> list:
    if jobs > 1 and len(xs) > 1:
        with ThreadPoolExecutor(jobs) as pool:
            return list(pool.map(fn, xs))
    return [fn(x) for x in xs]


def run_parsing(
    types: Mapping[str, MnpType] | Iterable[MnpType],
    terminology: Terminology,
    patterns: PatternSet,
    opts: ParseOptions = ParseOptions(),
) -> ParsingOutcome:
    pool = types.values() if isinstance(types, Mapping) else types
    todo = sorted((t for t in pool if not t.is_monolexical), key=lambda t: t.inflected_key)
    testified = IslandIndex.from_terminology(terminology, patterns)

    def first_pass(t: MnpType) -> list[ParseResult]:
        return parse_tt_covered(t, terminology, patterns, opts) or parse_pattern_covered(
            t, patterns, testified, opts
        )

    parsed: dict[str, list[ParseResult]] = {}
    for t, res in zip(todo, _map(first_pass, todo, opts.jobs)):
        if res:
            parsed[t.inflected_key] = res

    index = testified.copy()
    harvested = [t for t in todo if t.inflected_key in parsed]
    for t in harvested:
        harvest_islands(index, t, parsed[t.inflected_key])
    remaining = [t for t in todo if t.inflected_key not in parsed]

    if opts.fixpoint_islands:
        while remaining:
            frozen = index.copy()
            fresh = [
                (t, r)
                for t, r in zip(remaining, _map(lambda t: parse_pattern_covered(t, patterns, frozen, opts), remaining, opts.jobs))
                if r
            ]
            if not fresh:
                break
            for t, r in fresh:
                parsed[t.inflected_key] = r
                harvest_islands(index, t, r)
            remaining = [t for t in remaining if t.inflected_key not in parsed]

    frozen = index

    def second_pass(t: MnpType) -> list[ParseResult]:
        return parse_pattern_covered(t, patterns, frozen, opts) or parse_progressive(t, patterns, frozen, opts)

    for t, res in zip(remaining, _map(second_pass, remaining, opts.jobs)):
        if res:
            parsed[t.inflected_key] = res
    unparsed = [t for t in remaining if t.inflected_key not in parsed]
    parsed = {k: parsed[k] for k in sorted(parsed)}
    return ParsingOutcome(parsed, unparsed, index)
