"""Chunking sentences into Maximal Noun Phrases (MNPs).

Per sentence: locate testified-term occurrences, overwrite their tags and
lemmas with the term's own, then cut the sentence at frontier words.
Words inside a testified occurrence are never frontiers, and forbidden
structures never cut through one.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from mnpterm.corpus_io import Corpus, Sentence, TaggedWord
from mnpterm.resources import ChunkingConfig, Terminology


@dataclass(frozen=True)
class ProtectedSpan:
    sentence_id: int
    start: int
    end: int  # exclusive
    term_id: int

    def __post_init__(self):
        if self.start >= self.end:
            raise ValueError(f"empty span [{self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class Correction:
    sentence_id: int
    index: int
    term_id: int
    old: tuple[str, str]  # (pos, lemma)
    new: tuple[str, str]


@dataclass(frozen=True)
class MnpOccurrence:
    sentence_id: int
    start: int
    end: int
    words: tuple[TaggedWord, ...]
    protected_subspans: tuple[ProtectedSpan, ...] = ()

    def __len__(self) -> int:
        return len(self.words)

    @property
    def tags(self) -> tuple[str, ...]:
        return tuple(w.pos for w in self.words)

    @property
    def inflected_key(self) -> str:
        return " ".join(w.surface for w in self.words).casefold()

    @property
    def lemma_key(self) -> str:
        return " ".join(w.lemma for w in self.words).casefold()


@dataclass
class MnpType:
    inflected_key: str
    lemma_key: str
    pos_sequence: tuple[str, ...]
    occurrences: list[MnpOccurrence] = field(default_factory=list)
    divergent_pos: bool = False

    @property
    def frequency(self) -> int:
        return len(self.occurrences)

    @property
    def words(self) -> tuple[TaggedWord, ...]:
        """Words of the first occurrence; they stand for the whole type."""
        return self.occurrences[0].words

    def __len__(self) -> int:
        return len(self.pos_sequence)

    @property
    def is_monolexical(self) -> bool:
        return len(self.pos_sequence) == 1


def locate_testified_occurrences(sentence: Sentence, terminology: Terminology) -> list[ProtectedSpan]:
    """Disjoint occurrences of testified terms, longest first then leftmost."""
    if not terminology.terms:
        return []
    surfaces = terminology.key(w.surface for w in sentence)
    lemmas = terminology.key(w.lemma for w in sentence)
    prefixes = terminology.prefixes
    n = len(sentence)
    found = []
    for i in range(n):
        for j in range(i + 1, min(n, i + terminology.max_len) + 1):
            s_key, l_key = surfaces[i:j], lemmas[i:j]
            if s_key not in prefixes and l_key not in prefixes:
                break
            hit = terminology.surface_index.get(s_key) or terminology.lemma_index.get(l_key)
            if hit:
                found.append((i, j, hit[0]))
    found.sort(key=lambda f: (f[0] - f[1], f[0]))
    taken = [False] * n
    spans = []
    for i, j, tid in found:
        if not any(taken[i:j]):
            taken[i:j] = [True] * (j - i)
            spans.append(ProtectedSpan(sentence.id, i, j, tid))
    spans.sort(key=lambda s: s.start)
    return spans


def apply_tag_corrections(
    sentence: Sentence,
    spans: list[ProtectedSpan],
    terminology: Terminology,
    log: list[Correction] | None = None,
) -> Sentence:
    """Copy the testified term's tags and lemmas onto the words it covers.

    Changes are appended to ``log`` when given.
    """
    words = list(sentence.words)
    changed = False
    for span in spans:
        term = terminology.terms[span.term_id]
        if term.pos_tags is None and term.lemmas is None:
            continue
        for k, i in enumerate(range(span.start, span.end)):
            w = words[i]
            pos = term.pos_tags[k] if term.pos_tags is not None else w.pos
            lemma = term.lemmas[k] if term.lemmas is not None else w.lemma
            if (pos, lemma) != (w.pos, w.lemma):
                words[i] = w.retag(pos, lemma)
                changed = True
                if log is not None:
                    log.append(Correction(sentence.id, i, span.term_id, (w.pos, w.lemma), (pos, lemma)))
    return Sentence(tuple(words), sentence.id) if changed else sentence


def _forbidden_match(words, i, end, protected, config) -> int:
    for struct in config.forbidden_structures:
        j = i + len(struct)
        if j <= end and not any(protected[i:j]) and all(
            e.matches(words[i + k]) for k, e in enumerate(struct)
        ):
            return len(struct)
    return 0


def chunk_sentence(
    sentence: Sentence, config: ChunkingConfig, spans: list[ProtectedSpan] = ()
) -> list[MnpOccurrence]:
    words = sentence.words
    n = len(words)
    protected = [False] * n
    for s in spans:
        protected[s.start : s.end] = [True] * len(s)
    inside = [protected[i] or not config.is_frontier(w) for i, w in enumerate(words)]

    runs = []
    i = 0
    while i < n:
        if not inside[i]:
            i += 1
            continue
        j = i
        while j < n and inside[j]:
            j += 1
        runs.append((i, j))
        i = j

    pieces = []
    for a, b in runs:
        start = i = a
        while i < b:
            m = _forbidden_match(words, i, b, protected, config) if config.forbidden_structures else 0
            if m:
                if start < i:
                    pieces.append((start, i))
                i += m
                start = i
            else:
                i += 1
        if start < b:
            pieces.append((start, b))

    out = []
    for a, b in pieces:
        # an exception word ("of") may join nouns but never ends a phrase
        while a < b and not protected[a] and config.is_exception(words[a]):
            a += 1
        while b > a and not protected[b - 1] and config.is_exception(words[b - 1]):
            b -= 1
        if a == b:
            continue
        inner = tuple(
            ProtectedSpan(s.sentence_id, s.start - a, s.end - a, s.term_id)
            for s in spans
            if a <= s.start and s.end <= b
        )
        out.append(MnpOccurrence(sentence.id, a, b, words[a:b], inner))
    return out


def collect_mnp_types(occurrences) -> dict[str, MnpType]:
    """Group occurrences by case-folded surface form, in first-seen order."""
    types: dict[str, MnpType] = {}
    for occ in occurrences:
        key = occ.inflected_key
        t = types.get(key)
        if t is None:
            t = types[key] = MnpType(key, occ.lemma_key, occ.tags)
        elif occ.tags != t.pos_sequence:
            t.divergent_pos = True
        t.occurrences.append(occ)
    return types


@dataclass
class ChunkingResult:
    occurrences: list[MnpOccurrence]
    corrections: list[Correction]
    protected_spans: int

    def types(self) -> dict[str, MnpType]:
        return collect_mnp_types(self.occurrences)


def _chunk_one(sentence: Sentence, config: ChunkingConfig, terminology: Terminology):
    spans = locate_testified_occurrences(sentence, terminology)
    log: list[Correction] = []
    fixed = apply_tag_corrections(sentence, spans, terminology, log)
    return chunk_sentence(fixed, config, spans), log, len(spans)


def chunk_corpus(
    corpus: Corpus, config: ChunkingConfig, terminology: Terminology | None = None, jobs: int = 1
) -> ChunkingResult:
    terminology = terminology or Terminology()
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            results = list(pool.map(lambda s: _chunk_one(s, config, terminology), corpus.sentences))
    else:
        results = [_chunk_one(s, config, terminology) for s in corpus.sentences]
    occurrences, corrections, n_spans = [], [], 0
    for occs, log, k in results:
        occurrences.extend(occs)
        corrections.extend(log)
        n_spans += k
    return ChunkingResult(occurrences, corrections, n_spans)
