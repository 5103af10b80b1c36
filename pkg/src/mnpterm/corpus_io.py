"""Reading and writing vertical tagged corpora.

One token per line, ``surface<TAB>pos<TAB>lemma``; a blank line closes a
sentence; lines starting with ``#`` are comments unless they are
well-formed token lines (the Penn ``#`` tag exists).
"""

from __future__ import annotations

import io
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, TextIO

from mnpterm.errors import FormatError


@dataclass(frozen=True)
class TaggedWord:
    surface: str
    pos: str
    lemma: str
    index: int = 0

    def __post_init__(self):
        for name in ("surface", "pos", "lemma"):
            value = getattr(self, name)
            if not value:
                raise ValueError(f"empty {name}")
            if any(ch.isspace() for ch in value):
                raise ValueError(f"whitespace in {name}: {value!r}")

    def retag(self, pos: str | None = None, lemma: str | None = None) -> "TaggedWord":
        return TaggedWord(self.surface, pos or self.pos, lemma or self.lemma, self.index)


@dataclass(frozen=True)
class Sentence:
    words: tuple[TaggedWord, ...]
    id: int = 0

    def __post_init__(self):
        if not self.words:
            raise ValueError("empty sentence")
        for i, w in enumerate(self.words):
            if w.index != i:
                raise ValueError(f"word {w.surface!r} has index {w.index}, expected {i}")

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __getitem__(self, i):
        return self.words[i]

    @classmethod
    def from_triples(cls, triples: Iterable[tuple[str, str, str]], id: int = 0) -> "Sentence":
        return cls(tuple(TaggedWord(s, p, l, i) for i, (s, p, l) in enumerate(triples)), id)

    @classmethod
    def from_string(cls, text: str, id: int = 0) -> "Sentence":
        """Build from ``surface/TAG`` tokens (lemma = lowercased surface)
        or ``surface/TAG/lemma`` tokens. Handy in tests."""
        triples = []
        for tok in text.split():
            parts = tok.rsplit("/", 2) if tok.count("/") >= 2 else tok.rsplit("/", 1)
            if len(parts) == 2:
                triples.append((parts[0], parts[1], parts[0].lower()))
            else:
                triples.append((parts[0], parts[1], parts[2]))
        return cls.from_triples(triples, id)


@dataclass(frozen=True)
class Corpus:
    sentences: tuple[Sentence, ...]

    @property
    def sentence_count(self) -> int:
        return len(self.sentences)

    @property
    def word_count(self) -> int:
        return sum(len(s) for s in self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    def __len__(self) -> int:
        return len(self.sentences)


@dataclass(frozen=True)
class TagSet:
    name: str
    tags: frozenset[str]

    def __post_init__(self):
        if not self.tags:
            raise ValueError("tag set is empty")

    def __contains__(self, tag: str) -> bool:
        return tag in self.tags


# Penn TreeBank tags, plus the bracket and punctuation variants taggers
# actually emit.
PENN_TREEBANK = TagSet(
    "penn",
    frozenset(
        """CC CD DT EX FW IN JJ JJR JJS LS MD NN NNS NNP NNPS PDT POS PRP PRP$
        RB RBR RBS RP SYM TO UH VB VBD VBG VBN VBP VBZ WDT WP WP$ WRB
        # $ `` '' -LRB- -RRB- ( ) , . :""".split()
    ),
)


@dataclass
class ValidationReport:
    unknown: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.unknown


def _open_text(source: TextIO | str) -> TextIO:
    return io.StringIO(source) if isinstance(source, str) else source


def parse_vertical_corpus(source: TextIO | str, name: str | None = None) -> Corpus:
    """Read a vertical corpus from a text stream (or a string holding its text)."""
    stream = _open_text(source)
    sentences: list[Sentence] = []
    current: list[TaggedWord] = []

    def close():
        if current:
            sentences.append(Sentence(tuple(current), len(sentences)))
            current.clear()

    lineno = 0
    for lineno, raw in enumerate(stream, 1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            close()
            continue
        fields = line.split("\t")
        # a '#' token line ("#<TAB>#<TAB>#") is data, anything else starting with '#' a comment
        if line.startswith("#") and (len(fields) != 3 or not all(fields)):
            continue
        if len(fields) != 3:
            raise FormatError(f"expected 3 TAB-separated fields, found {len(fields)}", lineno, name)
        try:
            current.append(TaggedWord(*fields, index=len(current)))
        except ValueError as exc:
            raise FormatError(str(exc), lineno, name) from None
    close()
    if not sentences:
        raise FormatError("empty corpus", None, name)
    return Corpus(tuple(sentences))


def read_corpus(path) -> Corpus:
    with open(path, encoding="utf-8") as fh:
        return parse_vertical_corpus(fh, str(path))


def format_vertical_corpus(corpus: Corpus) -> str:
    out = []
    for sent in corpus:
        for w in sent:
            out.append(f"{w.surface}\t{w.pos}\t{w.lemma}\n")
        out.append("\n")
    return "".join(out)


def validate_tagset(corpus: Corpus, tagset: TagSet = PENN_TREEBANK) -> ValidationReport:
    counts = Counter(w.pos for s in corpus for w in s if w.pos not in tagset)
    return ValidationReport(dict(sorted(counts.items())))
