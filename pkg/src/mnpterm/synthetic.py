"""Synthetic tagged corpora and term lists for scale runs.

The text is nonsense but shaped like biomedical prose: noun compounds of
varying length separated by determiners, verbs, prepositions and
punctuation, with a controllable share of "of" phrases and FW tokens.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from mnpterm import trees
from mnpterm.corpus_io import Corpus, Sentence, TaggedWord
from mnpterm.resources import TestifiedTerm, Terminology

_NOUN_TAGS = ["NN"] * 6 + ["NNS"] * 2 + ["NNP"] * 2
_FILLER = [
    ("the", "DT", "the"),
    ("a", "DT", "a"),
    ("binds", "VBZ", "bind"),
    ("requires", "VBZ", "require"),
    ("was", "VBD", "be"),
    ("observed", "VBN", "observe"),
    ("in", "IN", "in"),
    ("by", "IN", "by"),
    ("and", "CC", "and"),
    (",", ",", ","),
]


@dataclass
class SyntheticConfig:
    words: int = 440_000
    vocabulary: int = 3_000
    adjectives: int = 400
    max_phrase: int = 5
    of_rate: float = 0.1
    fw_rate: float = 0.02
    seed: int = 0


def _lexicon(rng: random.Random, cfg: SyntheticConfig):
    nouns = [(f"n{i}", rng.choice(_NOUN_TAGS)) for i in range(cfg.vocabulary)]
    adjs = [f"a{i}" for i in range(cfg.adjectives)]
    return nouns, adjs


def _noun(rng, nouns) -> TaggedWord:
    # Zipf-ish: low ids far more frequent
    i = min(int(rng.paretovariate(1.1)) - 1, len(nouns) - 1)
    lemma, tag = nouns[i]
    return TaggedWord(lemma + "s" if tag == "NNS" else lemma, tag, lemma)


def _phrase(rng, cfg, nouns, adjs) -> list[TaggedWord]:
    n = rng.randint(1, cfg.max_phrase)
    out = []
    if rng.random() < 0.3:
        adj = rng.choice(adjs)
        out.append(TaggedWord(adj, "JJ", adj))
    out += [_noun(rng, nouns) for _ in range(n)]
    if rng.random() < cfg.of_rate:
        out.append(TaggedWord("of", "IN", "of"))
        out += [_noun(rng, nouns) for _ in range(rng.randint(1, 2))]
    if rng.random() < cfg.fw_rate:
        out.append(TaggedWord("vivo", "FW", "vivo"))
    return out


def synthetic_corpus(cfg: SyntheticConfig = SyntheticConfig()) -> Corpus:
    rng = random.Random(cfg.seed)
    nouns, adjs = _lexicon(rng, cfg)
    sentences = []
    total = 0
    while total < cfg.words:
        toks: list[TaggedWord] = []
        for _ in range(rng.randint(2, 5)):
            toks.append(TaggedWord(*rng.choice(_FILLER)))
            toks += _phrase(rng, cfg, nouns, adjs)
        toks.append(TaggedWord(".", ".", "."))
        words = tuple(TaggedWord(w.surface, w.pos, w.lemma, i) for i, w in enumerate(toks))
        sentences.append(Sentence(words, len(sentences)))
        total += len(words)
    return Corpus(tuple(sentences))


def synthetic_terminology(corpus: Corpus, size: int = 5_000, seed: int = 0, source: str = "synthetic") -> Terminology:
    """Terms sampled from noun runs of the corpus (so they do occur), padded
    with unseen ones up to ``size``."""
    rng = random.Random(seed)
    seen: dict[tuple[str, ...], TestifiedTerm] = {}
    sentences = list(corpus.sentences)
    rng.shuffle(sentences)
    for sent in sentences:
        if len(seen) >= size // 2:
            break
        words = sent.words
        i = rng.randrange(len(words))
        j = i
        while j < len(words) and words[j].pos.startswith("NN") and j - i < 3:
            j += 1
        if j - i >= 2:
            span = words[i:j]
            key = tuple(w.surface for w in span)
            if key not in seen:
                seen[key] = TestifiedTerm(key, tuple(w.pos for w in span), tuple(w.lemma for w in span), None, source)
    k = 0
    while len(seen) < size:
        key = (f"u{k}", f"v{k}")
        seen[key] = TestifiedTerm(key, ("NN", "NN"), key, None, source)
        k += 1
    return Terminology(tuple(seen.values()))


def format_terminology(terminology: Terminology) -> str:
    lines = []
    for t in terminology.terms:
        lines.append("\t".join([
            " ".join(t.surface_words),
            " ".join(t.pos_tags) if t.pos_tags else "-",
            " ".join(t.lemmas) if t.lemmas else "-",
            trees.format_tree(t.parse) if t.parse is not None else "-",
        ]))
    return "\n".join(lines) + "\n"
