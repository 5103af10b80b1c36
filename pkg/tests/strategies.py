"""Random sentences, chunking configs and terminologies over a small alphabet."""

import random

from hypothesis import strategies as st

from mnpterm.corpus_io import Sentence
from mnpterm.resources import ChunkingConfig, StructureElement, Terminology, TestifiedTerm, WordRule

TAGS = ["NN", "NNS", "JJ", "IN", "DT", "VB", "FW", "CD", "CC", ","]
WORDS = {
    "NN": ["gene", "course", "factor", "site"],
    "NNS": ["genes", "sites"],
    "JJ": ["many", "other", "regulatory"],
    "IN": ["of", "in", "by"],
    "DT": ["the", "a"],
    "VB": ["bind", "require"],
    "FW": ["vitro", "vivo"],
    "CD": ["two", "3"],
    "CC": ["and"],
    ",": [","],
}


def random_sentence(rng: random.Random, max_len: int = 14, sid: int = 0) -> Sentence:
    n = rng.randint(1, max_len)
    triples = []
    for _ in range(n):
        tag = rng.choice(TAGS)
        word = rng.choice(WORDS[tag])
        triples.append((word, tag, word))
    return Sentence.from_triples(triples, sid)


def random_config(rng: random.Random) -> ChunkingConfig:
    frontier = frozenset(t for t in TAGS if rng.random() < 0.5)
    allow, forbid = {}, {}
    for tag in TAGS:
        words = [w for w in WORDS[tag] if rng.random() < 0.3]
        if not words:
            continue
        rules = frozenset(WordRule(w, tag) for w in words)
        (allow if tag in frontier else forbid)[tag] = rules
    structures = []
    for _ in range(rng.randint(0, 2)):
        elems = []
        for _ in range(rng.randint(1, 3)):
            tag = rng.choice(TAGS)
            word = rng.choice(WORDS[tag]) if rng.random() < 0.7 else None
            elems.append(StructureElement(word, tag if word is None or rng.random() < 0.8 else None))
        structures.append(tuple(elems))
    return ChunkingConfig(
        frontier,
        tuple(WordRule(w) for tag in TAGS for w in WORDS[tag] if rng.random() < 0.05),
        allow,
        forbid,
        tuple(structures),
    )


def random_terminology(rng: random.Random, size: int = 4) -> Terminology:
    terms = []
    for _ in range(size):
        n = rng.randint(1, 3)
        tags = [rng.choice(TAGS) for _ in range(n)]
        words = tuple(rng.choice(WORDS[t]) for t in tags)
        terms.append(TestifiedTerm(words, tuple(tags) if rng.random() < 0.5 else None, None, None, "rnd"))
    return Terminology(tuple(terms))


seeds = st.integers(min_value=0, max_value=2**32 - 1)
