"""Write a synthetic tagged corpus and a matching term list for scale runs.

    python3 scripts/make_synthetic.py --words 440000 --terms 5000 --out synth/
    mnpterm --corpus synth/corpus.txt --terminology synth/terms.tsv \
        --patterns src/mnpterm/data/patterns.txt --chunking src/mnpterm/data/chunking.txt --out synth/run
"""

import argparse
from pathlib import Path

from mnpterm.corpus_io import format_vertical_corpus
from mnpterm.synthetic import SyntheticConfig, format_terminology, synthetic_corpus, synthetic_terminology


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--words", type=int, default=440_000)
    p.add_argument("--terms", type=int, default=5_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, default=Path("synth"))
    args = p.parse_args()

    corpus = synthetic_corpus(SyntheticConfig(words=args.words, seed=args.seed))
    terms = synthetic_terminology(corpus, size=args.terms, seed=args.seed)
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "corpus.txt").write_text(format_vertical_corpus(corpus), encoding="utf-8")
    (args.out / "terms.tsv").write_text(format_terminology(terms), encoding="utf-8")
    print(f"{corpus.word_count} words, {corpus.sentence_count} sentences, {len(terms)} terms -> {args.out}")


if __name__ == "__main__":
    main()
