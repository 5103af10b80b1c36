"""Run the bundled mini-corpus with and without the fixture terminology and
print the per-metric comparison.

    python3 scripts/run_experiment.py [--out runs/]
"""

import argparse
import json
from pathlib import Path

from mnpterm.extractor import compare_runs, format_comparison
from mnpterm.pipeline import DATA_DIR, RunOptions, run_pipeline, summary


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", type=Path, default=Path("runs"))
    p.add_argument("--jobs", type=int, default=1)
    args = p.parse_args()

    reports = {}
    for label, terms in (("no_resource", []), ("with_terms", [DATA_DIR / "terms_fixture.tsv"])):
        opts = RunOptions(
            corpus_path=DATA_DIR / "minicorpus.txt",
            pattern_path=DATA_DIR / "patterns.txt",
            chunking_config_path=DATA_DIR / "chunking.txt",
            out_dir=args.out / label,
            terminology_paths=terms,
            jobs=args.jobs,
        )
        result, written = run_pipeline(opts)
        print(f"== {label} -> {opts.out_dir}")
        print(summary(result))
        reports[label] = json.loads(written["report.json"].read_text(encoding="utf-8"))

    print(format_comparison(compare_runs(reports["no_resource"], reports["with_terms"]), ("no_resource", "with_terms")))


if __name__ == "__main__":
    main()
