"""Command line entry point.

    mnpterm --corpus C --patterns P --chunking K [--terminology T]... --out DIR
    mnpterm compare REPORT_A REPORT_B
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from mnpterm.errors import FormatError
from mnpterm.extractor import compare_runs, format_comparison
from mnpterm.pipeline import RunOptions, run_pipeline, summary

EXIT_OK, EXIT_INPUT, EXIT_IO = 0, 1, 2


def default_jobs() -> int:
    return min(4, os.cpu_count() or 1)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mnpterm", description="Extract term candidates from a tagged corpus.")
    p.add_argument("--corpus", required=True, type=Path, help="vertical corpus: surface<TAB>pos<TAB>lemma")
    p.add_argument("--patterns", required=True, type=Path, help="parsing pattern file")
    p.add_argument("--chunking", required=True, type=Path, help="chunking directive file")
    p.add_argument("--terminology", action="append", default=[], type=Path,
                   help="testified term list; repeatable, earlier files win on duplicates")
    p.add_argument("--out", required=True, type=Path, help="output directory")
    p.add_argument("--non-deterministic", action="store_true", help="keep every parse of the winning method")
    p.add_argument("--noncontiguous-islands", action="store_true")
    p.add_argument("--gap-limit", type=int, default=1, help="max words skipped inside a non-contiguous island")
    p.add_argument("--fixpoint-islands", action="store_true", help="re-harvest islands until no new parse")
    p.add_argument("--case-sensitive-terms", action="store_true")
    p.add_argument("--jobs", type=int, default=0, help="worker threads (0 = auto)")
    return p


def _input_problem(opts: RunOptions) -> str | None:
    for flag, path in [("--corpus", opts.corpus_path), ("--patterns", opts.pattern_path),
                       ("--chunking", opts.chunking_config_path)] + [
                          ("--terminology", t) for t in opts.terminology_paths]:
        if not path.is_file():
            return f"{flag}: {path}: no such file"
        if not os.access(path, os.R_OK):
            return f"{flag}: {path}: not readable"
    if opts.island_gap_limit < 0:
        return "--gap-limit must be >= 0"
    return None


def run_main(argv) -> int:
    args = build_parser().parse_args(argv)
    opts = RunOptions(
        corpus_path=args.corpus,
        pattern_path=args.patterns,
        chunking_config_path=args.chunking,
        out_dir=args.out,
        terminology_paths=list(args.terminology),
        non_deterministic=args.non_deterministic,
        noncontiguous_islands=args.noncontiguous_islands,
        island_gap_limit=args.gap_limit,
        fixpoint_islands=args.fixpoint_islands,
        case_sensitive_terms=args.case_sensitive_terms,
        jobs=args.jobs or default_jobs(),
    )
    problem = _input_problem(opts)
    if problem:
        print(f"error: {problem}", file=sys.stderr)
        return EXIT_INPUT
    try:
        result, _ = run_pipeline(opts)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnicodeDecodeError as exc:
        print(f"error: input is not UTF-8: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc.filename or opts.out_dir}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    sys.stdout.write(summary(result))
    return EXIT_OK


def compare_main(argv) -> int:
    p = argparse.ArgumentParser(prog="mnpterm compare", description="Per-metric deltas between two runs.")
    p.add_argument("report_a", type=Path)
    p.add_argument("report_b", type=Path)
    args = p.parse_args(argv)
    reports = []
    for path in (args.report_a, args.report_b):
        try:
            reports.append(json.loads(path.read_text(encoding="utf-8")))
        except OSError as exc:
            print(f"error: {path}: {exc.strerror or exc}", file=sys.stderr)
            return EXIT_IO
        except json.JSONDecodeError as exc:
            print(f"error: {path}: not a report ({exc})", file=sys.stderr)
            return EXIT_INPUT
    try:
        rows = compare_runs(*reports)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(format_comparison(rows, (args.report_a.parent.name or "A", args.report_b.parent.name or "B")))
    return EXIT_OK


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv[:1] == ["compare"]:
        return compare_main(argv[1:])
    if argv[:1] == ["run"]:
        argv = argv[1:]
    return run_main(argv)


if __name__ == "__main__":
    sys.exit(main())
