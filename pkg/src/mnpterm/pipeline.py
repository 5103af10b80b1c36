"""End-to-end run: corpus -> chunks -> parses -> candidate lists."""

from __future__ import annotations

import hashlib
from dataclasses import asdict, dataclass, field
from pathlib import Path

from mnpterm.chunker import ChunkingResult, MnpType, chunk_corpus
from mnpterm.corpus_io import Corpus, parse_vertical_corpus
from mnpterm.extractor import (
    ChunkingStats,
    ParsingStats,
    TermCandidate,
    build_term_candidates,
    compute_chunking_stats,
    compute_parsing_stats,
    emit_outputs,
)
from mnpterm.parser import ParseOptions, ParsingOutcome, run_parsing
from mnpterm.resources import (
    ChunkingConfig,
    PatternSet,
    Terminology,
    merge_terminologies,
    parse_chunking_config,
    parse_pattern_set,
    parse_terminology,
)

DATA_DIR = Path(__file__).parent / "data"


@dataclass
class RunOptions:
    corpus_path: Path
    pattern_path: Path
    chunking_config_path: Path
    out_dir: Path
    terminology_paths: list[Path] = field(default_factory=list)
    non_deterministic: bool = False
    noncontiguous_islands: bool = False
    island_gap_limit: int = 1
    fixpoint_islands: bool = False
    case_sensitive_terms: bool = False
    jobs: int = 1

    def parse_options(self) -> ParseOptions:
        return ParseOptions(
            non_deterministic=self.non_deterministic,
            noncontiguous_islands=self.noncontiguous_islands,
            gap_limit=self.island_gap_limit,
            fixpoint_islands=self.fixpoint_islands,
            case_sensitive_terms=self.case_sensitive_terms,
            jobs=self.jobs,
        )


@dataclass
class PipelineResult:
    corpus: Corpus
    chunks: ChunkingResult
    types: dict[str, MnpType]
    outcome: ParsingOutcome
    candidates: list[TermCandidate]
    chunking_stats: ChunkingStats
    parsing_stats: ParsingStats
    terminology: Terminology


def extract(
    corpus: Corpus,
    config: ChunkingConfig,
    patterns: PatternSet,
    terminology: Terminology | None = None,
    opts: ParseOptions = ParseOptions(),
) -> PipelineResult:
    terminology = terminology if terminology is not None else Terminology(case_sensitive=opts.case_sensitive_terms)
    chunks = chunk_corpus(corpus, config, terminology, jobs=opts.jobs)
    types = chunks.types()
    outcome = run_parsing(types, terminology, patterns, opts)
    return PipelineResult(
        corpus=corpus,
        chunks=chunks,
        types=types,
        outcome=outcome,
        candidates=build_term_candidates(outcome.parsed, types),
        chunking_stats=compute_chunking_stats(types),
        parsing_stats=compute_parsing_stats(outcome.parsed, outcome.unparsed, types, terminology),
        terminology=terminology,
    )


def _read(path: Path) -> tuple[str, str]:
    data = Path(path).read_bytes()
    return data.decode("utf-8"), hashlib.sha256(data).hexdigest()


def run_pipeline(options: RunOptions) -> tuple[PipelineResult, dict]:
    """Load every input, run, write the four output files.

    Returns the result and the paths written. Raises FormatError for bad
    input content and OSError for unreadable inputs or unwritable outputs.
    """
    corpus_text, corpus_hash = _read(options.corpus_path)
    pattern_text, pattern_hash = _read(options.pattern_path)
    config_text, config_hash = _read(options.chunking_config_path)
    corpus = parse_vertical_corpus(corpus_text, str(options.corpus_path))
    patterns = parse_pattern_set(pattern_text, str(options.pattern_path))
    config = parse_chunking_config(config_text, str(options.chunking_config_path))

    term_echo = []
    loaded = []
    for p in options.terminology_paths:
        text, digest = _read(p)
        term = parse_terminology(text, Path(p).stem, options.case_sensitive_terms, str(p))
        loaded.append(term)
        term_echo.append({"file": Path(p).name, "sha256": digest, "terms": len(term)})
    terminology = merge_terminologies(loaded) if loaded else Terminology(case_sensitive=options.case_sensitive_terms)

    opts = options.parse_options()
    result = extract(corpus, config, patterns, terminology, opts)

    echo = asdict(opts)
    del echo["jobs"]  # output must not depend on parallelism
    extra = {
        "corpus": {
            "file": Path(options.corpus_path).name,
            "sha256": corpus_hash,
            "sentences": corpus.sentence_count,
            "words": corpus.word_count,
        },
        "config": {
            "chunking": {"file": Path(options.chunking_config_path).name, "sha256": config_hash},
            "patterns": {"file": Path(options.pattern_path).name, "sha256": pattern_hash, "patterns": len(patterns)},
            "terminologies": term_echo,
            "options": echo,
        },
        "resource_effects": {
            "protected_spans": result.chunks.protected_spans,
            "tag_corrections": len(result.chunks.corrections),
            "merged_terms": len(terminology),
        },
    }
    written = emit_outputs(
        result.candidates,
        result.outcome.unparsed,
        result.types,
        result.chunking_stats,
        result.parsing_stats,
        options.out_dir,
        extra,
    )
    return result, written


def summary(result: PipelineResult) -> str:
    cs, ps = result.chunking_stats, result.parsing_stats
    lines = [
        f"corpus: {result.corpus.sentence_count} sentences, {result.corpus.word_count} words",
        f"MNPs: {cs.mnp_types} types, {cs.mnp_occurrences} occurrences",
        f"monolexical: {cs.monolexical_types} types, {cs.monolexical_occurrences} occurrences",
        f"words/complex MNP: {cs.words_per_complex_mnp:.2f} (per type {cs.words_per_complex_mnp_types:.2f})",
        f"POS sequence types: {cs.pos_sequence_types}",
        "parsing method       types    occ",
    ]
    for name, n in ps.types.items():
        lines.append(f"  {name:<17} {n:>7} {ps.occurrences[name]:>6}")
    lines.append(f"term candidates: {len(result.candidates)}")
    if ps.terms_total:
        lines.append(f"testified terms used: {ps.terms_used} of {ps.terms_total}")
    return "\n".join(lines) + "\n"
