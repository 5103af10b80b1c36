"""Term candidates, corpus statistics and the output files."""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Mapping

from mnpterm import trees
from mnpterm.chunker import MnpType
from mnpterm.parser import Method, ParseResult
from mnpterm.resources import Terminology

UNPARSED = "UNPARSED"
METHOD_NAMES = [m.name for m in Method] + [UNPARSED]


@dataclass
class TermCandidate:
    mnp: MnpType
    parses: list[ParseResult]

    def __post_init__(self):
        if not self.parses:
            raise ValueError(f"candidate {self.mnp.inflected_key!r} has no parse")

    @property
    def best(self) -> ParseResult:
        top = self.best_reliability
        return next(p for p in self.parses if p.reliability == top)

    @property
    def best_reliability(self) -> int:
        return max(p.reliability for p in self.parses)

    @property
    def frequency(self) -> int:
        return self.mnp.frequency

    @property
    def head_lemma(self) -> str:
        return self.mnp.words[self.best.head].lemma

    @property
    def lemma_key(self) -> str:
        return self.mnp.lemma_key

    @property
    def inflected_key(self) -> str:
        return self.mnp.inflected_key


def build_term_candidates(parsed: Mapping[str, list[ParseResult]], types: Mapping[str, MnpType]) -> list[TermCandidate]:
    return [
        TermCandidate(types[key], parsed[key])
        for key in sorted(parsed)
        if parsed[key] and not types[key].is_monolexical
    ]


def rank_candidates(candidates: Iterable[TermCandidate]) -> list[TermCandidate]:
    """Most reliable first, then most frequent, then by lemma form."""
    return sorted(
        candidates,
        key=lambda c: (-c.best_reliability, -c.frequency, c.lemma_key, c.inflected_key),
    )


@dataclass
class ChunkingStats:
    mnp_types: int = 0
    mnp_occurrences: int = 0
    monolexical_types: int = 0
    monolexical_occurrences: int = 0
    # mean length of multi-word MNPs, over occurrences and over types
    words_per_complex_mnp: float = 0.0
    words_per_complex_mnp_types: float = 0.0
    words_per_complex_mnp_defined: bool = False
    pos_sequence_types: int = 0


def compute_chunking_stats(types: Mapping[str, MnpType]) -> ChunkingStats:
    stats = ChunkingStats()
    complex_words = complex_occ = complex_type_words = complex_types = 0
    sequences = set()
    for t in types.values():
        stats.mnp_types += 1
        stats.mnp_occurrences += t.frequency
        if t.is_monolexical:
            stats.monolexical_types += 1
            stats.monolexical_occurrences += t.frequency
            continue
        sequences.add(t.pos_sequence)
        complex_types += 1
        complex_type_words += len(t)
        complex_occ += t.frequency
        complex_words += sum(len(o) for o in t.occurrences)
    if complex_occ:
        stats.words_per_complex_mnp = complex_words / complex_occ
        stats.words_per_complex_mnp_types = complex_type_words / complex_types
        stats.words_per_complex_mnp_defined = True
    stats.pos_sequence_types = len(sequences)
    return stats


@dataclass
class ParsingStats:
    types: dict[str, int]
    occurrences: dict[str, int]
    terms_used: int = 0
    terms_total: int = 0


def compute_parsing_stats(
    parsed: Mapping[str, list[ParseResult]],
    unparsed: Iterable[MnpType],
    types: Mapping[str, MnpType],
    terminology: Terminology | None = None,
) -> ParsingStats:
    by_type = dict.fromkeys(METHOD_NAMES, 0)
    by_occ = dict.fromkeys(METHOD_NAMES, 0)
    used: set[int] = set()
    for key, results in parsed.items():
        name = results[0].method.name
        by_type[name] += 1
        by_occ[name] += types[key].frequency
        for r in results:
            used.update(r.terms_used)
    for t in unparsed:
        by_type[UNPARSED] += 1
        by_occ[UNPARSED] += t.frequency
    total = len(terminology) if terminology is not None else 0
    return ParsingStats(by_type, by_occ, len(used), total)


# ------------------------------------------------------------------ output

CANDIDATE_COLUMNS = ("lemma_key", "inflected_key", "head_lemma", "parse", "method", "reliability", "frequency")
UNPARSED_COLUMNS = ("inflected_key", "pos_sequence", "frequency")
MONOLEXICAL_COLUMNS = ("inflected_key", "lemma_key", "pos", "frequency")


def format_parse(result: ParseResult, mnp: MnpType) -> str:
    words = mnp.words
    return trees.format_tree(result.tree, lambda p: words[p].surface)


def _tsv(header, rows) -> str:
    lines = ["\t".join(header)]
    lines += ["\t".join(str(x) for x in row) for row in rows]
    return "\n".join(lines) + "\n"


def _by_frequency(types: Iterable[MnpType]) -> list[MnpType]:
    return sorted(types, key=lambda t: (-t.frequency, t.inflected_key))


def render_candidates(ranked: Iterable[TermCandidate]) -> str:
    rows = []
    for c in ranked:
        best = c.best
        rows.append((
            c.lemma_key,
            c.inflected_key,
            c.head_lemma,
            " | ".join(format_parse(p, c.mnp) for p in c.parses),
            best.method.name,
            c.best_reliability,
            c.frequency,
        ))
    return _tsv(CANDIDATE_COLUMNS, rows)


def render_unparsed(unparsed: Iterable[MnpType]) -> str:
    rows = [(t.inflected_key, " ".join(t.pos_sequence), t.frequency) for t in _by_frequency(unparsed)]
    return _tsv(UNPARSED_COLUMNS, rows)


def render_monolexical(types: Iterable[MnpType]) -> str:
    rows = [
        (t.inflected_key, t.lemma_key, t.pos_sequence[0], t.frequency)
        for t in _by_frequency(t for t in types if t.is_monolexical)
    ]
    return _tsv(MONOLEXICAL_COLUMNS, rows)


def _rounded(obj):
    if isinstance(obj, float):
        return round(obj, 4)
    if isinstance(obj, dict):
        return {k: _rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v) for v in obj]
    return obj


def render_report(chunking: ChunkingStats, parsing: ParsingStats, extra: Mapping | None = None) -> str:
    report = {"chunking": asdict(chunking), "parsing": asdict(parsing)}
    report.update(extra or {})
    return json.dumps(_rounded(report), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def emit_outputs(
    candidates: Iterable[TermCandidate],
    unparsed: Iterable[MnpType],
    types: Mapping[str, MnpType],
    chunking: ChunkingStats,
    parsing: ParsingStats,
    out_dir,
    extra: Mapping | None = None,
) -> dict[str, Path]:
    """Write candidates.tsv, unparsed.tsv, monolexical.tsv and report.json.

    Everything is rendered before the first write; each file lands via
    rename so a reader never sees a half-written file.
    """
    files = {
        "candidates.tsv": render_candidates(rank_candidates(candidates)),
        "unparsed.tsv": render_unparsed(unparsed),
        "monolexical.tsv": render_monolexical(types.values()),
        "report.json": render_report(chunking, parsing, extra),
    }
    return write_files(files, out_dir)


def write_files(files: Mapping[str, str], out_dir) -> dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = {}
    for name, text in files.items():
        fd, tmp = tempfile.mkstemp(prefix=f".{name}.", dir=out)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            os.replace(tmp, out / name)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        written[name] = out / name
    return written


# ------------------------------------------------------------- comparison


def _metric_rows(report: Mapping) -> dict[str, float | int]:
    ch = report["chunking"]
    rows = {
        "mnp_types": ch["mnp_types"],
        "mnp_occurrences": ch["mnp_occurrences"],
        "monolexical_types": ch["monolexical_types"],
        "monolexical_occurrences": ch["monolexical_occurrences"],
        "words_per_complex_mnp": ch["words_per_complex_mnp"],
        "pos_sequence_types": ch["pos_sequence_types"],
    }
    for scope in ("types", "occurrences"):
        for name in METHOD_NAMES:
            rows[f"{scope}.{name}"] = report["parsing"][scope].get(name, 0)
    rows["terms_used"] = report["parsing"]["terms_used"]
    return rows


def compare_runs(report_a: Mapping, report_b: Mapping) -> dict[str, tuple]:
    """Per-metric ``(a, b, b - a)``; the mean length is compared to 2 decimals."""
    hash_a = report_a.get("corpus", {}).get("sha256")
    hash_b = report_b.get("corpus", {}).get("sha256")
    if hash_a != hash_b:
        raise ValueError(f"reports come from different corpora ({hash_a} vs {hash_b})")
    a, b = _metric_rows(report_a), _metric_rows(report_b)
    out = {}
    for key in a:
        if key == "words_per_complex_mnp":
            va, vb = round(a[key], 2), round(b[key], 2)
            out[key] = (va, vb, round(vb - va, 2))
        else:
            out[key] = (a[key], b[key], b[key] - a[key])
    return out


def format_comparison(rows: Mapping[str, tuple], labels=("A", "B")) -> str:
    width = max(len(k) for k in rows)
    lines = [f"{'metric':<{width}}  {labels[0]:>10}  {labels[1]:>10}  {'delta':>10}"]
    for key, (va, vb, d) in rows.items():
        if isinstance(d, float):
            lines.append(f"{key:<{width}}  {va:>10.2f}  {vb:>10.2f}  {d:>+10.2f}")
        else:
            lines.append(f"{key:<{width}}  {va:>10}  {vb:>10}  {d:>+10}")
    return "\n".join(lines) + "\n"
