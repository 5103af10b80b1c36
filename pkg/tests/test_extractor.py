import json
import re
from collections import Counter

import pytest

from mnpterm.chunker import chunk_sentence, collect_mnp_types
from mnpterm.corpus_io import Sentence
from mnpterm.extractor import (
    METHOD_NAMES,
    build_term_candidates,
    compare_runs,
    compute_chunking_stats,
    compute_parsing_stats,
    emit_outputs,
    format_comparison,
    rank_candidates,
    render_report,
)
from mnpterm.parser import Method, ParseResult, run_parsing
from mnpterm.resources import ChunkingConfig, Terminology, parse_pattern_set
from mnpterm.trees import Leaf, Node

from conftest import GOLDEN


def types_of(*texts):
    occs = []
    for i, text in enumerate(texts):
        for chunk in text.split(" | "):
            occs += chunk_sentence(Sentence.from_string(chunk, i), ChunkingConfig())
    return collect_mnp_types(occs)


PATTERNS = parse_pattern_set("(NN NN<h>)\n(JJ NN<h>)\n")


def test_candidates_exclude_monolexical_and_unparsed():
    types = types_of("sigma/NN factor/NN", "spore/NN", "gene/NN responsible/JJ")
    out = run_parsing(types, Terminology(), PATTERNS)
    cands = build_term_candidates(out.parsed, types)
    assert [c.inflected_key for c in cands] == ["sigma factor"]
    assert [t.inflected_key for t in out.unparsed] == ["gene responsible"]
    assert cands[0].head_lemma == "factor"


def test_ranking_reliability_then_frequency_then_lemma():
    types = types_of("b/NN c/NN", "b/NN c/NN", "a/NN c/NN", "z/NN z/NN")
    leafy = Node(Leaf(0), Leaf(1), 1)
    parsed = {
        "b c": [ParseResult(leafy, Method.PATTERN_COVERED)],
        "a c": [ParseResult(leafy, Method.PATTERN_COVERED)],
        "z z": [ParseResult(leafy, Method.TT_COVERED)],
    }
    ranked = rank_candidates(build_term_candidates(parsed, types))
    assert [c.inflected_key for c in ranked] == ["z z", "b c", "a c"]
    types = types_of("b/NN c/NN", "a/NN c/NN")
    parsed = {k: [ParseResult(leafy, Method.PROGRESSIVE)] for k in types}
    assert [c.inflected_key for c in rank_candidates(build_term_candidates(parsed, types))] == ["a c", "b c"]


def test_chunking_stats_small():
    types = types_of("a/NN b/NN | c/NN", "a/NN b/NN", "x/JJ y/NN z/NN", "c/NN")
    s = compute_chunking_stats(types)
    assert (s.mnp_types, s.mnp_occurrences) == (3, 5)
    assert (s.monolexical_types, s.monolexical_occurrences) == (1, 2)
    assert s.words_per_complex_mnp == pytest.approx(7 / 3)
    assert s.words_per_complex_mnp_types == pytest.approx(5 / 2)
    assert s.pos_sequence_types == 2


def test_chunking_stats_no_complex():
    s = compute_chunking_stats(types_of("a/NN"))
    assert s.words_per_complex_mnp == 0.0 and not s.words_per_complex_mnp_defined


def test_parsing_stats_partition():
    types = types_of("sigma/NN factor/NN", "sigma/NN factor/NN", "spore/NN", "gene/NN responsible/JJ")
    out = run_parsing(types, Terminology(), PATTERNS)
    ps = compute_parsing_stats(out.parsed, out.unparsed, types)
    assert list(ps.types) == METHOD_NAMES
    assert ps.types["PATTERN_COVERED"] == 1 and ps.occurrences["PATTERN_COVERED"] == 2
    assert ps.types["UNPARSED"] == 1
    assert sum(ps.types.values()) == 2  # multi-word types only


def test_empty_outputs_have_headers(tmp_path):
    written = emit_outputs([], [], {}, compute_chunking_stats({}), compute_parsing_stats({}, [], {}), tmp_path)
    assert set(written) == {"candidates.tsv", "unparsed.tsv", "monolexical.tsv", "report.json"}
    assert (tmp_path / "candidates.tsv").read_text().count("\n") == 1
    assert (tmp_path / "unparsed.tsv").read_text() == "inflected_key\tpos_sequence\tfrequency\n"
    assert sorted(p.name for p in tmp_path.iterdir()) == sorted(written)  # no temp files left


def test_report_rounds_and_sorts():
    text = render_report(compute_chunking_stats(types_of("a/NN b/NN c/NN", "a/NN b/NN")), compute_parsing_stats({}, [], {}))
    data = json.loads(text)
    assert data["chunking"]["words_per_complex_mnp"] == 2.5
    assert text == json.dumps(data, indent=2, sort_keys=True) + "\n"


def _report(**chunking):
    base = {"mnp_types": 1, "mnp_occurrences": 1, "monolexical_types": 0, "monolexical_occurrences": 0,
            "words_per_complex_mnp": 2.0, "pos_sequence_types": 1}
    base.update(chunking)
    zero = dict.fromkeys(METHOD_NAMES, 0)
    return {"corpus": {"sha256": "x"}, "chunking": base,
            "parsing": {"types": dict(zero), "occurrences": dict(zero), "terms_used": 0}}


def test_compare_identical_is_zero():
    rows = compare_runs(_report(), _report())
    assert all(d == 0 for _, _, d in rows.values())
    assert "words_per_complex_mnp" in format_comparison(rows)


def test_compare_mean_to_two_decimals():
    rows = compare_runs(_report(words_per_complex_mnp=2.6897), _report(words_per_complex_mnp=2.7215))
    assert rows["words_per_complex_mnp"] == (2.69, 2.72, 0.03)


def test_compare_rejects_other_corpus():
    other = _report()
    other["corpus"]["sha256"] = "y"
    with pytest.raises(ValueError, match="different corpora"):
        compare_runs(_report(), other)


# ------------------------------------------------------------ independent recount

NOUNISH = {"NN", "NNS", "NNP", "NNPS", "JJ", "JJR", "JJS"}
QUANTIFIERS = {"many", "several", "other", "such"}


def naive_mnps(corpus_text):
    """Regex chunker over a one-letter code per word: N content, o "of", x frontier."""
    for block in corpus_text.strip().split("\n\n"):
        toks = [l.split("\t") for l in block.splitlines() if not l.startswith("#")]
        code = []
        for k, (surface, tag, lemma) in enumerate(toks):
            if tag == "JJ" and lemma.lower() in QUANTIFIERS:
                code.append("x")
            elif tag in NOUNISH:
                code.append("N")
            elif tag == "IN" and lemma.lower() == "of":
                code.append("o")
            else:
                code.append("x")
        for k, (surface, tag, lemma) in enumerate(toks[:-1]):
            if (lemma.lower(), tag, toks[k + 1][2].lower(), toks[k + 1][1]) == ("of", "IN", "course", "NN"):
                code[k] = code[k + 1] = "x"
        for m in re.finditer(r"N(?:[No]*N)?", "".join(code)):
            yield [toks[i] for i in range(m.start(), m.end())]


def test_golden_chunking_stats_recount(data_dir):
    mnps = list(naive_mnps((data_dir / "minicorpus.txt").read_text(encoding="utf-8")))
    freq = Counter(" ".join(t[0] for t in m).casefold() for m in mnps)
    complex_occ = [m for m in mnps if len(m) > 1]
    seqs = {tuple(t[1] for t in m) for m in complex_occ}
    expected = {
        "mnp_types": len(freq),
        "mnp_occurrences": len(mnps),
        "monolexical_types": sum(1 for k in freq if " " not in k),
        "monolexical_occurrences": sum(1 for m in mnps if len(m) == 1),
        "words_per_complex_mnp": round(sum(map(len, complex_occ)) / len(complex_occ), 4),
        "pos_sequence_types": len(seqs),
    }
    report = json.loads((GOLDEN / "no_resource" / "report.json").read_text())
    assert {k: report["chunking"][k] for k in expected} == expected
    assert expected["mnp_types"] == 87 and expected["mnp_occurrences"] == 105
