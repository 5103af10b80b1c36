import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mnpterm.corpus_io import (
    PENN_TREEBANK,
    Corpus,
    Sentence,
    TagSet,
    TaggedWord,
    format_vertical_corpus,
    parse_vertical_corpus,
    read_corpus,
    validate_tagset,
)
from mnpterm.errors import FormatError


def test_single_sentence():
    c = parse_vertical_corpus("the\tDT\tthe\ngene\tNN\tgene\n\n")
    assert c.sentence_count == 1
    assert c.word_count == 2
    assert [w.surface for w in c.sentences[0]] == ["the", "gene"]
    assert c.sentences[0][1] == TaggedWord("gene", "NN", "gene", 1)


def test_empty_corpus_is_an_error():
    with pytest.raises(FormatError, match="empty corpus"):
        parse_vertical_corpus("")
    with pytest.raises(FormatError, match="empty corpus"):
        parse_vertical_corpus("# only a comment\n\n\n")


def test_comments_and_blank_runs():
    text = (
        "# header comment\n"
        "Spo0A\tNNP\tSpo0A\n"
        "binds\tVBZ\tbind\n"
        "\n\n\n"
        "# between sentences\n"
        "sigma\tNN\tsigma\n"
        "# inside a sentence\n"
        "factor\tNN\tfactor\n"
        "\n"
        "GerE\tNNP\tGerE\n"  # no final blank line
    )
    c = parse_vertical_corpus(text)
    # hand count: [Spo0A binds] [sigma factor] [GerE]
    assert [len(s) for s in c] == [2, 2, 1]
    assert [s.id for s in c] == [0, 1, 2]
    assert c.word_count == 5


@pytest.mark.parametrize(
    "line, lineno",
    [
        ("the\tDT\n", 2),
        ("the\tDT\tthe\textra\n", 2),
        ("\tDT\tthe\n", 2),
        ("the\t\tthe\n", 2),
    ],
)
def test_malformed_lines(line, lineno):
    with pytest.raises(FormatError) as err:
        parse_vertical_corpus("ok\tNN\tok\n" + line, name="c.txt")
    assert err.value.line == lineno
    assert str(err.value).startswith(f"c.txt:{lineno}:")


def test_whitespace_in_token_rejected():
    with pytest.raises(FormatError):
        parse_vertical_corpus("a b\tNN\tab\n")


def test_sentence_invariants():
    with pytest.raises(ValueError):
        Sentence(())
    with pytest.raises(ValueError):
        Sentence((TaggedWord("a", "DT", "a", 1),))


def test_read_corpus(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("x\tNN\tx\n", encoding="utf-8")
    assert read_corpus(p).word_count == 1


def test_validate_tagset():
    c = parse_vertical_corpus("the\tDT\tthe\ngene\tNN\tgene\n")
    assert validate_tagset(c, TagSet("t", frozenset({"DT", "NN", "IN"}))).ok
    c2 = parse_vertical_corpus("the\tDT\tthe\nfoo\tXYZ\tfoo\n")
    assert validate_tagset(c2, TagSet("t", frozenset({"DT", "NN"}))).unknown == {"XYZ": 1}


def test_penn_tagset_knows_fw_and_nnp():
    c = parse_vertical_corpus("in\tIN\tin\nvivo\tFW\tvivo\nGerE\tNNP\tGerE\n")
    report = validate_tagset(c, PENN_TREEBANK)
    assert report.ok and report.unknown == {}
    # the 36 word-level Penn tags are all present
    assert len({t for t in PENN_TREEBANK.tags if t[0].isalpha()}) == 36


def test_validate_does_not_mutate():
    c = parse_vertical_corpus("a\tQQ\ta\n")
    before = format_vertical_corpus(c)
    validate_tagset(c)
    assert format_vertical_corpus(c) == before


token = st.text(
    alphabet=st.characters(blacklist_categories=("Cs", "Cc", "Zs", "Zl", "Zp")), min_size=1, max_size=6
).filter(lambda s: not any(ch.isspace() for ch in s))
tag = st.sampled_from(sorted(PENN_TREEBANK.tags))


@st.composite
def corpora(draw):
    sentences = []
    for sid in range(draw(st.integers(1, 5))):
        n = draw(st.integers(1, 6))
        words = []
        for i in range(n):
            words.append(TaggedWord(draw(token), draw(tag), draw(token), i))
        sentences.append(Sentence(tuple(words), sid))
    return Corpus(tuple(sentences))


@given(corpora())
def test_roundtrip(c):
    text = format_vertical_corpus(c)
    again = parse_vertical_corpus(text)
    assert again == c
    assert format_vertical_corpus(again) == text
    assert again.word_count == sum(len(s) for s in again.sentences)
    assert again.sentence_count == len(again.sentences)


def test_hash_token_is_not_a_comment():
    c = parse_vertical_corpus("#\t#\t#\n# a real comment\n5\tCD\t5\n")
    assert [w.surface for w in c.sentences[0]] == ["#", "5"]


def test_stream_input():
    c = parse_vertical_corpus(io.StringIO("a\tNN\ta\n"))
    assert c.word_count == 1
