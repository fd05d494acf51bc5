import io
from pathlib import Path

import pytest

from morphinject.corpus_inject import (
    emit_factored_corpus,
    inject,
    parse_factored_corpus,
    render_line,
    validate_widths,
)
from morphinject.dictionary_builder import (
    FactoredToken,
    SURFACE_SCHEME,
    build_noun_dict,
)
from morphinject.errors import (
    LineCountMismatch,
    MalformedToken,
    RaggedFactorWidth,
    WidthIncompatible,
)
from morphinject.noun_morph import BilingualNoun, Gender, NounLexEntry

FIXTURES = Path(__file__).parent / "fixtures"


def _parse(src_text, tgt_text, **kw):
    return parse_factored_corpus(
        io.StringIO(src_text), io.StringIO(tgt_text), **kw
    )


def test_parse_basic():
    corpus = _parse("a|x b|y\nc|z\n", "प|है\nक|है\n")
    assert len(corpus.pairs) == 2
    assert corpus.pairs[0][0][0] == FactoredToken("a", ("x",))
    assert corpus.source_width() == 1 and corpus.target_width() == 1


def test_parse_factor_layout():
    corpus = _parse("dog|sg|dir\n", "कुत्ता|कुत्ता|null\n")
    token = corpus.pairs[0][1][0]
    assert token.surface == "कुत्ता"
    assert token.factors == ("कुत्ता", "null")


def test_parse_line_count_mismatch():
    with pytest.raises(LineCountMismatch):
        _parse("a\nb\n", "x\n")


def test_parse_malformed_tokens():
    with pytest.raises(MalformedToken, match=r"source:1:3"):
        _parse("a  b\n", "x y\n")  # double space
    with pytest.raises(MalformedToken, match=r"source:2:1"):
        _parse("a\n|x\n", "x\ny\n")  # empty surface
    with pytest.raises(MalformedToken, match=r"trailing whitespace"):
        _parse("a \n", "x\n")
    with pytest.raises(MalformedToken, match=r"source:1:1.*empty factor"):
        _parse("a||b\n", "x\n")


def test_parse_ragged_width():
    with pytest.raises(RaggedFactorWidth, match=r"target:2:1"):
        _parse("a|x\nb|y\n", "p|q\nr\n")
    corpus = _parse("a|x\nb|y\n", "p|q\nr\n", auto_normalize=True)
    assert corpus.pairs[1][1][0].render() == "r|null"
    assert not validate_widths(corpus)


def test_roundtrip_fixture_bytes():
    src_bytes = (FIXTURES / "corpus_src.txt").read_text("utf-8")
    tgt_bytes = (FIXTURES / "corpus_tgt.txt").read_text("utf-8")
    corpus = _parse(src_bytes, tgt_bytes)
    out_src, out_tgt = io.StringIO(), io.StringIO()
    emit_factored_corpus(corpus, out_src, out_tgt)
    assert out_src.getvalue() == src_bytes
    assert out_tgt.getvalue() == tgt_bytes
    # parse(emit(c)) == c
    reparsed = _parse(out_src.getvalue(), out_tgt.getvalue())
    assert reparsed == corpus


def _dog_dict():
    return build_noun_dict(
        [BilingualNoun("dog", NounLexEntry("कुत्ता", Gender.MASCULINE))]
    )


def test_inject_empty_dict():
    corpus = _parse("dog|sg|dir\n", "कुत्ता|कुत्ता|null\n")
    empty = build_noun_dict([])
    out, report = inject(corpus, empty)
    assert out.pairs == corpus.pairs
    assert report.entries_offered == report.entries_added == 0
    assert report.duplicates_skipped == 0


def test_inject_appends_after_originals():
    corpus = _parse("the|null|null dog|sg|dir\n", "कुत्ता|कुत्ता|null है|हो|null\n")
    out, report = inject(corpus, _dog_dict())
    # sg-obl and pl-dir share a target but not a source, so all 4 are fresh
    assert report.entries_offered == 4
    assert report.entries_added == 4
    assert report.duplicates_skipped == 0
    assert len(out.pairs) == 1 + 4
    assert out.pairs[0] == corpus.pairs[0]  # prefix untouched
    assert render_line(out.pairs[1][0]) == "dog|sg|dir"
    assert render_line(out.pairs[1][1]) == "कुत्ता|कुत्ता|null"


def test_double_injection_all_duplicates():
    corpus = _parse("x|null|null\n", "य|null|null\n")
    d = _dog_dict()
    once, report1 = inject(corpus, d)
    assert report1.entries_added + report1.duplicates_skipped == report1.entries_offered
    twice, report2 = inject(once, d)
    assert report2.duplicates_skipped == report2.entries_offered == 4
    assert report2.entries_added == 0
    assert twice.pairs == once.pairs


def test_inject_width_normalization():
    # dictionary is narrower than the corpus: entries get padded
    corpus = _parse("a|x|y|z\n", "प|क|ख|ग\n")
    out, report = inject(corpus, _dog_dict())
    assert report.normalization_applied is True
    assert out.pairs[1][0][0].render() == "dog|sg|dir|null"
    assert not validate_widths(out)
    # dictionary wider than the corpus would force rewriting originals
    narrow = _parse("a|x\n", "प|क\n")
    with pytest.raises(WidthIncompatible):
        inject(narrow, _dog_dict())


def test_inject_surface_mode():
    corpus = _parse("the dog\n", "कुत्ता है\n")
    out, report = inject(corpus, _dog_dict(), mode="surface")
    assert report.entries_offered == 4  # dog, dogs x कुत्ता, कुत्ते, कुत्तों
    lines = out.source_lines()
    assert "dogs" in lines and "dog" in lines
    assert not validate_widths(out)


def test_inject_surface_mode_splits_periphrastic():
    # a "will walk" style entry becomes two plain tokens on the source line
    from morphinject.dictionary_builder import DictEntry, WordFormDictionary

    d = WordFormDictionary(
        [DictEntry(FactoredToken("will walk"), FactoredToken("चलेगा"))],
        SURFACE_SCHEME,
    )
    corpus = _parse("a\n", "क\n")
    out, _ = inject(corpus, d, mode="surface")
    assert out.source_lines()[-1] == "will walk"
    assert [t.render() for t in out.pairs[-1][0]] == ["will", "walk"]
    reparsed = _parse(
        "".join(ln + "\n" for ln in out.source_lines()),
        "".join(ln + "\n" for ln in out.target_lines()),
    )
    assert reparsed == out


def test_unicode_preserved_exactly():
    tgt = "लड़कियाँ|लड़की|याँ\n"  # decomposed nukta stays decomposed
    corpus = _parse("girls|pl|dir\n", tgt)
    out_src, out_tgt = io.StringIO(), io.StringIO()
    emit_factored_corpus(corpus, out_src, out_tgt)
    assert out_tgt.getvalue() == tgt
