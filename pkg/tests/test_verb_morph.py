import io
from collections import Counter

import pytest

from morphinject import script_core as sc
from morphinject.errors import InputError
from morphinject.noun_morph import Gender, Number
from morphinject.verb_morph import (
    Person,
    TamSlot,
    VerbFactors,
    VerbLexEntry,
    default_verb_suffix_table,
    join_verb,
    load_verb_suffix_table,
    paradigm_space,
    parse_verb_lexicon,
    verb_paradigm,
    verb_suffix,
)

TABLE = default_verb_suffix_table()


def _english_tuples(table):
    """Distinct (number, person, tam) tuples declared by the table."""
    tuples = set()
    for tam in table.tams():
        dims = table.agreement_spec[tam]
        for cell in table.declared_cells(tam):
            number = cell.number if "number" in dims else None
            person = cell.person if "person" in dims else None
            tuples.add((number, person, tam))
    return tuples


def test_agreement_spec():
    assert TABLE.agreement_spec[TamSlot.INFINITIVE] == ()
    assert TABLE.agreement_spec[TamSlot.PRESENT_HABITUAL] == ("gender", "number")
    assert TABLE.agreement_spec[TamSlot.FUTURE] == ("gender", "number", "person")
    assert TABLE.agreement_spec[TamSlot.IMPERATIVE] == ("number", "person")


def test_verb_suffix_examples():
    assert verb_suffix(
        TABLE, VerbFactors(Gender.MASCULINE, Number.SINGULAR, Person.THIRD, TamSlot.PRESENT_HABITUAL)
    ) == "ता"
    # infinitive collapses every dimension
    for gender in Gender:
        for number in Number:
            for person in Person:
                assert verb_suffix(
                    TABLE, VerbFactors(gender, number, person, TamSlot.INFINITIVE)
                ) == "ना"
    assert verb_suffix(
        TABLE, VerbFactors(Gender.FEMININE, Number.SINGULAR, Person.SECOND, TamSlot.IMPERATIVE)
    ) is None


def test_verb_suffix_outside_grid():
    with pytest.raises(InputError):
        verb_suffix(
            TABLE, VerbFactors(Gender.MASCULINE, Number.SINGULAR, Person.FIRST, TamSlot.IMPERATIVE)
        )


def test_table_validation():
    with pytest.raises(InputError):
        load_verb_suffix_table(io.StringIO(""))  # empty
    with pytest.raises(InputError):  # inconsistent collapsing within a TAM
        load_verb_suffix_table(io.StringIO("hab\tm\tsg\t-\tता\nhab\t-\tpl\t-\tते\n"))
    with pytest.raises(InputError):  # duplicate cell
        load_verb_suffix_table(io.StringIO("inf\t-\t-\t-\tना\ninf\t-\t-\t-\tना\n"))
    with pytest.raises(InputError):  # grid not total
        load_verb_suffix_table(io.StringIO("hab\tm\tsg\t-\tता\nhab\tf\tpl\t-\tतीं\n"))


def test_join_verb_examples():
    assert join_verb("चल", "ता") == "चलता"
    assert join_verb("खा", "आ") == "खाया"
    assert join_verb("कर", None) == "कर"
    assert join_verb("चल", "आ") == "चला"  # vowel realized as matra on consonant
    assert join_verb("पी", "आ") == "पिया"  # shorten then glide
    assert join_verb("पी", "ई") == "पी"  # ी+ई contraction
    assert join_verb("छू", "आ") == "छुआ"  # no glide after u-vowel
    assert join_verb("खा", "एँ") == "खाएँ"
    assert join_verb("चल", "एँ") == "चलें"


def test_verb_forms_fixture_suite(verb_form_fixtures, verb_lexicon_lines):
    lexicon = {e.hindi_root: e for e in parse_verb_lexicon(verb_lexicon_lines)}
    assert len(lexicon) >= 10
    for fx in verb_form_fixtures:
        stem = sc.normalize(fx.stem)
        entry = lexicon[stem]
        factors = VerbFactors(
            Gender(fx.gender), Number(fx.number), Person(fx.person), TamSlot(fx.tam)
        )
        surface = entry.override_for(factors)
        if surface is None:
            surface = join_verb(stem, verb_suffix(TABLE, factors))
        assert surface == sc.normalize(fx.surface), (
            f"{stem} {fx.tam}/{fx.gender}/{fx.number}/{fx.person}: "
            f"{surface!r} != {fx.surface!r}"
        )


def test_fixture_forms_appear_in_paradigm(verb_form_fixtures, verb_lexicon_lines):
    lexicon = {e.hindi_root: e for e in parse_verb_lexicon(verb_lexicon_lines)}
    paradigms = {
        stem: {(f.tam, surf) for f, _, surf in verb_paradigm(entry, TABLE)}
        for stem, entry in lexicon.items()
    }
    for fx in verb_form_fixtures:
        stem = sc.normalize(fx.stem)
        pair = (TamSlot(fx.tam), sc.normalize(fx.surface))
        assert pair in paradigms[stem], f"{pair} missing from {stem} paradigm"


def test_paradigm_row_count_and_replication():
    entry = VerbLexEntry("चल", "walk")
    rows = verb_paradigm(entry, TABLE)
    tuples = _english_tuples(TABLE)
    assert len(rows) == 2 * len(tuples)  # once per gender
    projected = Counter(
        (f.number, f.person, f.tam) for f, _, _ in rows
    )
    assert all(count == 2 for count in projected.values())
    # completeness: every (gender, tuple) combination exactly once
    keyed = Counter((f.gender, f.number, f.person, f.tam) for f, _, _ in rows)
    assert all(count == 1 for count in keyed.values())


def test_paradigm_surfaces_canonical(verb_lexicon_lines):
    # every generated surface is in canonical form and splits losslessly
    for entry in parse_verb_lexicon(verb_lexicon_lines):
        for _, _, surface in verb_paradigm(entry, TABLE):
            assert surface == sc.normalize(surface)
            assert "".join(sc.split_syllables(surface)) == surface


def test_paradigm_habitual_surfaces():
    entry = VerbLexEntry("चल", "walk")
    hab = {
        surf
        for f, _, surf in verb_paradigm(entry, TABLE)
        if f.tam is TamSlot.PRESENT_HABITUAL
    }
    assert {"चलता", "चलती", "चलते"} <= hab


def test_irregular_override_soundness():
    plain = VerbLexEntry("हो", "be")
    irregular_lines = ["be\tहो\tperf:m:sg=हुआ"]
    irregular = parse_verb_lexicon(irregular_lines)[0]
    rows_plain = verb_paradigm(plain, TABLE)
    rows_irr = verb_paradigm(irregular, TABLE)
    assert len(rows_plain) == len(rows_irr)
    for (f1, s1, surf1), (f2, s2, surf2) in zip(rows_plain, rows_irr):
        assert f1 == f2 and s1 == s2
        if f1.tam is TamSlot.PAST_PERFECTIVE and f1.gender is Gender.MASCULINE \
                and f1.number is Number.SINGULAR:
            assert surf2 == "हुआ"
        else:
            assert surf1 == surf2  # untouched rows are identical


def test_paradigm_space():
    assert paradigm_space([2, 3, 2, 6]) == 72
    assert paradigm_space([1]) == 1
    # the eight-dimension verb grid example: the true product
    assert paradigm_space([4, 3, 3, 2, 3, 3, 7, 6]) == 27216
    with pytest.raises(InputError):
        paradigm_space([])
    with pytest.raises(InputError):
        paradigm_space([3, 0])


def test_verb_lexicon_parser():
    entries = parse_verb_lexicon(
        ["# c", "walk\tचल", "go\tजा\tperf:m:sg=गया\tperf:f:sg=गई"]
    )
    assert entries[0].english_root == "walk"
    assert len(entries[1].irregular_forms) == 2
    with pytest.raises(InputError):
        parse_verb_lexicon(["walk"])
    with pytest.raises(InputError):
        parse_verb_lexicon(["walk\tचल\tbadslot"])
