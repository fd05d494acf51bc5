"""Hindi noun inflection: class prediction, suffix grid, joiner, paradigms.

Nouns fall into five inflection classes (A..E). Class A never inflects;
the others share a 2x2 number/case grid whose suffixes live in a TSV
data file so corrections never require code changes. The joiner builds
the surface form from root + suffix using only the root's ending and
the class as features.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, TextIO

from . import script_core as sc
from .errors import EmptyRoot, IllegalSuffixForClass, InputError

NULL_SUFFIX_MARK = "-"


class NounClass(Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"


class Number(Enum):
    SINGULAR = "sg"
    PLURAL = "pl"


class Case(Enum):
    DIRECT = "dir"
    OBLIQUE = "obl"


class Gender(Enum):
    MASCULINE = "m"
    FEMININE = "f"


# Fixed paradigm slot order: sg-dir, sg-obl, pl-dir, pl-obl.
PARADIGM_SLOTS = (
    (Number.SINGULAR, Case.DIRECT),
    (Number.SINGULAR, Case.OBLIQUE),
    (Number.PLURAL, Case.DIRECT),
    (Number.PLURAL, Case.OBLIQUE),
)


@dataclass(frozen=True)
class NounLexEntry:
    hindi_root: str
    gender: Gender
    countable: bool = True
    class_override: NounClass | None = None

    def __post_init__(self):
        if not self.hindi_root.strip():
            raise EmptyRoot("noun entry with empty root")
        object.__setattr__(self, "hindi_root", sc.normalize(self.hindi_root))


@dataclass(frozen=True)
class NounParadigmRow:
    number: Number
    case: Case
    suffix: str | None
    surface: str


class SuffixTable:
    """The class x number x case suffix grid (None = null suffix)."""

    def __init__(self, cells: dict[tuple[NounClass, Number, Case], str | None]):
        for cls in NounClass:
            for number, case in PARADIGM_SLOTS:
                key = (cls, number, case)
                if key not in cells:
                    raise InputError(f"suffix table missing cell {cls.value}/{number.value}/{case.value}")
        for number, case in PARADIGM_SLOTS:
            if cells[(NounClass.A, number, case)] is not None:
                raise InputError("class A cells must all be null")
        for cls in NounClass:
            if cells[(cls, Number.SINGULAR, Case.DIRECT)] is not None:
                raise InputError("sg-dir cell must be null for every class")
        self.cells = dict(cells)

    def lookup(self, cls: NounClass, number: Number, case: Case) -> str | None:
        return self.cells[(cls, number, case)]

    def legal_suffixes(self, cls: NounClass) -> set[str]:
        return {
            s for (c, _, _), s in self.cells.items() if c is cls and s is not None
        }


def load_suffix_table(source: str | Path | TextIO | None = None) -> SuffixTable:
    """Load a suffix table from TSV (class, number, case, suffix)."""
    if source is None:
        text = resources.files("morphinject.data").joinpath("noun_suffixes.tsv").read_text("utf-8")
        lines = text.splitlines()
    elif hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        lines = Path(source).read_text("utf-8").splitlines()

    cells: dict[tuple[NounClass, Number, Case], str | None] = {}
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise InputError(f"noun suffix table line {lineno}: expected 4 columns, got {len(parts)}")
        cls, number, case, suffix = parts
        try:
            key = (NounClass(cls), Number(number), Case(case))
        except ValueError as exc:
            raise InputError(f"noun suffix table line {lineno}: {exc}") from None
        if key in cells:
            raise InputError(
                f"noun suffix table line {lineno}: duplicate cell {cls}/{number}/{case}"
            )
        cells[key] = None if suffix == NULL_SUFFIX_MARK else sc.normalize(suffix)
    return SuffixTable(cells)


_DEFAULT_TABLE: SuffixTable | None = None


def default_suffix_table() -> SuffixTable:
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = load_suffix_table()
    return _DEFAULT_TABLE


def classify_noun(entry: NounLexEntry) -> NounClass:
    """Predict the inflection class from gender and the root's ending.

    An explicit override wins; uncountable (mass/abstract) nouns are
    class A, which is not recoverable from gender+ending alone.
    """
    if entry.class_override is not None:
        return entry.class_override
    if not entry.countable:
        return NounClass.A
    ending = sc.ending_of(entry.hindi_root)
    if entry.gender is Gender.FEMININE:
        if ending in (sc.EndingCategory.LONG_II, sc.EndingCategory.SHORT_I):
            return NounClass.B
        return NounClass.C
    if ending is sc.EndingCategory.LONG_A:
        return NounClass.D
    return NounClass.E


def noun_suffix(table: SuffixTable, cls: NounClass, number: Number, case: Case) -> str | None:
    """Exact cell lookup; None means the surface equals the root."""
    return table.lookup(cls, number, case)


def join_noun(
    root: str,
    cls: NounClass,
    suffix: str | None,
    table: SuffixTable | None = None,
) -> str:
    """Synthesize the surface form from root + suffix (reverse morphology).

    Dispatch is keyed on (class, root ending):

    * D + aa-ending: the final vowel is replaced by the suffix vowel
      (कुत्ता -> कुत्ते, कुत्तों).
    * B/E + ii-ending: shorten ी -> ि, then append; class E realizes its
      ओं cell as यों on these roots (माली -> मालियों).
    * uu-ending: shorten ू -> ु, then append the independent-vowel
      suffix (बहू -> बहुएँ, आलू -> आलुओं).
    * consonant-ending: the suffix vowel is realized as a matra on the
      final consonant (रात -> रातें, घर -> घरों).
    * anything else: plain append (माला -> मालाएँ).
    """
    root = sc.normalize(root)
    if suffix is not None:
        suffix = sc.normalize(suffix)
        legal = (table or default_suffix_table()).legal_suffixes(cls)
        if suffix not in legal:
            raise IllegalSuffixForClass(
                f"suffix {suffix!r} is not in the class-{cls.value} column"
            )
        if suffix == "ओं" and cls is NounClass.E and sc.ending_of(root) in (
            sc.EndingCategory.LONG_II,
            sc.EndingCategory.SHORT_I,
        ):
            suffix = "यों"
    if suffix is None:
        return root

    body, nasal = sc.strip_final_nasal(root)
    ending = sc.ending_of(root)

    if ending is sc.EndingCategory.CONSONANT:
        return root + sc.matra_form(suffix)

    if cls is NounClass.D and ending is sc.EndingCategory.LONG_A:
        return sc.rewrite_ending(root, sc.RewriteRule.REPLACE_WITH, suffix)

    if ending in (sc.EndingCategory.LONG_II, sc.EndingCategory.LONG_UU):
        stem = sc.rewrite_ending(body, sc.RewriteRule.SHORTEN_FINAL_VOWEL)
    else:
        stem = body

    out = stem + suffix
    if nasal and not sc.contains_nasal(suffix):
        out += nasal
    return out


def noun_paradigm(entry: NounLexEntry, table: SuffixTable | None = None) -> list[NounParadigmRow]:
    """Generate the four number/case forms, in sg-dir, sg-obl, pl-dir,
    pl-obl order."""
    table = table or default_suffix_table()
    cls = classify_noun(entry)
    rows = []
    for number, case in PARADIGM_SLOTS:
        suffix = noun_suffix(table, cls, number, case)
        surface = join_noun(entry.hindi_root, cls, suffix, table)
        rows.append(NounParadigmRow(number, case, suffix, surface))
    return rows


@dataclass
class BilingualNoun:
    english_root: str
    entry: NounLexEntry


def parse_noun_lexicon(lines: Iterable[str], bilingual: bool = True) -> list[BilingualNoun]:
    """Parse a noun lexicon TSV.

    Bilingual rows: english_root, hindi_root, gender (m|f), countable
    (1|0), optional class override (A-E). Monolingual rows drop the
    english_root column. Rows without a gender are rejected, not
    guessed.
    """
    out = []
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if bilingual:
            english, rest = parts[0], parts[1:]
        else:
            english, rest = "", parts
        if len(rest) < 2:
            raise InputError(f"noun lexicon line {lineno}: need root and gender")
        root = rest[0]
        try:
            gender = Gender(rest[1])
        except ValueError:
            raise InputError(f"noun lexicon line {lineno}: bad gender {rest[1]!r}") from None
        countable = True
        if len(rest) > 2 and rest[2] != "":
            if rest[2] not in ("0", "1"):
                raise InputError(f"noun lexicon line {lineno}: countable must be 1 or 0")
            countable = rest[2] == "1"
        override = None
        if len(rest) > 3 and rest[3] != "" and rest[3] != "-":
            try:
                override = NounClass(rest[3])
            except ValueError:
                raise InputError(f"noun lexicon line {lineno}: bad class {rest[3]!r}") from None
        out.append(
            BilingualNoun(english, NounLexEntry(root, gender, countable, override))
        )
    return out
