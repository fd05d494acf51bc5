"""Hindi verb inflection over a gender/number/person/TAM factor grid.

Unlike nouns, verbs need no pre-classification: one suffix table applies
to every verb, and the joiner keys only on the ending of the stem. The
table is data-driven TSV; "-" in a factor column collapses that
dimension. English has no grammatical gender on verbs, so paradigm
generation replicates every English-side factor tuple once per gender.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, TextIO

from . import script_core as sc
from .errors import InputError
from .noun_morph import Gender, Number

NULL_SUFFIX_MARK = "-"


class Person(Enum):
    FIRST = "1"
    SECOND = "2"
    THIRD = "3"


class TamSlot(Enum):
    INFINITIVE = "inf"
    PRESENT_HABITUAL = "hab"
    PAST_PERFECTIVE = "perf"
    FUTURE = "fut"
    MODAL_SUBJUNCTIVE = "subj"
    IMPERATIVE = "imp"


@dataclass(frozen=True)
class VerbFactors:
    gender: Gender
    number: Number
    person: Person
    tam: TamSlot


# Representative values used for collapsed dimensions when a concrete
# factor tuple is needed (dictionary entries, paradigm rows). These are
# Hindi's least-marked values, matching the annotation defaults.
REPR_NUMBER = Number.SINGULAR
REPR_PERSON = Person.THIRD


@dataclass(frozen=True)
class IrregularForm:
    """One override row: wildcard (None) fields match any value."""

    tam: TamSlot
    gender: Gender | None
    number: Number | None
    person: Person | None
    surface: str

    def matches(self, factors: VerbFactors) -> bool:
        return (
            factors.tam is self.tam
            and (self.gender is None or factors.gender is self.gender)
            and (self.number is None or factors.number is self.number)
            and (self.person is None or factors.person is self.person)
        )


@dataclass(frozen=True)
class VerbLexEntry:
    hindi_root: str  # verb stem: infinitive minus ना
    english_root: str
    irregular_forms: tuple[IrregularForm, ...] = ()

    def __post_init__(self):
        if not self.hindi_root.strip():
            raise InputError("verb entry with empty stem")
        object.__setattr__(self, "hindi_root", sc.normalize(self.hindi_root))

    def override_for(self, factors: VerbFactors) -> str | None:
        for form in self.irregular_forms:
            if form.matches(factors):
                return form.surface
        return None


@dataclass
class _Cell:
    tam: TamSlot
    gender: Gender | None
    number: Number | None
    person: Person | None
    suffix: str | None


class VerbSuffixTable:
    """Suffix lookup over the declared TAM grid, honoring collapsing.

    agreement_spec maps each TAM slot to the factor dimensions that
    matter for it; collapsed dimensions accept any value.
    """

    def __init__(self, cells: list[_Cell]):
        if not cells:
            raise InputError("verb suffix table is empty")
        self.cells = cells
        self.agreement_spec: dict[TamSlot, tuple[str, ...]] = {}
        by_tam: dict[TamSlot, list[_Cell]] = {}
        for cell in cells:
            by_tam.setdefault(cell.tam, []).append(cell)
        for tam, tam_cells in by_tam.items():
            dims = tuple(
                dim
                for dim in ("gender", "number", "person")
                if getattr(tam_cells[0], dim) is not None
            )
            for cell in tam_cells:
                cell_dims = tuple(
                    dim
                    for dim in ("gender", "number", "person")
                    if getattr(cell, dim) is not None
                )
                if cell_dims != dims:
                    raise InputError(
                        f"inconsistent collapsed dimensions in {tam.value} rows"
                    )
            seen = set()
            for cell in tam_cells:
                key = (cell.gender, cell.number, cell.person)
                if key in seen:
                    raise InputError(f"duplicate {tam.value} cell {key}")
                seen.add(key)
            # totality over the declared grid: every combination of the
            # declared per-dimension values must have a cell
            expected = 1
            for dim in dims:
                expected *= len({getattr(c, dim) for c in tam_cells})
            if len(tam_cells) != expected:
                raise InputError(f"{tam.value} rows do not cover their declared grid")
            self.agreement_spec[tam] = dims
        self._by_tam = by_tam

    def tams(self) -> list[TamSlot]:
        return [t for t in TamSlot if t in self._by_tam]

    def lookup(self, factors: VerbFactors) -> str | None:
        """Suffix for a concrete factor tuple (collapsed dims ignored)."""
        for cell in self._by_tam.get(factors.tam, ()):
            if (
                (cell.gender is None or cell.gender is factors.gender)
                and (cell.number is None or cell.number is factors.number)
                and (cell.person is None or cell.person is factors.person)
            ):
                return cell.suffix
        raise InputError(
            f"factor tuple outside the declared grid: {factors.tam.value}"
            f"/{factors.gender.value}/{factors.number.value}/{factors.person.value}"
        )

    def declared_cells(self, tam: TamSlot) -> list[_Cell]:
        return self._by_tam.get(tam, [])


def verb_suffix(table: VerbSuffixTable, factors: VerbFactors) -> str | None:
    return table.lookup(factors)


def load_verb_suffix_table(source: str | Path | TextIO | None = None) -> VerbSuffixTable:
    """Load a verb suffix table from TSV (tam, gender, number, person, suffix)."""
    if source is None:
        text = resources.files("morphinject.data").joinpath("verb_suffixes.tsv").read_text("utf-8")
        lines = text.splitlines()
    elif hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        lines = Path(source).read_text("utf-8").splitlines()

    cells = []
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 5:
            raise InputError(f"verb suffix table line {lineno}: expected 5 columns")
        tam_s, gender_s, number_s, person_s, suffix_s = parts
        try:
            tam = TamSlot(tam_s)
            gender = None if gender_s == "-" else Gender(gender_s)
            number = None if number_s == "-" else Number(number_s)
            person = None if person_s == "-" else Person(person_s)
        except ValueError as exc:
            raise InputError(f"verb suffix table line {lineno}: {exc}") from None
        suffix = None if suffix_s == NULL_SUFFIX_MARK else sc.normalize(suffix_s)
        cells.append(_Cell(tam, gender, number, person, suffix))
    return VerbSuffixTable(cells)


_DEFAULT_TABLE: VerbSuffixTable | None = None


def default_verb_suffix_table() -> VerbSuffixTable:
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = load_verb_suffix_table()
    return _DEFAULT_TABLE


_U_ENDINGS = (sc.EndingCategory.LONG_UU, sc.EndingCategory.SHORT_U)


def join_verb(root: str, suffix: str | None) -> str:
    """Attach a suffix to a verb stem, keyed only on the stem's ending.

    Consonant-final stems take the suffix directly, with a leading
    vowel realized as a matra (चल+ता -> चलता, चल+आ -> चला, चल+एगा ->
    चलेगा). Vowel-final stems keep the vowel independent; long ी/ू
    shorten first (पी -> पिया), a य glide is inserted before आ except
    after u-vowels (खाया, सोया vs छुआ), and ी + ई contracts back to ी
    (पी + ई -> पी).
    """
    root = sc.normalize(root)
    if suffix is None:
        return root
    suffix = sc.normalize(suffix)
    if not suffix or not sc.is_independent_vowel(suffix[0]):
        if suffix and sc.is_matra(suffix[0]):
            suffix = sc.independent_form(suffix)
        else:
            return root + suffix  # consonant-initial: plain append
    ending = sc.ending_of(root)
    if ending is sc.EndingCategory.CONSONANT:
        return root + sc.matra_form(suffix)

    stem = root
    if ending in (sc.EndingCategory.LONG_II, sc.EndingCategory.LONG_UU):
        stem = sc.rewrite_ending(root, sc.RewriteRule.SHORTEN_FINAL_VOWEL)
    if suffix[0] == "आ":  # आ: glide insertion, except after u-vowels
        if ending in _U_ENDINGS:
            return stem + suffix
        return stem + "य" + sc.matra_form(suffix)
    if ending is sc.EndingCategory.LONG_II and suffix[0] == "ई":
        # ी + ई merges: पी+ई -> पी, पी+ईं -> पीं
        return root + suffix[1:]
    return stem + suffix


def verb_paradigm(
    entry: VerbLexEntry, table: VerbSuffixTable | None = None
) -> list[tuple[VerbFactors, str | None, str]]:
    """Generate (factors, suffix, surface) rows over the collapsed grid.

    Every English-side factor tuple (number, person, TAM) declared by
    the table appears exactly once per gender; collapsed dimensions are
    filled with the representative values (sg, 3rd). Irregular-form
    overrides replace the joiner's output for the rows they match.
    """
    table = table or default_verb_suffix_table()
    rows = []
    for tam in table.tams():
        dims = table.agreement_spec[tam]
        cells = table.declared_cells(tam)
        if "number" in dims:
            numbers = [n for n in Number if any(c.number is n for c in cells)]
        else:
            numbers = [REPR_NUMBER]
        if "person" in dims:
            persons = [p for p in Person if any(c.person is p for c in cells)]
        else:
            persons = [REPR_PERSON]
        for gender in Gender:
            for number in numbers:
                for person in persons:
                    factors = VerbFactors(gender, number, person, tam)
                    suffix = table.lookup(factors)
                    surface = entry.override_for(factors)
                    if surface is None:
                        surface = join_verb(entry.hindi_root, suffix)
                    rows.append((factors, suffix, surface))
    return rows


def paradigm_space(dims: Iterable[int]) -> int:
    """Size of an inflection grid: the product of its dimension sizes."""
    dims = list(dims)
    if not dims:
        raise InputError("empty dimension list")
    for d in dims:
        if not isinstance(d, int) or d < 1:
            raise InputError(f"non-positive dimension {d!r}")
    return math.prod(dims)


def parse_verb_lexicon(lines: Iterable[str]) -> list[VerbLexEntry]:
    """Parse a verb lexicon TSV: english_root, hindi_stem, then optional
    irregular overrides as slot=surface pairs (slot is
    tam[:gender][:number][:person] with "-" wildcards)."""
    out = []
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < 2:
            raise InputError(f"verb lexicon line {lineno}: need english_root and hindi_stem")
        english, stem = parts[0], parts[1]
        overrides = []
        for pair in parts[2:]:
            if not pair.strip():
                continue
            if "=" not in pair:
                raise InputError(f"verb lexicon line {lineno}: bad override {pair!r}")
            slot, surface = pair.split("=", 1)
            fields = slot.split(":")
            try:
                tam = TamSlot(fields[0])
                gender = Gender(fields[1]) if len(fields) > 1 and fields[1] != "-" else None
                number = Number(fields[2]) if len(fields) > 2 and fields[2] != "-" else None
                person = Person(fields[3]) if len(fields) > 3 and fields[3] != "-" else None
            except ValueError as exc:
                raise InputError(f"verb lexicon line {lineno}: {exc}") from None
            overrides.append(
                IrregularForm(tam, gender, number, person, sc.normalize(surface))
            )
        out.append(VerbLexEntry(stem, english, tuple(overrides)))
    return out
