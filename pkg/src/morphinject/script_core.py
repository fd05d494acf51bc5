"""Devanagari text utilities: orthographic syllables, ending classes, rewrites.

All joiner rules in the noun/verb modules are built on three primitives
defined here: splitting a word into orthographic syllables, classifying
its ending, and rewriting that ending. Words are kept in a canonical
form: Unicode NFC, except that consonant+nukta pairs are re-composed to
the precomposed letter where Unicode defines one (NFC itself decomposes
U+0958..U+095F, which would split e.g. ड़ into two codepoints).
"""

from __future__ import annotations

import unicodedata
from enum import Enum

from .errors import EmptyInput, NonDevanagariContent, RuleNotApplicable

VIRAMA = "्"
NUKTA = "़"
ANUSVARA = "ं"
CHANDRABINDU = "ँ"
VISARGA = "ः"

# Nasalization marks that may trail a syllable; visarga behaves the same
# way for segmentation purposes.
_TRAILING_MARKS = frozenset({ANUSVARA, CHANDRABINDU, VISARGA, "ऀ"})
_NASALS = frozenset({ANUSVARA, CHANDRABINDU})

_CONSONANT_RANGES = (
    (0x0915, 0x0939),  # क .. ह
    (0x0958, 0x095F),  # precomposed nukta letters क़ .. य़
    (0x0979, 0x097F),  # rare extensions (ॹ etc.)
)
_EXTRA_CONSONANTS = frozenset({0x0929, 0x0931, 0x0934})  # ऩ ऱ ऴ

_INDEPENDENT_VOWELS = frozenset(
    list(range(0x0904, 0x0915)) + [0x0960, 0x0961, 0x0972]
)
_MATRAS = frozenset(
    list(range(0x093E, 0x094D)) + [0x094E, 0x094F, 0x0962, 0x0963]
)

# consonant + nukta -> precomposed letter (the pairs Unicode defines)
_NUKTA_COMPOSED = {
    "न": "ऩ",
    "र": "ऱ",
    "ळ": "ऴ",
    "क": "क़",
    "ख": "ख़",
    "ग": "ग़",
    "ज": "ज़",
    "ड": "ड़",
    "ढ": "ढ़",
    "फ": "फ़",
    "य": "य़",
}

MATRA_OF_VOWEL = {
    "आ": "ा",
    "इ": "ि",
    "ई": "ी",
    "उ": "ु",
    "ऊ": "ू",
    "ऋ": "ृ",
    "ए": "े",
    "ऐ": "ै",
    "ओ": "ो",
    "औ": "ौ",
    "ऍ": "ॅ",
    "ऑ": "ॉ",
    "अ": "",        # अ is the inherent vowel: no matra
}
VOWEL_OF_MATRA = {m: v for v, m in MATRA_OF_VOWEL.items() if m}

# Matras rendered (partly) above the headline. A chandrabindu following
# one of these is conventionally written as anusvara (रातें, not रातेँ).
_ABOVE_LINE_MATRAS = frozenset(
    {"ि", "ी", "े", "ै", "ो", "ौ", "ॅ", "ॉ"}
)

_SHORTEN = {
    "ी": "ि",
    "ू": "ु",
    "ा": "",        # ा -> inherent अ
    "ई": "इ",
    "ऊ": "उ",
    "आ": "अ",
}


class EndingCategory(Enum):
    LONG_A = "aa"
    LONG_II = "ii"
    SHORT_I = "i"
    LONG_UU = "uu"
    SHORT_U = "u"
    E = "e"
    O = "o"
    CONSONANT = "consonant"
    OTHER = "other"


class RewriteRule(Enum):
    DROP_FINAL_VOWEL = "drop"
    SHORTEN_FINAL_VOWEL = "shorten"
    REPLACE_WITH = "replace"


_ENDING_BY_CODEPOINT = {
    "ा": EndingCategory.LONG_A,
    "आ": EndingCategory.LONG_A,
    "ी": EndingCategory.LONG_II,
    "ई": EndingCategory.LONG_II,
    "ि": EndingCategory.SHORT_I,
    "इ": EndingCategory.SHORT_I,
    "ू": EndingCategory.LONG_UU,
    "ऊ": EndingCategory.LONG_UU,
    "ु": EndingCategory.SHORT_U,
    "उ": EndingCategory.SHORT_U,
    "े": EndingCategory.E,
    "ए": EndingCategory.E,
    "ो": EndingCategory.O,
    "ओ": EndingCategory.O,
}


def is_consonant(ch: str) -> bool:
    cp = ord(ch)
    if cp in _EXTRA_CONSONANTS:
        return True
    return any(lo <= cp <= hi for lo, hi in _CONSONANT_RANGES)


def is_independent_vowel(ch: str) -> bool:
    return ord(ch) in _INDEPENDENT_VOWELS


def is_matra(ch: str) -> bool:
    return ord(ch) in _MATRAS


def is_devanagari(ch: str) -> bool:
    return 0x0900 <= ord(ch) <= 0x097F


def normalize(text: str) -> str:
    """Bring text to the toolkit's canonical form.

    NFC first, then consonant+nukta pairs are re-composed to the
    precomposed letter (ड+़ -> ड़) and zero-width (non-)joiners are
    dropped. Note the result is deliberately *not* strict NFC for nukta
    letters: keeping them as single codepoints lets every joiner rule
    treat a consonant as one unit.
    """
    text = unicodedata.normalize("NFC", text)
    text = text.replace("‌", "").replace("‍", "")  # ZWNJ, ZWJ
    out = []
    for ch in text:
        if ch == NUKTA and out and out[-1] in _NUKTA_COMPOSED:
            out[-1] = _NUKTA_COMPOSED[out[-1]]
        else:
            out.append(ch)
    return "".join(out)


def _check_word(word: str) -> None:
    if not word:
        raise EmptyInput("empty word")
    for i, ch in enumerate(word):
        if not is_devanagari(ch):
            raise NonDevanagariContent(
                f"non-Devanagari codepoint U+{ord(ch):04X} at offset {i}"
            )
        if ch in ("।", "॥"):  # danda marks are punctuation, not word content
            raise NonDevanagariContent(f"punctuation {ch!r} at offset {i}")


def split_syllables(word: str) -> list[str]:
    """Split a word into orthographic syllables, losslessly.

    A syllable is consonant(+virama+consonant)* plus an optional matra
    plus any trailing nasalization/visarga; an independent vowel (plus
    trailing marks) forms its own syllable. A stray nukta stays with its
    consonant and a word-final virama stays with its cluster, so
    concatenating the pieces always reproduces the input.
    """
    _check_word(word)
    syllables = []
    i = 0
    n = len(word)
    while i < n:
        ch = word[i]
        if is_consonant(ch):
            start = i
            i += 1
            if i < n and word[i] == NUKTA:
                i += 1
            while i < n and word[i] == VIRAMA and i + 1 < n and is_consonant(word[i + 1]):
                i += 2
                if i < n and word[i] == NUKTA:
                    i += 1
            if i < n and word[i] == VIRAMA:  # dead consonant at word end
                i += 1
            elif i < n and is_matra(word[i]):
                i += 1
            while i < n and word[i] in _TRAILING_MARKS:
                i += 1
            syllables.append(word[start:i])
        elif is_independent_vowel(ch):
            start = i
            i += 1
            while i < n and word[i] in _TRAILING_MARKS:
                i += 1
            syllables.append(word[start:i])
        else:
            # orphan sign or in-block oddity (digit, OM, ...): own unit
            syllables.append(ch)
            i += 1
    return syllables


def strip_final_nasal(word: str) -> tuple[str, str]:
    """Split off word-final nasalization/visarga marks: ('कुआ', 'ँ')."""
    i = len(word)
    while i > 0 and word[i - 1] in _TRAILING_MARKS:
        i -= 1
    return word[:i], word[i:]


def ending_of(word: str) -> EndingCategory:
    """Classify a word by its final vowel sign / final codepoint.

    Word-final nasalization and visarga are transparent: they belong to
    the final syllable, so the vowel beneath them decides the category.
    """
    _check_word(word)
    body, _ = strip_final_nasal(word)
    if not body:
        return EndingCategory.OTHER
    last = body[-1]
    if last in _ENDING_BY_CODEPOINT:
        return _ENDING_BY_CODEPOINT[last]
    if is_consonant(last):
        return EndingCategory.CONSONANT
    return EndingCategory.OTHER


def matra_form(suffix: str) -> str:
    """Rewrite a vowel-initial suffix for attachment to a consonant.

    The leading independent vowel becomes its matra (ओं -> ों); a
    chandrabindu directly after an above-the-line matra becomes anusvara
    (एँ -> ें). Consonant-initial suffixes pass through unchanged.
    """
    if not suffix or suffix[0] not in MATRA_OF_VOWEL:
        return suffix
    matra = MATRA_OF_VOWEL[suffix[0]]
    rest = suffix[1:]
    if rest[:1] == CHANDRABINDU and matra in _ABOVE_LINE_MATRAS:
        rest = ANUSVARA + rest[1:]
    return matra + rest


def independent_form(suffix: str) -> str:
    """Inverse of matra_form: rewrite a matra-initial suffix to start with
    an independent vowel, for attachment after a vowel (ें -> एँ)."""
    if not suffix or suffix[0] not in VOWEL_OF_MATRA:
        return suffix
    vowel = VOWEL_OF_MATRA[suffix[0]]
    rest = suffix[1:]
    if rest[:1] == ANUSVARA and vowel == "ए":
        # चलें -> खाएँ: anusvara reverts to chandrabindu over bare ए
        # (ओं keeps its anusvara: कुओं)
        rest = CHANDRABINDU + rest[1:]
    return vowel + rest


def contains_nasal(s: str) -> bool:
    return any(ch in _NASALS for ch in s)


def rewrite_ending(word: str, rule: RewriteRule, sign: str | None = None) -> str:
    """Apply a single deterministic rewrite to the word's ending.

    Word-final nasalization is peeled off first and re-attached after
    the rewrite, except when a REPLACE_WITH sign carries its own nasal
    mark (कुआँ + ओं -> कुओं, not कुओंँ).
    """
    _check_word(word)
    body, nasal = strip_final_nasal(word)
    if not body:
        raise RuleNotApplicable(f"{word!r} has no rewritable ending")
    last = body[-1]

    if rule is RewriteRule.DROP_FINAL_VOWEL:
        if not is_matra(last):
            raise RuleNotApplicable(f"{word!r} does not end in a vowel sign")
        new_body = body[:-1]
    elif rule is RewriteRule.SHORTEN_FINAL_VOWEL:
        if last not in _SHORTEN:
            raise RuleNotApplicable(f"{word!r} does not end in a long vowel")
        new_body = body[:-1] + _SHORTEN[last]
    elif rule is RewriteRule.REPLACE_WITH:
        if sign is None:
            raise RuleNotApplicable("REPLACE_WITH needs a replacement sign")
        if is_matra(last):
            new_body = body[:-1] + matra_form(sign)
        elif is_independent_vowel(last):
            # after another vowel the replacement is written independently
            new_body = body[:-1] + independent_form(sign)
        else:
            raise RuleNotApplicable(f"{word!r} does not end in a vowel")
    else:  # pragma: no cover - enum is closed
        raise RuleNotApplicable(f"unknown rule {rule}")

    if nasal and contains_nasal(new_body[len(body[:-1]):]):
        nasal = ""  # replacement brought its own nasalization
    return new_body + nasal
