"""English-side factor extraction from dependency-parsed CoNLL-U.

The toolkit never runs a tagger or parser itself: it ingests the
standard 10-column CoNLL-U produced by external tools. Noun tokens get
(number, case), verb tokens get (number, person, TAM). Unresolvable
features never abort a sentence; they take the least-marked defaults
(singular, third person, direct case) and the decision is logged on the
``morphinject.source_factors`` logger.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, TextIO

from .errors import InputError, NotANoun, NotAVerb
from .noun_morph import Case, Number
from .verb_morph import Person, TamSlot

log = logging.getLogger("morphinject.source_factors")

NOUN_TAGS = {"NN", "NNS", "NNP", "NNPS"}
PLURAL_TAGS = {"NNS", "NNPS"}

# label aliases: legacy Stanford typed dependencies and UD both accepted
SUBJECT_DEPRELS = {"nsubj", "nsubjpass", "nsubj:pass", "csubj"}
DIRECT_OBJECT_DEPRELS = {"dobj", "obj"}
PREP_OBJECT_DEPRELS = {"pobj", "obl"}


@dataclass(frozen=True)
class ConlluToken:
    id: int
    form: str
    lemma: str
    xpos: str
    head: int
    deprel: str


@dataclass(frozen=True)
class EnglishNounFactors:
    number: Number
    case: Case


@dataclass(frozen=True)
class EnglishVerbFactors:
    number: Number
    person: Person
    tam: TamSlot


class PronounTable:
    def __init__(self, entries: dict[str, tuple[Person, Number]]):
        for pron, person in (("i", Person.FIRST), ("we", Person.FIRST),
                             ("you", Person.SECOND), ("he", Person.THIRD),
                             ("she", Person.THIRD), ("it", Person.THIRD),
                             ("they", Person.THIRD)):
            if entries.get(pron, (None,))[0] is not person:
                raise InputError(f"pronoun table is missing or misclassifies {pron!r}")
        self.entries = dict(entries)

    def lookup(self, form: str) -> tuple[Person, Number] | None:
        return self.entries.get(form.lower())


def _read_config_lines(source, default_name: str) -> list[str]:
    if source is None:
        text = resources.files("morphinject.data").joinpath(default_name).read_text("utf-8")
    elif hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text("utf-8")
    return [
        ln for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]


def load_pronoun_table(source: str | Path | TextIO | None = None) -> PronounTable:
    entries = {}
    for ln in _read_config_lines(source, "pronouns.tsv"):
        pron, person, number = ln.split("\t")
        entries[pron.lower()] = (Person(person), Number(number))
    return PronounTable(entries)


def load_case_rules(source: str | Path | TextIO | None = None) -> list[tuple[str, Case]]:
    rules = []
    for ln in _read_config_lines(source, "case_rules.tsv"):
        name, case = ln.split("\t")
        if name not in _CASE_TESTS:
            raise InputError(f"unknown case rule {name!r}")
        rules.append((name, Case(case)))
    return rules


def load_tam_rules(source: str | Path | TextIO | None = None) -> list[tuple[str, TamSlot]]:
    rules = []
    for ln in _read_config_lines(source, "tam_rules.tsv"):
        name, tam = ln.split("\t")
        if name not in _TAM_TESTS:
            raise InputError(f"unknown TAM rule {name!r}")
        rules.append((name, TamSlot(tam)))
    return rules


def read_conllu(lines: Iterable[str]) -> list[list[ConlluToken]]:
    """Parse CoNLL-U text into sentences. Comment lines, multiword-token
    ranges (1-2) and empty nodes (1.1) are skipped."""
    sentences = []
    tokens: list[ConlluToken] = []
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\n")
        if not line.strip():
            if tokens:
                sentences.append(tokens)
                tokens = []
            continue
        if line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise InputError(f"conllu line {lineno}: expected 10 columns, got {len(cols)}")
        if "-" in cols[0] or "." in cols[0]:
            continue
        try:
            tokens.append(
                ConlluToken(
                    id=int(cols[0]),
                    form=cols[1],
                    lemma=cols[2],
                    xpos=cols[4],
                    head=int(cols[6]) if cols[6] != "_" else 0,
                    deprel=cols[7],
                )
            )
        except ValueError:
            raise InputError(f"conllu line {lineno}: bad ID or HEAD field") from None
    if tokens:
        sentences.append(tokens)
    return sentences


def is_noun(token: ConlluToken) -> bool:
    return token.xpos in NOUN_TAGS


def is_verb(token: ConlluToken, sentence: list[ConlluToken] | None = None) -> bool:
    if token.xpos.startswith("VB"):
        return True
    if sentence is not None:
        return any(
            t.xpos == "MD" and (t.head == token.id or token.head == t.id)
            for t in sentence
        )
    return False


def noun_number(token: ConlluToken) -> Number:
    if not is_noun(token):
        raise NotANoun(f"{token.form!r} has tag {token.xpos}, not a noun tag")
    return Number.PLURAL if token.xpos in PLURAL_TAGS else Number.SINGULAR


def _children(token: ConlluToken, sentence: list[ConlluToken]) -> list[ConlluToken]:
    return [t for t in sentence if t.head == token.id]


def _head_of(token: ConlluToken, sentence: list[ConlluToken]) -> ConlluToken | None:
    for t in sentence:
        if t.id == token.head:
            return t
    return None


def _is_prep_object(token: ConlluToken, sentence: list[ConlluToken]) -> bool:
    if token.deprel in PREP_OBJECT_DEPRELS or token.deprel.startswith("obl:"):
        return True
    # UD marks the relation on the noun's `case` child (in/of/with ...)
    return any(c.deprel == "case" for c in _children(token, sentence))


def _is_subject(token: ConlluToken, sentence: list[ConlluToken]) -> bool:
    return token.deprel in SUBJECT_DEPRELS


def _is_ergative_subject(token: ConlluToken, sentence: list[ConlluToken]) -> bool:
    if not _is_subject(token, sentence):
        return False
    head = _head_of(token, sentence)
    return head is not None and head.xpos in ("VBD", "VBN")


def _is_direct_object(token: ConlluToken, sentence: list[ConlluToken]) -> bool:
    return token.deprel in DIRECT_OBJECT_DEPRELS


_CASE_TESTS = {
    "prep_object": _is_prep_object,
    "ergative_subject": _is_ergative_subject,
    "subject": _is_subject,
    "direct_object": _is_direct_object,
    "default": lambda token, sentence: True,
}

_DEFAULT_CASE_RULES: list[tuple[str, Case]] | None = None
_DEFAULT_TAM_RULES: list[tuple[str, TamSlot]] | None = None
_DEFAULT_PRONOUNS: PronounTable | None = None


def default_case_rules() -> list[tuple[str, Case]]:
    global _DEFAULT_CASE_RULES
    if _DEFAULT_CASE_RULES is None:
        _DEFAULT_CASE_RULES = load_case_rules()
    return _DEFAULT_CASE_RULES


def default_tam_rules() -> list[tuple[str, TamSlot]]:
    global _DEFAULT_TAM_RULES
    if _DEFAULT_TAM_RULES is None:
        _DEFAULT_TAM_RULES = load_tam_rules()
    return _DEFAULT_TAM_RULES


def default_pronoun_table() -> PronounTable:
    global _DEFAULT_PRONOUNS
    if _DEFAULT_PRONOUNS is None:
        _DEFAULT_PRONOUNS = load_pronoun_table()
    return _DEFAULT_PRONOUNS


def noun_case(
    token: ConlluToken,
    sentence: list[ConlluToken],
    rules: list[tuple[str, Case]] | None = None,
) -> Case:
    """Ordered rule evaluation over the dependency graph, first match wins."""
    if not is_noun(token):
        raise NotANoun(f"{token.form!r} has tag {token.xpos}, not a noun tag")
    for name, case in rules or default_case_rules():
        if _CASE_TESTS[name](token, sentence):
            if name == "default":
                log.debug("noun %r: case defaulted to %s", token.form, case.value)
            return case
    log.debug("noun %r: no case rule matched, defaulting to direct", token.form)
    return Case.DIRECT


def _modal_of(verb: ConlluToken, sentence: list[ConlluToken]) -> ConlluToken | None:
    for t in sentence:
        if t.xpos == "MD" and (t.head == verb.id or verb.head == t.id):
            return t
    return None


def _test_md_will(verb, sentence):
    md = _modal_of(verb, sentence)
    return md is not None and md.form.lower() in ("will", "shall", "'ll", "wo")


def _test_md_other(verb, sentence):
    md = _modal_of(verb, sentence)
    return md is not None


def _test_to_infinitive(verb, sentence):
    return any(
        c.xpos == "TO" or (c.form.lower() == "to" and c.deprel in ("mark", "aux"))
        for c in _children(verb, sentence)
    )


def _test_past_tag(verb, sentence):
    return verb.xpos == "VBD"


def _test_present_tag(verb, sentence):
    return verb.xpos in ("VBZ", "VBP")


def _test_bare_no_subject(verb, sentence):
    if verb.xpos != "VB":
        return False
    return not any(t.deprel in SUBJECT_DEPRELS for t in _children(verb, sentence))


_TAM_TESTS = {
    "md_will": _test_md_will,
    "md_other": _test_md_other,
    "to_infinitive": _test_to_infinitive,
    "past_tag": _test_past_tag,
    "present_tag": _test_present_tag,
    "bare_no_subject": _test_bare_no_subject,
    "default": lambda verb, sentence: True,
}


def _find_subject(verb: ConlluToken, sentence: list[ConlluToken]) -> ConlluToken | None:
    for t in sentence:
        if t.head == verb.id and t.deprel in SUBJECT_DEPRELS:
            return t
    return None


def verb_factors(
    verb: ConlluToken,
    sentence: list[ConlluToken],
    pronouns: PronounTable | None = None,
    tam_rules: list[tuple[str, TamSlot]] | None = None,
) -> EnglishVerbFactors:
    """Number from the subject, person from the pronoun list, TAM from
    the ordered tag-pattern rules."""
    if not is_verb(verb, sentence):
        raise NotAVerb(f"{verb.form!r} has tag {verb.xpos}, not a verb")
    pronouns = pronouns or default_pronoun_table()

    number = Number.SINGULAR
    person = Person.THIRD
    subject = _find_subject(verb, sentence)
    if subject is None:
        log.debug("verb %r: no subject found, defaulting to sg/3", verb.form)
    else:
        pron = pronouns.lookup(subject.form)
        if pron is not None:
            person, number = pron
        elif is_noun(subject):
            number = noun_number(subject)
        else:
            log.debug(
                "verb %r: subject %r is neither pronoun nor noun, defaulting",
                verb.form, subject.form,
            )

    tam = TamSlot.PRESENT_HABITUAL
    for name, slot in tam_rules or default_tam_rules():
        if _TAM_TESTS[name](verb, sentence):
            if name == "default":
                log.debug("verb %r: TAM defaulted to %s", verb.form, slot.value)
            tam = slot
            break
    return EnglishVerbFactors(number, person, tam)


# --- English surface synthesis (for the surface-only dictionary) ---

_SIBILANT_ENDINGS = ("s", "x", "z", "ch", "sh")
_VOWELS = "aeiou"

_NOUN_EXC: dict[str, str] | None = None
_VERB_EXC: dict[str, tuple[str | None, str]] | None = None


def _noun_exceptions() -> dict[str, str]:
    global _NOUN_EXC
    if _NOUN_EXC is None:
        _NOUN_EXC = {}
        for ln in _read_config_lines(None, "noun_plural_exceptions.tsv"):
            sg, pl = ln.split("\t")
            _NOUN_EXC[sg] = pl
    return _NOUN_EXC


def _verb_exceptions() -> dict[str, tuple[str | None, str]]:
    global _VERB_EXC
    if _VERB_EXC is None:
        _VERB_EXC = {}
        for ln in _read_config_lines(None, "verb_exceptions.tsv"):
            root, third, past = ln.split("\t")
            _VERB_EXC[root] = (None if third == "-" else third, past)
    return _VERB_EXC


def _add_s(root: str) -> str:
    if root.endswith(_SIBILANT_ENDINGS):
        return root + "es"
    if root.endswith("y") and len(root) > 1 and root[-2] not in _VOWELS:
        return root[:-1] + "ies"
    return root + "s"


def english_noun_surface(root: str, number: Number) -> str:
    """Inflect an English noun lemma: identity for singular, exception
    list then orthographic rules for plural."""
    if number is Number.SINGULAR:
        return root
    exc = _noun_exceptions().get(root.lower())
    if exc is not None:
        return exc
    return _add_s(root)


def english_verb_surface(root: str, factors: EnglishVerbFactors) -> str:
    """Inflect an English verb lemma for the given factors.

    Future and modal forms are periphrastic ("will walk"); downstream
    corpus emission splits them into separate tokens.
    """
    tam = factors.tam
    if tam is TamSlot.INFINITIVE:
        return "to " + root
    if tam is TamSlot.FUTURE:
        return "will " + root
    if tam is TamSlot.MODAL_SUBJUNCTIVE:
        return "would " + root
    if tam is TamSlot.IMPERATIVE:
        return root
    if tam is TamSlot.PAST_PERFECTIVE:
        exc = _verb_exceptions().get(root.lower())
        if exc is not None:
            return exc[1]
        if root.endswith("e"):
            return root + "d"
        if root.endswith("y") and len(root) > 1 and root[-2] not in _VOWELS:
            return root[:-1] + "ied"
        return root + "ed"
    # present habitual
    if factors.person is Person.THIRD and factors.number is Number.SINGULAR:
        exc = _verb_exceptions().get(root.lower())
        if exc is not None and exc[0] is not None:
            return exc[0]
        return _add_s(root)
    return root


def annotate_sentence(
    sentence: list[ConlluToken],
    mode: str = "both",
    pronouns: PronounTable | None = None,
    case_rules: list[tuple[str, Case]] | None = None,
    tam_rules: list[tuple[str, TamSlot]] | None = None,
) -> list[tuple[str, list[str]]]:
    """Annotate one sentence: (token string, factor values) per token.

    Nouns yield lemma + [number, case]; verbs lemma + [number, person,
    tam]; everything else the surface form with null factors. The caller
    pads widths (factor normalization) before emission.
    """
    if mode not in ("noun", "verb", "both"):
        raise InputError(f"bad annotation mode {mode!r}")
    out = []
    for token in sentence:
        if mode in ("noun", "both") and is_noun(token):
            number = noun_number(token)
            case = noun_case(token, sentence, case_rules)
            out.append((token.lemma or token.form, [number.value, case.value]))
        elif mode in ("verb", "both") and token.xpos.startswith("VB"):
            vf = verb_factors(token, sentence, pronouns, tam_rules)
            out.append(
                (token.lemma or token.form,
                 [vf.number.value, vf.person.value, vf.tam.value])
            )
        else:
            out.append((token.form, []))
    return out
