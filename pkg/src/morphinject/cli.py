"""Command-line surface: one subcommand per pipeline stage.

Exit codes: 0 success, 1 input/validation error (one-line diagnostic on
stderr), 2 internal invariant violation. Outputs are written to a
temporary file and renamed, so no subcommand leaves partial output
behind. Set MORPHINJECT_DATA to a directory to override the packaged
default data files (noun_suffixes.tsv, verb_suffixes.tsv, pronouns.tsv,
case_rules.tsv, tam_rules.tsv).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import corpus_inject as ci
from . import dictionary_builder as db
from . import evaluation as ev
from . import noun_morph as nm
from . import source_factors as sf
from . import verb_morph as vm
from .errors import InputError

DATA_DIR_ENV = "MORPHINJECT_DATA"


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # input errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(1, f"error: {message}\n")


def _data_override(name: str) -> str | None:
    base = os.environ.get(DATA_DIR_ENV)
    if base:
        candidate = Path(base) / name
        if candidate.is_file():
            return str(candidate)
    return None


def _noun_table(path: str | None) -> nm.SuffixTable:
    path = path or _data_override("noun_suffixes.tsv")
    return nm.load_suffix_table(path) if path else nm.default_suffix_table()


def _verb_table(path: str | None) -> vm.VerbSuffixTable:
    path = path or _data_override("verb_suffixes.tsv")
    return vm.load_verb_suffix_table(path) if path else vm.default_verb_suffix_table()


def _pronouns(path: str | None) -> sf.PronounTable:
    path = path or _data_override("pronouns.tsv")
    return sf.load_pronoun_table(path) if path else sf.default_pronoun_table()


def _check_inputs(*paths: str | None) -> None:
    for p in paths:
        if p is not None and not Path(p).is_file():
            raise InputError(f"{p}: no such file")


def _named(path: str, fn):
    """Run a parse callable, prefixing its diagnostics with the file name."""
    try:
        return fn()
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def _write_atomic(path: str | None, text: str) -> None:
    _write_atomic_many([(path, text)])


def _write_atomic_many(outputs: list[tuple[str | None, str]]) -> None:
    """Write every file or none: all temps are staged before any rename."""
    staged: list[tuple[str, Path]] = []
    try:
        for path, text in outputs:
            if path is None:
                sys.stdout.write(text)
                continue
            target = Path(path)
            fd, tmp = tempfile.mkstemp(dir=target.parent or Path("."), prefix=target.name + ".")
            staged.append((tmp, target))
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
    except BaseException:
        for tmp, _ in staged:
            if os.path.exists(tmp):
                os.unlink(tmp)
        raise
    for tmp, target in staged:
        os.replace(tmp, target)


def _read_lines(path: str) -> list[str]:
    return Path(path).read_text("utf-8").splitlines()


def _emit_report(report_dict: dict, fmt: str, out: str | None) -> None:
    if fmt == "json":
        _write_atomic(out, json.dumps(report_dict, ensure_ascii=False, indent=2) + "\n")
    else:
        lines = []
        for key, value in report_dict.items():
            if isinstance(value, list) and value and isinstance(value[0], dict):
                for sub in value:
                    lines.append(f"{key}: " + ", ".join(f"{k}={v}" for k, v in sub.items()))
            else:
                lines.append(f"{key}: {value}")
        _write_atomic(out, "\n".join(lines) + "\n")


# --- subcommands ---

def cmd_classify(args) -> int:
    _check_inputs(args.lexicon)
    nouns = _named(args.lexicon, lambda: nm.parse_noun_lexicon(
        _read_lines(args.lexicon), bilingual=args.bilingual))
    lines = []
    for noun in nouns:
        cls = nm.classify_noun(noun.entry)
        prefix = f"{noun.english_root}\t" if args.bilingual else ""
        lines.append(f"{prefix}{noun.entry.hindi_root}\t{cls.value}")
    _write_atomic(args.out, "\n".join(lines) + "\n" if lines else "")
    return 0


def cmd_paradigm(args) -> int:
    _check_inputs(args.table)
    if args.verb:
        if not args.stem:
            raise InputError("--stem is required for verb paradigms")
        table = _verb_table(args.table)
        entry = vm.VerbLexEntry(args.stem, args.english or "")
        lines = [
            "\t".join(
                (
                    f.tam.value,
                    f.gender.value,
                    f.number.value,
                    f.person.value,
                    suffix if suffix is not None else "-",
                    surface,
                )
            )
            for f, suffix, surface in vm.verb_paradigm(entry, table)
        ]
    else:
        if not args.root or not args.gender:
            raise InputError("--root and --gender are required for noun paradigms")
        table = _noun_table(args.table)
        entry = nm.NounLexEntry(
            args.root,
            nm.Gender(args.gender),
            countable=not args.uncountable,
            class_override=nm.NounClass(args.noun_class) if args.noun_class else None,
        )
        lines = [
            "\t".join(
                (
                    row.number.value,
                    row.case.value,
                    row.suffix if row.suffix is not None else "-",
                    row.surface,
                )
            )
            for row in nm.noun_paradigm(entry, table)
        ]
    _write_atomic(args.out, "\n".join(lines) + "\n")
    return 0


_ANNOTATE_WIDTH = {"noun": 2, "verb": 3, "both": 3}


def cmd_annotate(args) -> int:
    _check_inputs(args.conllu, args.pronouns, args.case_rules, args.tam_rules)
    pronouns = _pronouns(args.pronouns)
    case_rules = sf.load_case_rules(args.case_rules or _data_override("case_rules.tsv"))
    tam_rules = sf.load_tam_rules(args.tam_rules or _data_override("tam_rules.tsv"))
    sentences = _named(args.conllu, lambda: sf.read_conllu(_read_lines(args.conllu)))
    width = _ANNOTATE_WIDTH[args.mode]
    out_lines = []
    for sentence in sentences:
        annotated = sf.annotate_sentence(sentence, args.mode, pronouns, case_rules, tam_rules)
        tokens = db.normalize_factors(
            [db.FactoredToken(surf, tuple(factors)) for surf, factors in annotated],
            width,
        )
        out_lines.append(ci.render_line(tokens))
    _write_atomic(args.out, "\n".join(out_lines) + "\n" if out_lines else "")
    return 0


def cmd_build_dict(args) -> int:
    _check_inputs(args.lexicon, args.table)
    if args.kind == "noun":
        lexicon = _named(args.lexicon, lambda: nm.parse_noun_lexicon(
            _read_lines(args.lexicon), bilingual=True))
        dictionary = db.build_noun_dict(lexicon, _noun_table(args.table))
    else:
        lexicon = _named(args.lexicon, lambda: vm.parse_verb_lexicon(_read_lines(args.lexicon)))
        dictionary = db.build_verb_dict(lexicon, _verb_table(args.table))
    if args.surface:
        dictionary = db.strip_to_surface(dictionary)
    _write_atomic(args.out, "\n".join(dictionary.to_lines()) + "\n" if dictionary.entries else "")
    if args.failures:
        payload = {
            "schema_version": 1,
            "failures": [
                {
                    "row": f.index,
                    "english_root": f.english_root,
                    "hindi_root": f.hindi_root,
                    "error": f.error,
                }
                for f in dictionary.failures
            ],
        }
        _write_atomic(args.failures, json.dumps(payload, ensure_ascii=False, indent=2) + "\n")
    if dictionary.failures:
        print(f"warning: {len(dictionary.failures)} lexicon rows failed", file=sys.stderr)
    return 0


def cmd_inject(args) -> int:
    _check_inputs(args.source, args.target, args.dict)
    with open(args.source, encoding="utf-8") as s, open(args.target, encoding="utf-8") as t:
        corpus = ci.parse_factored_corpus(
            s, t, auto_normalize=args.auto_normalize,
            source_name=args.source, target_name=args.target,
        )
    dictionary = _named(args.dict, lambda: db.parse_dictionary(_read_lines(args.dict)))
    out_corpus, report = ci.inject(corpus, dictionary, mode=args.mode)
    _write_atomic_many([
        (args.out_source, "".join(ln + "\n" for ln in out_corpus.source_lines())),
        (args.out_target, "".join(ln + "\n" for ln in out_corpus.target_lines())),
    ])
    _emit_report(report.to_dict(), args.format, args.report)
    return 0


def cmd_sparsity(args) -> int:
    _check_inputs(args.train_source, args.train_target, args.probe_source, args.probe_target)
    with open(args.train_source, encoding="utf-8") as s, open(args.train_target, encoding="utf-8") as t:
        train = ci.parse_factored_corpus(
            s, t, source_name=args.train_source, target_name=args.train_target
        )
    with open(args.probe_source, encoding="utf-8") as s, open(args.probe_target, encoding="utf-8") as t:
        probe_corpus = ci.parse_factored_corpus(
            s, t, source_name=args.probe_source, target_name=args.probe_target
        )
    probe = [
        (src_tok, tgt_tok)
        for src, tgt in probe_corpus.pairs
        for src_tok, tgt_tok in zip(src, tgt)
    ]
    report = ev.sparsity_report(train, probe, db.SCHEMES[args.scheme])
    _emit_report(report.to_dict(), args.format, args.out)
    return 0


def cmd_oov(args) -> int:
    _check_inputs(args.tokens, args.vocab)
    tokens = [t for ln in _read_lines(args.tokens) for t in ln.split()]
    vocab = ev.VocabSet.from_tokens(
        t for ln in _read_lines(args.vocab) for t in ln.split()
    )
    report = ev.oov_count(tokens, vocab)
    _emit_report(report.to_dict(), args.format, args.out)
    return 0


def cmd_bleu(args) -> int:
    _check_inputs(args.candidates, args.references)
    cands = [ln.split() for ln in _read_lines(args.candidates)]
    refs = [ln.split() for ln in _read_lines(args.references)]
    score = ev.bleu(cands, refs, smoothing=args.smoothing)
    _emit_report(score.to_dict(), args.format, args.out)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(
        prog="morphinject",
        description="Morphology generation and corpus injection for factored MT training data.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p):
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--jobs", type=int, default=1,
                       help="worker parallelism bound (output is byte-identical at any value)")

    p = sub.add_parser(
        "classify", help="predict noun inflection classes",
        description="Noun lexicon TSV: [english_root TAB] hindi_root TAB gender (m|f) "
                    "TAB countable (1|0) [TAB class override A-E]. Output: root TAB class.",
    )
    p.add_argument("--lexicon", required=True)
    p.add_argument("--bilingual", action="store_true",
                   help="lexicon rows start with an english_root column")
    add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser(
        "paradigm", help="generate one word's inflection paradigm",
        description="Nouns: 4 rows (number, case, suffix, surface) in sg-dir, sg-obl, "
                    "pl-dir, pl-obl order. Verbs: one row per grid cell "
                    "(tam, gender, number, person, suffix, surface).",
    )
    p.add_argument("--root", help="Hindi noun root")
    p.add_argument("--gender", choices=["m", "f"])
    p.add_argument("--uncountable", action="store_true",
                   help="mass/abstract noun (class A)")
    p.add_argument("--noun-class", choices=[c.value for c in nm.NounClass],
                   help="override the predicted class")
    p.add_argument("--verb", action="store_true", help="generate a verb paradigm")
    p.add_argument("--stem", help="Hindi verb stem (infinitive minus ना)")
    p.add_argument("--english", help="English lemma (informational)")
    p.add_argument("--table", help="suffix table TSV override")
    add_common(p)
    p.set_defaults(func=cmd_paradigm)

    p = sub.add_parser(
        "annotate", help="factor-annotate English CoNLL-U",
        description="Input: 10-column CoNLL-U, blank-line sentence separation, "
                    "# comments ignored. Output: one factored line per sentence; nouns "
                    "lemma|number|case, verbs lemma|number|person|tam, others padded "
                    "with null to a uniform width.",
    )
    p.add_argument("--conllu", required=True)
    p.add_argument("--mode", choices=["noun", "verb", "both"], default="both")
    p.add_argument("--pronouns", help="pronoun TSV (pronoun, person, number)")
    p.add_argument("--case-rules", help="ordered case rule TSV (rule, case)")
    p.add_argument("--tam-rules", help="ordered TAM rule TSV (rule, tam)")
    add_common(p)
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser(
        "build-dict", help="build a word-form dictionary from a bilingual lexicon",
        description="Noun lexicon TSV: english_root, hindi_root, gender (m|f), countable "
                    "(1|0), optional class override. Verb lexicon TSV: english_root, "
                    "hindi_stem, optional tam[:g][:num][:pers]=surface overrides. Output: "
                    "one entry per line, source TAB target, factors joined with '|'.",
    )
    p.add_argument("--kind", choices=["noun", "verb"], required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--table", help="suffix table TSV override")
    p.add_argument("--surface", action="store_true",
                   help="strip to surface-only entries (phrase-based variant)")
    p.add_argument("--failures", help="write per-row failure report JSON here")
    add_common(p)
    p.set_defaults(func=cmd_build_dict)

    p = sub.add_parser(
        "inject", help="append dictionary entries to a parallel corpus",
        description="Corpus files: one sentence per line, tokens space-separated, "
                    "factors '|'-separated, LF endings, no trailing whitespace. Entries "
                    "are appended after the original lines; exact duplicates are skipped.",
        epilog="JSON report keys: schema_version, entries_offered, entries_added, "
               "duplicates_skipped, normalization_applied.",
    )
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--dict", required=True)
    p.add_argument("--mode", choices=["factored", "surface"], default="factored")
    p.add_argument("--strategy", choices=["single-token"], default="single-token",
                   help="injection strategy (reserved for alternatives; entries are "
                        "appended as one-token pseudo-sentence pairs)")
    p.add_argument("--auto-normalize", action="store_true",
                   help="pad ragged corpus factor widths instead of failing")
    p.add_argument("--out-source", required=True)
    p.add_argument("--out-target", required=True)
    p.add_argument("--report", help="write the injection report here (default: stdout)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_inject)

    p = sub.add_parser(
        "sparsity", help="translation/generation-step coverage report",
        description="Train and probe are factored parallel corpora; --scheme picks the "
                    "factor layout (noun: root|number|case -> surface|root|suffix; verb: "
                    "root|number|person|tam -> surface|root|suffix; surface: bare tokens).",
        epilog="JSON report keys: schema_version, translation_steps, generation_steps; "
               "each step has step, seen, unseen, unseen_tuples.",
    )
    p.add_argument("--train-source", required=True)
    p.add_argument("--train-target", required=True)
    p.add_argument("--probe-source", required=True)
    p.add_argument("--probe-target", required=True)
    p.add_argument("--scheme", choices=sorted(db.SCHEMES), required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    add_common(p)
    p.set_defaults(func=cmd_sparsity)

    p = sub.add_parser(
        "oov", help="out-of-vocabulary count",
        description="Both files are whitespace-tokenized as-is. Use training source "
                    "text as --vocab for pre-translation coverage, or training target "
                    "text with translation output as --tokens for output OOV.",
        epilog="JSON report keys: schema_version, total_tokens, oov_tokens, oov_types.",
    )
    p.add_argument("--tokens", required=True)
    p.add_argument("--vocab", required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    add_common(p)
    p.set_defaults(func=cmd_oov)

    p = sub.add_parser(
        "bleu", help="corpus-level BLEU-4",
        description="One whitespace-tokenized sentence per line; single reference per "
                    "candidate, lines aligned by number.",
        epilog="JSON report keys: schema_version, score, precisions, brevity_penalty, "
               "candidate_length, reference_length.",
    )
    p.add_argument("--candidates", required=True)
    p.add_argument("--references", required=True)
    p.add_argument("--smoothing", action="store_true")
    p.add_argument("--format", choices=["text", "json"], default="text")
    add_common(p)
    p.set_defaults(func=cmd_bleu)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # internal invariant violation
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
