"""Factored parallel corpus I/O and word-form dictionary injection.

Corpus format (bit-exact): UTF-8, LF line endings, tokens separated by
single spaces, factors by "|", no trailing whitespace. Dictionary
entries are appended as one-token pseudo-sentence pairs after the
original lines; the original prefix is never touched or reordered, and
a pair already present anywhere in the corpus is skipped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable

from .dictionary_builder import (
    FactoredToken,
    WordFormDictionary,
    normalize_factors,
    strip_to_surface,
)
from .errors import (
    LineCountMismatch,
    MalformedToken,
    RaggedFactorWidth,
    WidthIncompatible,
)

TokenLine = list[FactoredToken]


@dataclass
class ParallelCorpus:
    pairs: list[tuple[TokenLine, TokenLine]]

    def source_width(self) -> int | None:
        for src, _ in self.pairs:
            if src:
                return src[0].width
        return None

    def target_width(self) -> int | None:
        for _, tgt in self.pairs:
            if tgt:
                return tgt[0].width
        return None

    def source_lines(self) -> list[str]:
        return [render_line(src) for src, _ in self.pairs]

    def target_lines(self) -> list[str]:
        return [render_line(tgt) for _, tgt in self.pairs]


@dataclass
class InjectionReport:
    entries_offered: int
    entries_added: int
    duplicates_skipped: int
    normalization_applied: bool

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "entries_offered": self.entries_offered,
            "entries_added": self.entries_added,
            "duplicates_skipped": self.duplicates_skipped,
            "normalization_applied": self.normalization_applied,
        }


def render_line(tokens: TokenLine) -> str:
    return " ".join(t.render() for t in tokens)


def _parse_line(line: str, name: str, lineno: int) -> TokenLine:
    if line != line.rstrip():
        raise MalformedToken(f"{name}:{lineno}:{len(line.rstrip()) + 1}: trailing whitespace")
    if "\r" in line or "\t" in line:
        col = min(i for i, ch in enumerate(line) if ch in "\r\t") + 1
        raise MalformedToken(f"{name}:{lineno}:{col}: control character in line")
    if not line:
        return []
    tokens = []
    col = 1
    for raw in line.split(" "):
        if raw == "":
            raise MalformedToken(f"{name}:{lineno}:{col}: empty token (double space?)")
        parts = raw.split("|")
        if parts[0] == "":
            raise MalformedToken(f"{name}:{lineno}:{col}: token with empty surface")
        if any(p == "" for p in parts[1:]):
            raise MalformedToken(f"{name}:{lineno}:{col}: empty factor in {raw!r}")
        tokens.append(FactoredToken(parts[0], tuple(parts[1:])))
        col += len(raw) + 1
    return tokens


def _check_width(lines: list[TokenLine], name: str, auto_normalize: bool) -> list[TokenLine]:
    width: int | None = None
    first_at: tuple[int, int] | None = None
    for lineno, tokens in enumerate(lines, 1):
        col = 1
        for token in tokens:
            if width is None:
                width = token.width
            elif token.width != width:
                first_at = (lineno, col)
                break
            col += len(token.render()) + 1
        if first_at:
            break
    if first_at is None:
        return lines
    if not auto_normalize:
        raise RaggedFactorWidth(
            f"{name}:{first_at[0]}:{first_at[1]}: factor width differs from first token"
        )
    max_width = max(t.width for tokens in lines for t in tokens)
    return [normalize_factors(tokens, max_width) for tokens in lines]


def parse_factored_corpus(
    source: Iterable[str] | IO[str],
    target: Iterable[str] | IO[str],
    auto_normalize: bool = False,
    source_name: str = "source",
    target_name: str = "target",
) -> ParallelCorpus:
    """Parse parallel source/target streams into a validated corpus.

    The first violation is reported as name:line:column. Ragged factor
    widths are an error unless auto_normalize pads them out.
    """
    src_lines = [ln.rstrip("\n") for ln in source]
    tgt_lines = [ln.rstrip("\n") for ln in target]
    if len(src_lines) != len(tgt_lines):
        raise LineCountMismatch(
            f"{source_name} has {len(src_lines)} lines, {target_name} has {len(tgt_lines)}"
        )
    parsed_src = [_parse_line(ln, source_name, i) for i, ln in enumerate(src_lines, 1)]
    parsed_tgt = [_parse_line(ln, target_name, i) for i, ln in enumerate(tgt_lines, 1)]
    parsed_src = _check_width(parsed_src, source_name, auto_normalize)
    parsed_tgt = _check_width(parsed_tgt, target_name, auto_normalize)
    return ParallelCorpus(list(zip(parsed_src, parsed_tgt)))


def _entry_line(token: FactoredToken) -> TokenLine:
    # surface-only periphrastic forms ("will walk") become real tokens
    if token.width == 0 and " " in token.surface:
        return [FactoredToken(w) for w in token.surface.split()]
    return [token]


def inject(
    corpus: ParallelCorpus,
    dictionary: WordFormDictionary,
    mode: str = "factored",
) -> tuple[ParallelCorpus, InjectionReport]:
    """Append dictionary entries as pseudo-sentence pairs.

    Entries are width-normalized to the corpus (never the reverse: the
    original lines must stay byte-identical); an entry whose line pair
    already exists anywhere in the corpus is skipped.
    """
    if mode not in ("factored", "surface"):
        raise WidthIncompatible(f"bad injection mode {mode!r}")
    if mode == "surface":
        dictionary = strip_to_surface(dictionary)

    src_width = corpus.source_width()
    tgt_width = corpus.target_width()
    dict_src_width = max((e.source.width for e in dictionary.entries), default=0)
    dict_tgt_width = max((e.target.width for e in dictionary.entries), default=0)
    if src_width is None:
        src_width = dict_src_width
    if tgt_width is None:
        tgt_width = dict_tgt_width
    if dict_src_width > src_width or dict_tgt_width > tgt_width:
        raise WidthIncompatible(
            f"dictionary factors ({dict_src_width}/{dict_tgt_width}) exceed corpus "
            f"widths ({src_width}/{tgt_width}); widening the corpus would rewrite "
            "original lines"
        )

    existing = {
        (render_line(src), render_line(tgt)) for src, tgt in corpus.pairs
    }
    out_pairs = list(corpus.pairs)
    added = 0
    skipped = 0
    normalized = False
    for entry in dictionary.entries:
        src_tokens = _entry_line(entry.source)
        tgt_tokens = _entry_line(entry.target)
        if any(t.width != src_width for t in src_tokens):
            src_tokens = normalize_factors(src_tokens, src_width)
            normalized = True
        if any(t.width != tgt_width for t in tgt_tokens):
            tgt_tokens = normalize_factors(tgt_tokens, tgt_width)
            normalized = True
        key = (render_line(src_tokens), render_line(tgt_tokens))
        if key in existing:
            skipped += 1
            continue
        existing.add(key)
        out_pairs.append((src_tokens, tgt_tokens))
        added += 1
    report = InjectionReport(
        entries_offered=len(dictionary.entries),
        entries_added=added,
        duplicates_skipped=skipped,
        normalization_applied=normalized,
    )
    return ParallelCorpus(out_pairs), report


def emit_factored_corpus(corpus: ParallelCorpus, source: IO[str], target: IO[str]) -> None:
    """Write the corpus back out; parse(emit(c)) == c, byte for byte."""
    for src, tgt in corpus.pairs:
        source.write(render_line(src) + "\n")
        target.write(render_line(tgt) + "\n")


def validate_widths(corpus: ParallelCorpus) -> list[str]:
    """Return human-readable violations of the uniform-width invariant."""
    problems = []
    for side, width, lines in (
        ("source", corpus.source_width(), [src for src, _ in corpus.pairs]),
        ("target", corpus.target_width(), [tgt for _, tgt in corpus.pairs]),
    ):
        for lineno, tokens in enumerate(lines, 1):
            for token in tokens:
                if token.width != width:
                    problems.append(
                        f"{side}:{lineno}: token {token.render()!r} has width "
                        f"{token.width}, corpus width is {width}"
                    )
    return problems
