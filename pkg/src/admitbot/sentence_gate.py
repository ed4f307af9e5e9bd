"""Sentence validity gate.

A question must contain a noun (a pronoun counts) and a verb before the
matcher sees it. Tags come from a small curated lexicon, with suffix
heuristics for words the lexicon does not know. Deliberately strict:
verbless questions are rejected even when a human would accept them.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from . import matcher

TAGS = ("noun", "verb", "pronoun", "other")

_NOUN_SUFFIXES = ("tion", "ment", "ness", "ity", "er", "or")
_VERB_SUFFIXES = ("ize", "ise", "ify", "ate", "ing", "ed")


class LexiconError(Exception):
    pass


@dataclass
class PosLexicon:
    entries: dict[str, frozenset[str]]
    source_path: str


@dataclass
class GateReport:
    tokens: list[str]
    tags: list[frozenset[str]]
    has_noun: bool
    has_verb: bool
    valid: bool


def load_lexicon(path: str | Path) -> PosLexicon:
    """TSV of word<TAB>tag[,tag...]; lowercase keys, known tags only."""
    lex_path = Path(path)
    try:
        text = lex_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise LexiconError(f"cannot read lexicon {lex_path}: {exc}") from None
    entries: dict[str, frozenset[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise LexiconError(f"{lex_path.name}:{lineno}: expected word<TAB>tags")
        word, tag_field = parts[0].strip().lower(), parts[1].strip()
        tags = frozenset(t.strip() for t in tag_field.split(","))
        bad = tags - set(TAGS)
        if not word or bad:
            raise LexiconError(f"{lex_path.name}:{lineno}: bad entry {line!r}")
        entries[word] = entries.get(word, frozenset()) | tags
    if not entries:
        raise LexiconError(f"lexicon {lex_path} is empty")
    return PosLexicon(entries=entries, source_path=str(lex_path))


def _suffix_tag(word: str) -> frozenset[str]:
    for suffix in _NOUN_SUFFIXES:
        if len(word) > len(suffix) and word.endswith(suffix):
            return frozenset({"noun"})
    for suffix in _VERB_SUFFIXES:
        if len(word) > len(suffix) and word.endswith(suffix):
            return frozenset({"verb"})
    return frozenset({"other"})


def tag(tokens: list[str], lexicon: PosLexicon) -> list[frozenset[str]]:
    """Lexicon lookup per token; suffix heuristics for unknown words."""
    return [lexicon.entries.get(token) or _suffix_tag(token) for token in tokens]


def validate(sentence: str, lexicon: PosLexicon) -> GateReport:
    """Total and deterministic; never raises on any input."""
    tokens = matcher.normalize(sentence).tokens
    tags = tag(tokens, lexicon)
    has_noun = any("noun" in t or "pronoun" in t for t in tags)
    has_verb = any("verb" in t for t in tags)
    return GateReport(
        tokens=tokens,
        tags=tags,
        has_noun=has_noun,
        has_verb=has_verb,
        valid=has_noun and has_verb,
    )
