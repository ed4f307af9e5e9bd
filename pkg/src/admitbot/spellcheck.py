"""Spelling gate.

Flags question tokens missing from a plain word-list dictionary and offers
up to five nearby dictionary words as corrections. Advisory only: the user
rewrites the question themselves, nothing is auto-corrected.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from . import matcher

MAX_SUGGESTIONS = 5
SUGGESTION_RADIUS = 2


class DictionaryError(Exception):
    pass


@dataclass
class Dictionary:
    words: set[str]
    source_path: str


@dataclass
class SpellingIssue:
    word: str
    position: int
    suggestions: list[str]


def load_dictionary(path: str | Path) -> Dictionary:
    """One word per line, UTF-8; blanks skipped, case folded."""
    dict_path = Path(path)
    try:
        text = dict_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DictionaryError(f"cannot read dictionary {dict_path}: {exc}") from None
    words = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        word = raw.strip().lower()
        if not word:
            continue
        if word.split() != [word]:
            raise DictionaryError(
                f"{dict_path.name}:{lineno}: dictionary entries must be single words"
            )
        words.add(word)
    if not words:
        raise DictionaryError(f"dictionary {dict_path} is empty")
    return Dictionary(words=words, source_path=str(dict_path))


def edit_distance(a: str, b: str) -> int:
    """Minimum insertions + deletions + substitutions turning a into b."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ch_a in enumerate(a, start=1):
        current = [i]
        for j, ch_b in enumerate(b, start=1):
            cost = 0 if ch_a == ch_b else 1
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost))
        previous = current
    return previous[-1]


def suggest(word: str, dictionary: Dictionary) -> list[str]:
    """Dictionary words within the radius, nearest first, then alphabetical."""
    # Candidates further than the radius in length cannot be within it.
    scored = []
    for candidate in dictionary.words:
        if abs(len(candidate) - len(word)) > SUGGESTION_RADIUS:
            continue
        distance = edit_distance(word, candidate)
        if distance <= SUGGESTION_RADIUS:
            scored.append((distance, candidate))
    scored.sort()
    return [candidate for _, candidate in scored[:MAX_SUGGESTIONS]]


def check(sentence: str, dictionary: Dictionary) -> list[SpellingIssue]:
    """One issue per token missing from the dictionary; numbers are exempt.

    An empty list means the sentence may proceed to the next gate.
    """
    issues = []
    for position, token in enumerate(matcher.normalize(sentence).tokens):
        if token.isdigit():
            continue
        if token in dictionary.words:
            continue
        issues.append(
            SpellingIssue(word=token, position=position, suggestions=suggest(token, dictionary))
        )
    return issues
