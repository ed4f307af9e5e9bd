"""Answer selection core.

Two stages: count each stored entry's keywords in the question and take a
unique winner; on a tie (or no keywords at all) fall back to Jaro-Winkler
proximity between the question and every stored question, with a floor
below which the engine admits it has no answer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .store import InfoEntry

_TOKEN_RE = re.compile(r"[a-z0-9']+")

OUTCOME_ANSWER = "answer"
OUTCOME_NO_ANSWER = "no_answer"
STAGE_KEYWORD = "keyword"
STAGE_SIMILARITY = "similarity"


@dataclass
class NormalizedText:
    original: str
    tokens: list[str]
    joined: str


@dataclass
class SimilarityParams:
    """Knobs for the proximity stage."""

    prefix_weight: float = 0.1
    max_prefix: int = 4
    no_answer_threshold: float = 0.55

    def __post_init__(self):
        if not 0.0 < self.prefix_weight <= 0.25:
            raise ValueError("prefix_weight must be in (0, 0.25]")
        if self.max_prefix < 0:
            raise ValueError("max_prefix must be nonnegative")
        if not 0.0 <= self.no_answer_threshold <= 1.0:
            raise ValueError("no_answer_threshold must be in [0, 1]")


@dataclass
class MatchResult:
    outcome: str
    stage: str
    keyword_counts: list[int]
    entry_id: int | None = None
    answer: str | None = None
    proximities: list[float] | None = field(default=None)


def normalize(text: str) -> NormalizedText:
    """Lowercase and tokenize; anything outside [a-z0-9'] separates tokens.

    Apostrophes survive only inside a word, so quoting never leaves stray
    tokens behind.
    """
    tokens = []
    for raw in _TOKEN_RE.findall(text.lower()):
        token = raw.strip("'")
        if token:
            tokens.append(token)
    return NormalizedText(original=text, tokens=tokens, joined=" ".join(tokens))


def keyword_counts(query: NormalizedText, entries: list["InfoEntry"]) -> list[int]:
    """Per entry, how many of its distinct keywords occur as query tokens."""
    if not entries:
        raise ValueError("entries must be nonempty")
    present = set(query.tokens)
    return [sum(1 for k in set(e.keywords) if k in present) for e in entries]


def find_largest_keyword(counts: list[int]) -> int:
    """Index of the maximum count; ties resolve to the smallest index."""
    if not counts:
        raise ValueError("counts must be nonempty")
    return counts.index(max(counts))


def same_no_of_keywords(counts: list[int]) -> bool:
    """True when a positive maximum is shared by two or more entries."""
    if not counts:
        raise ValueError("counts must be nonempty")
    top = max(counts)
    return top > 0 and counts.count(top) >= 2


def no_keywords(counts: list[int]) -> bool:
    if not counts:
        raise ValueError("counts must be nonempty")
    return all(c == 0 for c in counts)


def jaro(a: str, b: str) -> float:
    """Jaro similarity in [0, 1].

    Characters match greedily left to right within a window of
    max(len//2 - 1, 0) around each position, each position used once;
    t is half the number of matched characters whose relative order
    differs between the two strings.
    """
    if a == b:
        return 1.0
    len_a, len_b = len(a), len(b)
    if len_a == 0 or len_b == 0:
        return 0.0
    window = max(max(len_a, len_b) // 2 - 1, 0)

    matched_a = [False] * len_a
    matched_b = [False] * len_b
    m = 0
    for i, ch in enumerate(a):
        lo = max(0, i - window)
        hi = min(len_b, i + window + 1)
        for j in range(lo, hi):
            if not matched_b[j] and b[j] == ch:
                matched_a[i] = True
                matched_b[j] = True
                m += 1
                break
    if m == 0:
        return 0.0

    half_transpositions = 0
    j = 0
    for i in range(len_a):
        if not matched_a[i]:
            continue
        while not matched_b[j]:
            j += 1
        if a[i] != b[j]:
            half_transpositions += 1
        j += 1
    t = half_transpositions / 2.0

    return (m / len_a + m / len_b + (m - t) / m) / 3.0


def jaro_winkler(a: str, b: str, params: SimilarityParams | None = None) -> float:
    """Jaro similarity with a bonus for a common prefix (capped length)."""
    if params is None:
        params = SimilarityParams()
    j = jaro(a, b)
    prefix = 0
    for ch_a, ch_b in zip(a, b):
        if ch_a != ch_b or prefix == params.max_prefix:
            break
        prefix += 1
    return j + prefix * params.prefix_weight * (1.0 - j)


def find_largest_percent(scores: list[float]) -> int:
    """Index of the maximum score; ties resolve to the smallest index."""
    if not scores:
        raise ValueError("scores must be nonempty")
    return scores.index(max(scores))


def respond(
    question: str, entries: list["InfoEntry"], params: SimilarityParams | None = None
) -> MatchResult:
    """Pick an answer for the question, or admit there is none.

    Stage one counts keywords; a unique positive maximum wins outright.
    Otherwise every stored question is scored by Jaro-Winkler proximity
    against the user's question (keywords ignored), and the best entry
    wins only if its proximity clears the no-answer threshold.
    """
    if not entries:
        raise ValueError("entries must be nonempty")
    if params is None:
        params = SimilarityParams()

    query = normalize(question)
    counts = keyword_counts(query, entries)

    if not no_keywords(counts) and not same_no_of_keywords(counts):
        winner = entries[find_largest_keyword(counts)]
        return MatchResult(
            outcome=OUTCOME_ANSWER,
            stage=STAGE_KEYWORD,
            keyword_counts=counts,
            entry_id=winner.id,
            answer=winner.answer,
        )

    proximities = [
        jaro_winkler(query.joined, normalize(e.question).joined, params)
        for e in entries
    ]
    best = find_largest_percent(proximities)
    if proximities[best] >= params.no_answer_threshold:
        winner = entries[best]
        return MatchResult(
            outcome=OUTCOME_ANSWER,
            stage=STAGE_SIMILARITY,
            keyword_counts=counts,
            entry_id=winner.id,
            answer=winner.answer,
            proximities=proximities,
        )
    return MatchResult(
        outcome=OUTCOME_NO_ANSWER,
        stage=STAGE_SIMILARITY,
        keyword_counts=counts,
        proximities=proximities,
    )
