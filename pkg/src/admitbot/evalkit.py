"""Evaluation kit.

Mean feedback score and the four-way breakdown of labelled chat logs
(relevant, irrelevant, no response, poor response) with two-decimal
percentages. Labelling itself is a human judgement applied through the
store; nothing here guesses categories.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

from .store import LOG_LABELS, FeedbackEntry, JsonlStore, LogEntry, ValidationError

CATEGORIES = LOG_LABELS


@dataclass
class CategoryStats:
    counts: dict[str, int]
    total: int
    percentages: dict[str, float]


def overall(feedbacks: list[FeedbackEntry]) -> float:
    """Arithmetic mean of the marks; 0.0 for no feedback at all."""
    if not feedbacks:
        return 0.0
    return sum(f.mark for f in feedbacks) / len(feedbacks)


def _percent(count: int, total: int) -> float:
    if total == 0:
        return 0.0
    exact = Decimal(count * 100) / Decimal(total)
    return float(exact.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def breakdown(logs: list[LogEntry]) -> CategoryStats:
    """Counts and half-up two-decimal percentages over the labelled logs.

    Unlabelled logs are excluded here; callers report them separately.
    """
    counts = {category: 0 for category in CATEGORIES}
    for log in logs:
        if log.label is not None:
            counts[log.label] += 1
    total = sum(counts.values())
    percentages = {c: _percent(counts[c], total) for c in CATEGORIES}
    return CategoryStats(counts=counts, total=total, percentages=percentages)


def unlabeled_count(logs: list[LogEntry]) -> int:
    return sum(1 for log in logs if log.label is None)


def label(store: JsonlStore, log_id: int, category: str) -> LogEntry:
    """Persist a category judgement on one log entry."""
    if category not in CATEGORIES:
        raise ValidationError(
            f"category must be one of {', '.join(CATEGORIES)}, got {category!r}"
        )
    return store.update("log", log_id, label=category)


def format_report(stats: CategoryStats, unlabeled: int | None = None) -> str:
    """Aligned text table of the breakdown, one row per category."""
    width = max(len(c) for c in CATEGORIES)
    lines = [f"{'category'.ljust(width)}  count  percent"]
    for category in CATEGORIES:
        lines.append(
            f"{category.ljust(width)}  {stats.counts[category]:>5d}  {stats.percentages[category]:>7.2f}"
        )
    lines.append(f"{'total'.ljust(width)}  {stats.total:>5d}  {100.0 if stats.total else 0.0:>7.2f}")
    if unlabeled is not None:
        lines.append(f"{'unlabeled'.ljust(width)}  {unlabeled:>5d}")
    return "\n".join(lines)
