"""Evaluation kit tests: mean score, category breakdown, labelling."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from admitbot import evalkit
from admitbot.store import FeedbackEntry, LogEntry, NotFoundError, ValidationError

marks = st.lists(st.integers(min_value=1, max_value=5), max_size=40)
labels = st.lists(st.sampled_from(evalkit.CATEGORIES), max_size=60)


def feedback(seq):
    return [FeedbackEntry(id=i + 1, mark=m) for i, m in enumerate(seq)]


def logs(seq):
    return [LogEntry(id=i + 1, question="q", answer="a", label=lab) for i, lab in enumerate(seq)]


# -- overall -------------------------------------------------------------------


def test_overall_empty_is_zero():
    assert evalkit.overall([]) == 0.0


def test_overall_simple_means():
    assert evalkit.overall(feedback([3, 4])) == 3.5
    assert evalkit.overall(feedback([2, 3, 3, 3])) == 2.75


@given(marks)
def test_overall_bounded_by_scale(seq):
    result = evalkit.overall(feedback(seq))
    if seq:
        assert 1.0 <= result <= 5.0
    else:
        assert result == 0.0


# -- breakdown ------------------------------------------------------------------


def test_breakdown_survey_counts_round_half_up():
    stats = evalkit.breakdown(
        logs(["irrelevant"] * 12 + ["no_response"] * 12 + ["poor_response"] * 8)
    )
    assert stats.total == 32
    assert stats.percentages == {
        "relevant": 0.0,
        "irrelevant": 37.5,
        "no_response": 37.5,
        "poor_response": 25.0,
    }


def test_breakdown_full_survey_counts():
    stats = evalkit.breakdown(
        logs(
            ["relevant"] * 3
            + ["irrelevant"] * 62
            + ["no_response"] * 61
            + ["poor_response"] * 31
        )
    )
    assert stats.total == 157
    assert stats.percentages["relevant"] == 1.91
    assert stats.percentages["irrelevant"] == 39.49
    assert stats.percentages["no_response"] == 38.85
    assert stats.percentages["poor_response"] == 19.75


def test_breakdown_single_label_is_hundred():
    stats = evalkit.breakdown(logs(["relevant"]))
    assert stats.percentages["relevant"] == 100.0
    assert stats.total == 1


def test_breakdown_empty():
    stats = evalkit.breakdown([])
    assert stats.total == 0
    assert all(v == 0.0 for v in stats.percentages.values())


def test_breakdown_skips_unlabeled():
    mixed = logs(["relevant"]) + [LogEntry(id=9, question="q", answer="a")]
    stats = evalkit.breakdown(mixed)
    assert stats.total == 1
    assert evalkit.unlabeled_count(mixed) == 1


def test_breakdown_schema_always_has_all_categories():
    stats = evalkit.breakdown(logs(["poor_response"]))
    assert set(stats.counts) == set(evalkit.CATEGORIES)
    assert set(stats.percentages) == set(evalkit.CATEGORIES)


@given(labels)
def test_breakdown_percentages_sum_to_hundred(seq):
    stats = evalkit.breakdown(logs(seq))
    if seq:
        assert sum(stats.percentages.values()) == pytest.approx(100.0, abs=0.02)
    assert stats.total == len(seq)
    assert sum(stats.counts.values()) == stats.total


@given(labels)
def test_breakdown_is_permutation_invariant(seq):
    stats = evalkit.breakdown(logs(seq))
    reversed_stats = evalkit.breakdown(logs(list(reversed(seq))))
    assert stats == reversed_stats


@given(labels, labels)
def test_breakdown_counts_are_additive(left, right):
    merged = evalkit.breakdown(logs(left + right))
    a = evalkit.breakdown(logs(left))
    b = evalkit.breakdown(logs(right))
    for category in evalkit.CATEGORIES:
        assert merged.counts[category] == a.counts[category] + b.counts[category]


# -- labelling ---------------------------------------------------------------------


def test_label_persists(store):
    store.append("log", {"question": "q", "answer": "a"})
    entry = evalkit.label(store, 1, "poor_response")
    assert entry.label == "poor_response"
    assert store.get("log", 1).label == "poor_response"


def test_label_overwrites(store):
    store.append("log", {"question": "q", "answer": "a"})
    evalkit.label(store, 1, "irrelevant")
    assert evalkit.label(store, 1, "relevant").label == "relevant"


def test_label_invalid_category(store):
    store.append("log", {"question": "q", "answer": "a"})
    with pytest.raises(ValidationError):
        evalkit.label(store, 1, "great")


def test_label_missing_log(store):
    with pytest.raises(NotFoundError):
        evalkit.label(store, 42, "relevant")


# -- report formatting ----------------------------------------------------------------


def test_format_report_alignment():
    stats = evalkit.breakdown(logs(["irrelevant"] * 12 + ["no_response"] * 12 + ["poor_response"] * 8))
    text = evalkit.format_report(stats, unlabeled=3)
    lines = text.splitlines()
    assert lines[0].split() == ["category", "count", "percent"]
    assert "irrelevant" in text and "37.50" in text
    assert "unlabeled" in lines[-1] and "3" in lines[-1]
    widths = {len(line) for line in lines[:-1]}
    assert len(widths) == 1  # columns line up
