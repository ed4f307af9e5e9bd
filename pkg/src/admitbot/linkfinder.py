"""Fallback link search.

Ranks a local corpus of admissions pages against the user's question with
term-frequency scores weighted by log-scaled inverse document frequency,
and hands back the best links when the user was not satisfied by an answer.
No outbound network calls, ever.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from . import matcher


class CorpusError(Exception):
    pass


@dataclass
class LinkDoc:
    url: str
    title: str
    body: str


@dataclass
class ScoredLink:
    url: str
    score: float


@dataclass
class LinkIndex:
    docs: list[LinkDoc]
    doc_term_counts: list[Counter]
    term_doc_frequency: dict[str, int]


def load_corpus(path: str | Path) -> list[LinkDoc]:
    """JSONL of {url, title, body} documents."""
    corpus_path = Path(path)
    try:
        text = corpus_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusError(f"cannot read corpus {corpus_path}: {exc}") from None
    docs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            fields = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"{corpus_path.name}:{lineno}: invalid JSON ({exc.msg})") from None
        if not isinstance(fields, dict) or "url" not in fields:
            raise CorpusError(f"{corpus_path.name}:{lineno}: expected an object with a url")
        docs.append(
            LinkDoc(
                url=str(fields["url"]),
                title=str(fields.get("title", "")),
                body=str(fields.get("body", "")),
            )
        )
    return docs


def build_index(corpus: list[LinkDoc]) -> LinkIndex:
    """Tokenize every document and tabulate term counts and frequencies."""
    if not corpus:
        raise CorpusError("corpus must be nonempty")
    seen_urls = set()
    doc_term_counts = []
    term_doc_frequency: dict[str, int] = {}
    for doc in corpus:
        if not doc.url:
            raise CorpusError("document url must be nonempty")
        if doc.url in seen_urls:
            raise CorpusError(f"duplicate url {doc.url!r}")
        seen_urls.add(doc.url)
        counts = Counter(matcher.normalize(f"{doc.title} {doc.body}").tokens)
        doc_term_counts.append(counts)
        for term in counts:
            term_doc_frequency[term] = term_doc_frequency.get(term, 0) + 1
    return LinkIndex(
        docs=list(corpus),
        doc_term_counts=doc_term_counts,
        term_doc_frequency=term_doc_frequency,
    )


def search(query: str, index: LinkIndex, k: int = 3) -> list[ScoredLink]:
    """Best-scoring documents, at most k, ties kept in corpus order.

    Score per document is the sum over query tokens of
    tf(token, doc) * log(1 + N / df(token)); documents containing no query
    token are never returned.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    total_docs = len(index.docs)
    query_tokens = matcher.normalize(query).tokens
    scored = []
    for position, counts in enumerate(index.doc_term_counts):
        score = 0.0
        for token in query_tokens:
            tf = counts.get(token, 0)
            if tf:
                score += tf * math.log(1 + total_docs / index.term_doc_frequency[token])
        if score > 0.0:
            scored.append((position, score))
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return [ScoredLink(url=index.docs[i].url, score=s) for i, s in scored[:k]]
