"""Candidate query generation.

Three methods: nearest embedding words used verbatim (M1), an LLM
prompted with the query plus its embedding neighbors (M2), and an LLM
prompted with the query plus the dataset's own topic keywords (M3).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources

from .corpus import QueryTopic
from .embeddings import EmbeddingStore
from .errors import InapplicableMethodError, ResponseParseError

PROMPT_RESOURCE = "prompt_v1.txt"

_NUMBERED_RE = re.compile(r"^\d+[.)]\s*(.+)$")
_BULLETED_RE = re.compile(r"^[-*•]\s*(.+)$")
_SENTENCE_END = (".", "!", "?", ":")


class Method(str, Enum):
    M1 = "m1-embedding"
    M2 = "m2-llm-similar"
    M3 = "m3-llm-keywords"


@dataclass(frozen=True)
class CandidateBatch:
    method: Method
    origin_query: str
    queries: tuple[str, ...]


def load_prompt_template() -> str:
    return resources.files("bqr.resources").joinpath(PROMPT_RESOURCE).read_text(encoding="utf-8")


def build_prompt(query: str, keywords: list[str] | tuple[str, ...]) -> str:
    return load_prompt_template().format(query=query, keywords=", ".join(keywords))


def _strip_quotes(text: str) -> str:
    text = text.strip()
    for quote in ('"', "'", "`"):
        if len(text) >= 2 and text.startswith(quote) and text.endswith(quote):
            return text[1:-1].strip()
    return text


def parse_query_list(text: str) -> list[str]:
    """Extract a query list from an LLM response.

    Numbered ("1. q") or bulleted ("- q") lines win when present; other
    lines are then ignored. Otherwise every bare line counts, except
    lines ending in sentence punctuation — a prose reply is not a list.
    Output is lowercased, deduplicated preserving first occurrence.
    """
    lines = [line.strip() for line in text.splitlines()]
    listed: list[str] = []
    for line in lines:
        m = _NUMBERED_RE.match(line) or _BULLETED_RE.match(line)
        if m:
            listed.append(m.group(1))
    if not listed:
        listed = [line for line in lines if line and not line.endswith(_SENTENCE_END)]
    seen: set[str] = set()
    queries: list[str] = []
    for item in listed:
        q = _strip_quotes(item).lower().strip()
        if q and q not in seen:
            seen.add(q)
            queries.append(q)
    if not queries:
        raise ResponseParseError("no queries found in response", raw=text)
    return queries


def _make_batch(method: Method, origin_query: str, queries: list[str], k: int) -> CandidateBatch:
    origin_norm = origin_query.strip().lower()
    seen: set[str] = set()
    kept: list[str] = []
    for q in queries:
        q = q.strip().lower()
        if q and q != origin_norm and q not in seen:
            seen.add(q)
            kept.append(q)
    return CandidateBatch(method=method, origin_query=origin_query, queries=tuple(kept[:k]))


def method1_embedding(store: EmbeddingStore, query: str, k: int = 10) -> CandidateBatch:
    """Nearest embedding words become the candidate queries verbatim."""
    neighbors = store.nearest_words(query, k)
    return _make_batch(Method.M1, query, [w for w, _ in neighbors], k)


def method2_llm_with_similar(
    provider, query: str, similar: list[str] | tuple[str, ...], k: int = 10
) -> CandidateBatch:
    """Prompt the LLM with the query and its embedding neighbors."""
    if not similar:
        raise InapplicableMethodError("method 2 needs a non-empty similar-word list")
    response = provider.complete(build_prompt(query, list(similar)))
    return _make_batch(Method.M2, query, parse_query_list(response), k)


def method3_llm_with_keywords(provider, topic: QueryTopic, k: int = 10) -> CandidateBatch:
    """Prompt the LLM with the topic and its dataset keywords."""
    if not topic.keywords:
        raise InapplicableMethodError(
            f"method 3 inapplicable: topic {topic.topic_id!r} has no keywords"
        )
    response = provider.complete(build_prompt(topic.title, list(topic.keywords)))
    return _make_batch(Method.M3, topic.title, parse_query_list(response), k)
