"""Corpus and query-topic storage.

Loads JSON-Lines corpora whose documents carry per-dimension attribute
labels (geography, gender, ...), serves them read-only, and turns
document subsets into normalized attribute distributions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import CorpusFormatError, DuplicateDocIdError, UnknownDimensionError

UNLABELED_CATEGORY = "⟂unlabeled"


class UnlabeledPolicy(str, Enum):
    """How documents without a label for a dimension enter a distribution."""

    EXCLUDE = "exclude-unlabeled"
    AS_CATEGORY = "unlabeled-as-category"


@dataclass(frozen=True)
class Document:
    """One corpus unit: text plus per-dimension attribute labels."""

    doc_id: str
    title: str = ""
    url: str | None = None
    text: str = ""
    attributes: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    quality: float | None = None

    def labels(self, dimension: str) -> tuple[str, ...]:
        return tuple(self.attributes.get(dimension, ()))


@dataclass(frozen=True)
class QueryTopic:
    """A query topic row: id, title (the query text), keywords, relevant docs."""

    topic_id: str
    title: str
    keywords: tuple[str, ...] = ()
    relevant_docs: tuple[str, ...] = ()


@dataclass(frozen=True)
class Distribution:
    """Normalized category -> probability map over one attribute dimension."""

    probs: Mapping[str, float]
    support_count: int
    policy: UnlabeledPolicy = UnlabeledPolicy.EXCLUDE

    @property
    def empty(self) -> bool:
        return self.support_count == 0


class CorpusHandle:
    """Immutable view over a validated corpus; safe for concurrent reads."""

    def __init__(self, documents: Sequence[Document], dimensions: Sequence[str]):
        self._docs: dict[str, Document] = {}
        for doc in documents:
            if doc.doc_id in self._docs:
                raise DuplicateDocIdError(f"duplicate doc_id {doc.doc_id!r}")
            self._docs[doc.doc_id] = doc
        self._dimensions = tuple(dimensions)

    def __len__(self) -> int:
        return len(self._docs)

    def __iter__(self) -> Iterator[Document]:
        return iter(self._docs.values())

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._docs

    @property
    def dimensions(self) -> tuple[str, ...]:
        return self._dimensions

    def get(self, doc_id: str) -> Document:
        try:
            return self._docs[doc_id]
        except KeyError:
            raise KeyError(f"unknown doc_id {doc_id!r}") from None

    def documents(self, doc_ids: Iterable[str]) -> list[Document]:
        return [self.get(d) for d in doc_ids]

    def distribution(
        self,
        doc_ids: Iterable[str],
        dimension: str,
        policy: UnlabeledPolicy = UnlabeledPolicy.EXCLUDE,
    ) -> Distribution:
        """Attribute distribution over the referenced documents."""
        return attribute_distribution(
            self.documents(doc_ids), dimension, policy, schema=self._dimensions
        )


def _parse_attributes(raw: object, schema: Sequence[str], line_no: int) -> dict[str, tuple[str, ...]]:
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise CorpusFormatError(f"line {line_no}: attributes must be an object")
    out: dict[str, tuple[str, ...]] = {}
    for dim in schema:
        value = raw.get(dim)
        if value is None:
            continue
        if isinstance(value, str):
            value = [value]
        if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
            raise CorpusFormatError(
                f"line {line_no}: attribute {dim!r} must be a string or list of strings"
            )
        labels = tuple(v for v in value if v)
        if labels:
            out[dim] = labels
    return out


def _parse_document(obj: dict, schema: Sequence[str], line_no: int) -> Document:
    doc_id = obj.get("doc_id")
    if not isinstance(doc_id, str) or not doc_id:
        raise CorpusFormatError(f"line {line_no}: missing or empty doc_id")
    quality = obj.get("quality")
    if quality is not None:
        if not isinstance(quality, (int, float)) or not 0.0 <= float(quality) <= 1.0:
            raise CorpusFormatError(f"line {line_no}: quality must be a real in [0,1]")
        quality = float(quality)
    return Document(
        doc_id=doc_id,
        title=str(obj.get("title", "") or ""),
        url=obj.get("url"),
        text=str(obj.get("text", "") or ""),
        attributes=_parse_attributes(obj.get("attributes"), schema, line_no),
        quality=quality,
    )


def load_corpus(path: str | Path, schema: Sequence[str]) -> CorpusHandle:
    """Load a JSON-Lines corpus, one document object per line.

    Documents missing the attributes field are unlabeled in every
    dimension. Attributes outside `schema` are dropped (pageviews,
    replication and friends are never read by scoring).
    """
    path = Path(path)
    documents: list[Document] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"line {line_no}: malformed JSON ({exc.msg})") from exc
            if not isinstance(obj, dict):
                raise CorpusFormatError(f"line {line_no}: document must be an object")
            doc = _parse_document(obj, schema, line_no)
            if doc.doc_id in seen:
                raise DuplicateDocIdError(
                    f"line {line_no}: duplicate doc_id {doc.doc_id!r}"
                )
            seen.add(doc.doc_id)
            documents.append(doc)
    return CorpusHandle(documents, schema)


def load_schema(path: str | Path) -> list[str]:
    """Read the self-describing schema file: a JSON list of dimension names."""
    with Path(path).open(encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict) and "dimensions" in data:
        data = data["dimensions"]
    if not isinstance(data, list) or not all(isinstance(d, str) for d in data):
        raise CorpusFormatError("schema file must be a JSON list of dimension names")
    return list(data)


def load_queries(path: str | Path, corpus: CorpusHandle | None = None) -> list[QueryTopic]:
    """Load JSON-Lines query topics in file order.

    Keywords are trimmed and lowercased. When `corpus` is given,
    relevant_docs entries must resolve against it.
    """
    path = Path(path)
    topics: list[QueryTopic] = []
    with path.open(encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"line {line_no}: malformed JSON ({exc.msg})") from exc
            topic_id = str(obj.get("id", obj.get("topic_id", "")) or f"line-{line_no}")
            title = obj.get("title")
            if not isinstance(title, str) or not title.strip():
                raise CorpusFormatError(f"topic {topic_id!r}: missing title")
            keywords = tuple(
                kw.strip().lower()
                for kw in obj.get("keywords", []) or []
                if isinstance(kw, str) and kw.strip()
            )
            relevant = tuple(str(d) for d in obj.get("relevant_docs", []) or [])
            if corpus is not None:
                for doc_id in relevant:
                    if doc_id not in corpus:
                        raise CorpusFormatError(
                            f"topic {topic_id!r}: relevant doc {doc_id!r} not in corpus"
                        )
            topics.append(QueryTopic(topic_id, title.strip(), keywords, relevant))
    return topics


def attribute_distribution(
    docs: Sequence[Document],
    dimension: str,
    policy: UnlabeledPolicy = UnlabeledPolicy.EXCLUDE,
    schema: Sequence[str] | None = None,
) -> Distribution:
    """Count label occurrences for one dimension and normalize.

    A document with two labels contributes two counts. Under
    AS_CATEGORY, each unlabeled document contributes one count to the
    sentinel category instead of being skipped.
    """
    if schema is not None and dimension not in schema:
        raise UnknownDimensionError(f"dimension {dimension!r} not in schema {list(schema)}")
    policy = UnlabeledPolicy(policy)
    counts: dict[str, int] = {}
    for doc in docs:
        labels = doc.labels(dimension)
        if labels:
            for label in labels:
                counts[label] = counts.get(label, 0) + 1
        elif policy is UnlabeledPolicy.AS_CATEGORY:
            counts[UNLABELED_CATEGORY] = counts.get(UNLABELED_CATEGORY, 0) + 1
    total = sum(counts.values())
    if total == 0:
        return Distribution(probs={}, support_count=0, policy=policy)
    probs = {cat: n / total for cat, n in sorted(counts.items())}
    return Distribution(probs=probs, support_count=total, policy=policy)
