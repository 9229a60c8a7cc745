"""Inverted index with BM25 ranking.

Lucene-style variant: idf(t) = ln(1 + (N - df + 0.5)/(df + 0.5)),
score contribution idf * tf*(k1+1) / (tf + k1*(1 - b + b*|d|/avgdl)).
Defaults k1=0.9, b=0.4. Ties broken by doc_id ascending so rankings
reproduce across runs and platforms.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .corpus import CorpusHandle
from .errors import BqrError
from .text import tokenize

INDEX_FORMAT_VERSION = 1


@dataclass(frozen=True)
class IndexParams:
    k1: float = 0.9
    b: float = 0.4
    lowercase: bool = True

    def __post_init__(self) -> None:
        if self.k1 <= 0:
            raise BqrError(f"k1 must be > 0, got {self.k1}")
        if not 0.0 <= self.b <= 1.0:
            raise BqrError(f"b must be in [0,1], got {self.b}")


@dataclass(frozen=True)
class ResultSet:
    """Ranked document ids with retrieval scores for one query."""

    query: str
    hits: tuple[tuple[str, float], ...]
    n_requested: int

    @property
    def doc_ids(self) -> tuple[str, ...]:
        return tuple(doc_id for doc_id, _ in self.hits)

    def __len__(self) -> int:
        return len(self.hits)


class Index:
    """Immutable BM25 index over title+text of every corpus document."""

    def __init__(
        self,
        params: IndexParams,
        doc_ids: list[str],
        doc_lengths: list[int],
        postings: dict[str, dict[int, int]],
    ):
        self.params = params
        self._doc_ids = doc_ids
        self._doc_lengths = doc_lengths
        self._postings = postings  # term -> {doc position -> tf}
        self.doc_count = len(doc_ids)
        self.vocab_size = len(postings)
        total = sum(doc_lengths)
        self.avgdl = total / self.doc_count if self.doc_count else 0.0

    def stats(self) -> dict:
        return {
            "doc_count": self.doc_count,
            "vocab_size": self.vocab_size,
            "avgdl": self.avgdl,
        }

    def _idf(self, term: str) -> float:
        df = len(self._postings.get(term, ()))
        return math.log(1.0 + (self.doc_count - df + 0.5) / (df + 0.5))

    def search(self, query: str, n: int) -> ResultSet:
        """Top-n documents by BM25; documents matching no term are omitted."""
        if n < 1:
            raise BqrError(f"n must be >= 1, got {n}")
        terms = dict.fromkeys(tokenize(query, lowercase=self.params.lowercase))
        scores: dict[int, float] = {}
        k1, b = self.params.k1, self.params.b
        for term in terms:
            posting = self._postings.get(term)
            if not posting:
                continue
            idf = self._idf(term)
            for pos, tf in posting.items():
                norm = k1 * (1.0 - b + b * self._doc_lengths[pos] / self.avgdl)
                scores[pos] = scores.get(pos, 0.0) + idf * tf * (k1 + 1.0) / (tf + norm)
        ranked = sorted(scores.items(), key=lambda kv: (-kv[1], self._doc_ids[kv[0]]))
        hits = tuple((self._doc_ids[pos], score) for pos, score in ranked[:n])
        return ResultSet(query=query, hits=hits, n_requested=n)

    # Round-trip tested on-disk format; internal, versioned.
    def save(self, path: str | Path) -> None:
        payload = {
            "version": INDEX_FORMAT_VERSION,
            "params": {
                "k1": self.params.k1,
                "b": self.params.b,
                "lowercase": self.params.lowercase,
            },
            "doc_ids": self._doc_ids,
            "doc_lengths": self._doc_lengths,
            "postings": {
                term: {str(pos): tf for pos, tf in posting.items()}
                for term, posting in self._postings.items()
            },
        }
        Path(path).write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "Index":
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        version = payload.get("version")
        if version != INDEX_FORMAT_VERSION:
            raise BqrError(f"unsupported index format version {version!r}")
        params = IndexParams(**payload["params"])
        postings = {
            term: {int(pos): tf for pos, tf in posting.items()}
            for term, posting in payload["postings"].items()
        }
        return cls(params, payload["doc_ids"], payload["doc_lengths"], postings)


def build_index(corpus: CorpusHandle, params: IndexParams | None = None) -> Index:
    """Index title+text of every document. Empty corpus is an error."""
    if len(corpus) == 0:
        raise BqrError("cannot index an empty corpus")
    params = params or IndexParams()
    doc_ids: list[str] = []
    doc_lengths: list[int] = []
    postings: dict[str, dict[int, int]] = {}
    for doc in corpus:
        pos = len(doc_ids)
        doc_ids.append(doc.doc_id)
        tokens = tokenize(f"{doc.title} {doc.text}", lowercase=params.lowercase)
        doc_lengths.append(len(tokens))
        for tok in tokens:
            posting = postings.setdefault(tok, {})
            posting[pos] = posting.get(pos, 0) + 1
    return Index(params, doc_ids, doc_lengths, postings)
