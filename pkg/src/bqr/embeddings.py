"""Word-vector store over GloVe-format text files.

Answers nearest-neighbor queries by exhaustive cosine scan — desk-scale
vocabularies don't need approximate structures, and determinism matters
more than speed here.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import BqrError, EmbeddingFormatError, OutOfVocabularyError
from .text import tokenize


class EmbeddingStore:
    """Immutable word -> dense vector map with a fixed dimension."""

    def __init__(self, vectors: dict[str, np.ndarray], dimension: int, skipped_lines: int = 0):
        self.dimension = dimension
        self.skipped_lines = skipped_lines
        self._words: list[str] = sorted(vectors)
        self._matrix = np.stack([vectors[w] for w in self._words]) if vectors else np.zeros((0, dimension))
        norms = np.linalg.norm(self._matrix, axis=1)
        norms[norms == 0.0] = 1.0  # zero vectors score 0 against everything
        self._unit = self._matrix / norms[:, None]
        self._lookup = {w: i for i, w in enumerate(self._words)}

    def __len__(self) -> int:
        return len(self._words)

    def __contains__(self, word: str) -> bool:
        return word in self._lookup

    @property
    def words(self) -> list[str]:
        return list(self._words)

    def vector(self, word: str) -> np.ndarray:
        try:
            return self._matrix[self._lookup[word]]
        except KeyError:
            raise OutOfVocabularyError(f"word {word!r} not in vocabulary") from None

    def query_vector(self, query: str) -> np.ndarray:
        """Mean of in-vocabulary token vectors; OOV if none are known."""
        tokens = tokenize(query)
        known = [t for t in tokens if t in self._lookup]
        if not known:
            raise OutOfVocabularyError(f"no token of query {query!r} in vocabulary")
        return self._matrix[[self._lookup[t] for t in known]].mean(axis=0)

    def nearest_words(
        self, query: str, k: int, exclude: set[str] | frozenset[str] = frozenset()
    ) -> list[tuple[str, float]]:
        """Top-k vocabulary words by cosine to the query point, descending.

        The query's own tokens and the exclude set never appear; ties
        break lexicographically.
        """
        if k < 0:
            raise BqrError(f"k must be >= 0, got {k}")
        if k == 0:
            return []
        point = self.query_vector(query)
        norm = np.linalg.norm(point)
        if norm == 0.0:
            sims = np.zeros(len(self._words))
        else:
            sims = self._unit @ (point / norm)
        banned = set(tokenize(query)) | set(exclude)
        scored = [
            (w, float(sims[i]))
            for i, w in enumerate(self._words)
            if w not in banned
        ]
        scored.sort(key=lambda ws: (-ws[1], ws[0]))
        return scored[:k]


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity in [-1,1]; all-zero vectors score 0."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise BqrError(f"vector length mismatch: {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def load_vectors(path: str | Path, expected_dim: int | None = None) -> EmbeddingStore:
    """Load whitespace-separated "word v1 ... vd" lines.

    Lines with the wrong arity or unparseable numbers are skipped and
    counted; a file yielding no valid line is an error, as is a
    dimension conflicting with expected_dim.
    """
    path = Path(path)
    vectors: dict[str, np.ndarray] = {}
    dimension = expected_dim
    skipped = 0
    mismatched_arity: int | None = None
    with path.open(encoding="utf-8") as fh:
        for line in fh:
            parts = line.rstrip("\n").split()
            if len(parts) < 2:
                if parts:
                    skipped += 1
                continue
            word = parts[0].lower()
            if dimension is None:
                dimension = len(parts) - 1
            if len(parts) - 1 != dimension:
                mismatched_arity = len(parts) - 1
                skipped += 1
                continue
            try:
                vec = np.array([float(x) for x in parts[1:]], dtype=float)
            except ValueError:
                skipped += 1
                continue
            if word in vectors:
                skipped += 1  # keep first occurrence
                continue
            vectors[word] = vec
    if not vectors or dimension is None:
        if expected_dim is not None and mismatched_arity is not None:
            raise EmbeddingFormatError(
                f"{path.name}: vectors are {mismatched_arity}-dimensional, expected {expected_dim}"
            )
        raise EmbeddingFormatError(f"{path.name}: no valid vector lines")
    return EmbeddingStore(vectors, dimension, skipped_lines=skipped)
