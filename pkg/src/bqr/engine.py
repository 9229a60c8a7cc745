"""End-to-end balanced-query recommendation.

Retrieve the original query's results, generate candidate queries by the
configured method, score each candidate on every dimension, keep the
non-dominated set, and widen the candidate pool with the next most
similar embedding word until enough recommendations exist or the
iteration budget runs out.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .candidates import (
    Method,
    method1_embedding,
    method2_llm_with_similar,
    method3_llm_with_keywords,
)
from .corpus import CorpusHandle, QueryTopic, UnlabeledPolicy
from .embeddings import EmbeddingStore
from .errors import (
    BqrError,
    ConfigError,
    EmptyBaselineError,
    InapplicableMethodError,
    OutOfVocabularyError,
    ProviderError,
)
from .index import Index
from .pareto import oriented, pareto_front, pseudo_pareto_front
from .scoring import (
    DimensionKind,
    DimensionSpec,
    ScoredQuery,
    default_dims,
    dim_scores,
    validate_dims,
)
from .text import tokenize


@dataclass(frozen=True)
class EngineConfig:
    k: int = 10
    n: int = 20
    max_iter: int = 5
    method: Method = Method.M2
    dims: tuple[DimensionSpec, ...] = ()
    unlabeled_policy: UnlabeledPolicy = UnlabeledPolicy.EXCLUDE
    neighbor_words: int = 10
    # restore the printed single-word branch: skip the LLM when the
    # query is one word and use the embedding words directly
    skip_llm_single_word: bool = False
    pseudo_front: bool = False

    def __post_init__(self) -> None:
        if self.k < 1 or self.n < 1 or self.max_iter < 1 or self.neighbor_words < 1:
            raise ConfigError("k, n, max_iter and neighbor_words must all be >= 1")
        if self.dims:
            validate_dims(self.dims)
        if self.pseudo_front and not any(
            d.kind is DimensionKind.SIGNED_MEAN for d in self.dims
        ):
            raise ConfigError("pseudo_front needs a signed-mean dimension")

    def with_dims_for(self, corpus: CorpusHandle) -> "EngineConfig":
        if self.dims:
            return self
        return replace(self, dims=default_dims(corpus.dimensions))

    def signed_dim_name(self) -> str:
        signed = [d.name for d in self.dims if d.kind is DimensionKind.SIGNED_MEAN]
        if len(signed) != 1:
            raise ConfigError(f"expected exactly one signed-mean dimension, got {signed}")
        return signed[0]


@dataclass
class Recommendation:
    original: ScoredQuery
    recs: list[ScoredQuery]
    iterations_used: int
    trace: list[dict] = field(default_factory=list)

    @property
    def rec_queries(self) -> list[str]:
        return [sq.query for sq in self.recs]


class _FrontTracker:
    """Streaming non-dominated set; equal vectors to the baseline are vacuous."""

    def __init__(self, original: ScoredQuery, config: EngineConfig):
        self._specs = config.dims
        self._original_vec = oriented(original, self._specs).canonical
        self._original_values = original.values
        self._pseudo = config.pseudo_front
        self.members: list[ScoredQuery] = []
        self._canon: list[tuple[float, ...]] = []
        if self._pseudo:
            signed = config.signed_dim_name()
            self._dim_pos = [s.name for s in self._specs].index(signed)
            self._original_sign = (
                0.0
                if original.score(signed) == 0.0
                else (1.0 if original.score(signed) > 0.0 else -1.0)
            )
            self.opposite: list[ScoredQuery] = []
            self._opp_canon: list[tuple[float, ...]] = []

    @staticmethod
    def _dom(a: tuple[float, ...], b: tuple[float, ...]) -> bool:
        return all(x >= y for x, y in zip(a, b)) and any(x > y for x, y in zip(a, b))

    def _magnitude_vec(self, sq: ScoredQuery) -> tuple[float, ...]:
        vec = oriented(sq, self._specs).canonical
        return vec[: self._dim_pos] + (abs(sq.values[self._dim_pos]),) + vec[self._dim_pos + 1 :]

    def offer(self, sq: ScoredQuery) -> tuple[bool, str, list[str]]:
        """Insert-and-evict. Returns (added, reason-if-rejected, evicted)."""
        vec = oriented(sq, self._specs).canonical
        added = False
        evicted: list[str] = []
        reason = ""
        # raw-value comparison: a minimize-absolute dim may canonically
        # collide for mirrored values that are not actually ties
        if sq.values == self._original_values:
            reason = "tied-with-original"
        elif self._dom(self._original_vec, vec):
            reason = "dominated-by-original"
        elif any(self._dom(c, vec) for c in self._canon):
            reason = "dominated"
        else:
            evicted = [m.query for m, c in zip(self.members, self._canon) if self._dom(vec, c)]
            survivors = [
                (m, c) for m, c in zip(self.members, self._canon) if not self._dom(vec, c)
            ]
            self.members = [m for m, _ in survivors] + [sq]
            self._canon = [c for _, c in survivors] + [vec]
            added = True
        if self._pseudo and self._original_sign != 0.0:
            value = sq.values[self._dim_pos]
            if value * self._original_sign < 0.0:
                mvec = self._magnitude_vec(sq)
                if not any(self._dom(c, mvec) for c in self._opp_canon):
                    keep = [
                        (m, c)
                        for m, c in zip(self.opposite, self._opp_canon)
                        if not self._dom(mvec, c)
                    ]
                    self.opposite = [m for m, _ in keep] + [sq]
                    self._opp_canon = [c for _, c in keep] + [mvec]
                    added = True
        return added, reason, evicted

    def count(self) -> int:
        if not self._pseudo:
            return len(self.members)
        ids = {id(m) for m in self.members} | {id(m) for m in self.opposite}
        return len(ids)


class _CandidateSource:
    """Produces the per-iteration candidate queue and handles pool expansion."""

    def __init__(
        self,
        config: EngineConfig,
        query: str,
        store: EmbeddingStore | None,
        provider,
        topic: QueryTopic | None,
    ):
        self.config = config
        self.query = query
        self.store = store
        self.provider = provider
        self.method = config.method
        self._llm_bypass = False

        if self.method in (Method.M1, Method.M2) and store is None:
            raise ConfigError(f"{self.method.value} needs an embedding store")
        if self.method is Method.M3:
            if topic is None or not topic.keywords:
                raise InapplicableMethodError(
                    "method 3 needs a topic with dataset keywords"
                )
            self.topic = topic
            self.words = list(topic.keywords)
        else:
            neighbors = store.nearest_words(query, config.neighbor_words)
            self.words = [w for w, _ in neighbors]
        if (
            self.method in (Method.M2, Method.M3)
            and config.skip_llm_single_word
            and len(tokenize(query)) == 1
        ):
            self._llm_bypass = True

    def initial(self) -> list[str]:
        if self._llm_bypass:
            return list(self.words)
        if self.method is Method.M1:
            return list(method1_embedding(self.store, self.query, self.config.neighbor_words).queries)
        if self.method is Method.M3:
            return list(method3_llm_with_keywords(self.provider, self.topic, self.config.k).queries)
        return list(
            method2_llm_with_similar(self.provider, self.query, self.words, self.config.k).queries
        )

    def _next_embedding_word(self) -> str | None:
        """Next most similar word not yet part of the word pool."""
        if self.store is None:
            return None
        try:
            ranked = self.store.nearest_words(self.query, 1, exclude=frozenset(self.words))
        except OutOfVocabularyError:
            if self.method is Method.M3:
                return None  # M3 tolerates out-of-vocabulary queries
            raise
        return ranked[0][0] if ranked else None

    def expand(self) -> list[str] | None:
        """Grow the word pool by one embedding word; return new candidates.

        None means the pool cannot grow any further (vocabulary
        exhausted), so the loop has no way to make progress.
        """
        word = self._next_embedding_word()
        if word is None:
            return None
        self.words.append(word)
        if self.method is Method.M1 or self._llm_bypass:
            return [word]
        # re-prompt with the grown word list; the loop's seen-set keeps
        # only candidates not scored before
        return list(
            method2_llm_with_similar(self.provider, self.query, self.words, self.config.k).queries
        )


def recommend(
    query: str,
    config: EngineConfig,
    index: Index,
    corpus: CorpusHandle,
    store: EmbeddingStore | None = None,
    provider=None,
    topic: QueryTopic | None = None,
) -> Recommendation:
    """Run the full recommendation loop for one query.

    The original query is the dominance baseline but is never emitted;
    the returned recs are re-derived with a full Pareto pass over every
    scored candidate so they match the batch front semantics exactly.
    """
    if not query or not query.strip():
        raise BqrError("query must be non-empty")
    config = config.with_dims_for(corpus)

    original_rs = index.search(query, config.n)
    if not original_rs.hits:
        raise EmptyBaselineError(
            f"original query {query!r} returned no documents; nothing to compare against"
        )
    original = dim_scores(
        query, original_rs, config.dims, index, corpus, config.n, config.unlabeled_policy
    )

    source = _CandidateSource(config, query, store, provider, topic)
    tracker = _FrontTracker(original, config)
    seen: set[str] = {query.strip().lower()}
    scored: list[ScoredQuery] = []
    trace: list[dict] = []
    iterations_used = 0

    try:
        queue = source.initial()
    except ProviderError as exc:
        raise ProviderError(f"iteration 1: {exc}") from exc

    while True:
        log = {"iteration": iterations_used + 1, "scored": [], "added": [], "evicted": [], "rejected": []}
        for q in sorted(set(queue)):
            q = q.strip().lower()
            if not q or q in seen:
                continue
            seen.add(q)
            sq = dim_scores(
                q, original_rs, config.dims, index, corpus, config.n, config.unlabeled_policy
            )
            scored.append(sq)
            log["scored"].append({"query": q, "scores": dict(sq.dim_scores)})
            added, reason, evicted = tracker.offer(sq)
            if added:
                log["added"].append(q)
                log["evicted"].extend(evicted)
            else:
                log["rejected"].append({"query": q, "reason": reason})
        iterations_used += 1
        trace.append(log)
        if tracker.count() >= config.k or iterations_used >= config.max_iter:
            break
        try:
            queue = source.expand()
        except ProviderError as exc:
            raise ProviderError(f"iteration {iterations_used + 1}: {exc}") from exc
        if queue is None:
            break  # vocabulary exhausted, no further progress possible

    # Final full pass: batch semantics over everything ever scored, with
    # the original in the pool as baseline but excluded from the output,
    # along with exact-vector ties (recommending them would be vacuous).
    pool = [original] + scored
    if config.pseudo_front:
        signed = config.signed_dim_name()
        front = pseudo_pareto_front(pool, config.dims, signed, original.score(signed))
    else:
        front = pareto_front(pool, config.dims)
    recs = [sq for sq in front if sq is not original and sq.values != original.values]
    return Recommendation(
        original=original, recs=recs, iterations_used=iterations_used, trace=trace
    )
