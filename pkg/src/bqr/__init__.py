"""Fairness-aware query recommendation.

Retrieve BM25 results over an attribute-labeled corpus, generate
alternative queries, score them on relevance and per-dimension
diversity, and recommend the Pareto-optimal set.
"""

from .candidates import (
    CandidateBatch,
    Method,
    method1_embedding,
    method2_llm_with_similar,
    method3_llm_with_keywords,
    parse_query_list,
)
from .corpus import (
    CorpusHandle,
    Distribution,
    Document,
    QueryTopic,
    UnlabeledPolicy,
    attribute_distribution,
    load_corpus,
    load_queries,
    load_schema,
)
from .embeddings import EmbeddingStore, cosine, load_vectors
from .engine import EngineConfig, Recommendation, recommend
from .errors import BqrError
from .evaluation import DominationMatrix, domination_score, method_matrix
from .index import Index, IndexParams, ResultSet, build_index
from .pareto import OrientedVector, dominates, pareto_front, pseudo_pareto_front
from .providers import LiveHttpProvider, ReplayProvider
from .scoring import (
    DimensionKind,
    DimensionSpec,
    Orientation,
    ScoredQuery,
    bow_vector,
    default_dims,
    dim_scores,
    doc_set_relevance,
    entropy_dim,
    entropy_score,
    jsd,
    relevance_dim,
    signed_bias,
    signed_dim,
)

__version__ = "0.1.0"

__all__ = [
    "BqrError",
    "CandidateBatch",
    "CorpusHandle",
    "DimensionKind",
    "DimensionSpec",
    "Distribution",
    "Document",
    "DominationMatrix",
    "EmbeddingStore",
    "EngineConfig",
    "Index",
    "IndexParams",
    "LiveHttpProvider",
    "Method",
    "Orientation",
    "OrientedVector",
    "QueryTopic",
    "Recommendation",
    "ReplayProvider",
    "ResultSet",
    "ScoredQuery",
    "UnlabeledPolicy",
    "attribute_distribution",
    "bow_vector",
    "build_index",
    "cosine",
    "default_dims",
    "dim_scores",
    "doc_set_relevance",
    "dominates",
    "domination_score",
    "entropy_dim",
    "entropy_score",
    "jsd",
    "load_corpus",
    "load_queries",
    "load_schema",
    "load_vectors",
    "method1_embedding",
    "method2_llm_with_similar",
    "method3_llm_with_keywords",
    "method_matrix",
    "parse_query_list",
    "pareto_front",
    "pseudo_pareto_front",
    "recommend",
    "relevance_dim",
    "signed_bias",
    "signed_dim",
]
