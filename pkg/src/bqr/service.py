"""Read-only HTTP service over an immutable resource snapshot.

Endpoints: GET /api/health, GET /api/search, POST /api/recommend,
GET /api/topics. Everything is JSON; errors come back as
{"error": ..., "detail": ...} with an appropriate status code.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .candidates import Method
from .corpus import CorpusHandle, Distribution, QueryTopic
from .embeddings import EmbeddingStore
from .engine import EngineConfig, Recommendation, recommend
from .errors import BqrError, ConfigError
from .index import Index, ResultSet
from .scoring import ScoredQuery, default_dims


@dataclass
class Snapshot:
    """Everything the service needs, loaded once and never mutated."""

    corpus: CorpusHandle
    index: Index
    store: EmbeddingStore | None
    provider: object | None
    config: EngineConfig
    topics: list[QueryTopic]

    def topic_for(self, query: str) -> QueryTopic | None:
        wanted = query.strip().lower()
        for topic in self.topics:
            if topic.title.strip().lower() == wanted:
                return topic
        return None


class RecommendRequest(BaseModel):
    query: str = Field(min_length=1)
    k: int | None = Field(default=None, ge=1)
    n: int | None = Field(default=None, ge=1)
    method: str | None = None
    dims: list[str] | None = None


def _distribution_payload(dist: Distribution) -> dict:
    return {"probs": dict(dist.probs), "support_count": dist.support_count}


def _distributions(snapshot: Snapshot, rs: ResultSet) -> dict:
    return {
        dim: _distribution_payload(
            snapshot.corpus.distribution(rs.doc_ids, dim, snapshot.config.unlabeled_policy)
        )
        for dim in snapshot.corpus.dimensions
    }


def _hits_payload(snapshot: Snapshot, rs: ResultSet) -> list[dict]:
    out = []
    for doc_id, score in rs.hits:
        doc = snapshot.corpus.get(doc_id)
        out.append(
            {
                "doc_id": doc_id,
                "title": doc.title,
                "url": doc.url,
                "score": score,
                "attributes": {k: list(v) for k, v in doc.attributes.items()},
            }
        )
    return out


def _scored_payload(snapshot: Snapshot, sq: ScoredQuery) -> dict:
    return {
        "query": sq.query,
        "dim_scores": [{"name": name, "value": value} for name, value in sq.dim_scores],
        "hits": _hits_payload(snapshot, sq.result_set),
        "distributions": _distributions(snapshot, sq.result_set),
    }


def recommendation_payload(snapshot: Snapshot, result: Recommendation) -> dict:
    return {
        "original": _scored_payload(snapshot, result.original),
        "recommendations": [_scored_payload(snapshot, sq) for sq in result.recs],
        "trace_summary": {
            "iterations_used": result.iterations_used,
            "candidates_scored": sum(len(t["scored"]) for t in result.trace),
            "recommended": len(result.recs),
        },
    }


def create_app(snapshot: Snapshot, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="balanced query recommendation", docs_url=None, redoc_url=None)

    @app.exception_handler(BqrError)
    async def _domain_error(_request: Request, exc: BqrError):
        return JSONResponse(
            status_code=400, content={"error": type(exc).__name__, "detail": str(exc)}
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422, content={"error": "validation", "detail": exc.errors()}
        )

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "docs": len(snapshot.corpus)}

    @app.get("/api/search")
    def search(q: str, n: int = 20) -> dict:
        rs = snapshot.index.search(q, n)
        return {
            "query": q,
            "hits": _hits_payload(snapshot, rs),
            "distributions": _distributions(snapshot, rs),
        }

    @app.get("/api/topics")
    def topics() -> dict:
        return {
            "topics": [
                {
                    "id": t.topic_id,
                    "title": t.title,
                    "keywords": list(t.keywords),
                    "relevant_docs": list(t.relevant_docs),
                }
                for t in snapshot.topics
            ]
        }

    @app.post("/api/recommend")
    def recommend_endpoint(body: RecommendRequest) -> dict:
        config = snapshot.config
        overrides = {}
        if body.k is not None:
            overrides["k"] = body.k
        if body.n is not None:
            overrides["n"] = body.n
        if body.method is not None:
            overrides["method"] = _parse_method(body.method)
        if body.dims is not None:
            overrides["dims"] = default_dims(body.dims)
        if overrides:
            from dataclasses import replace

            config = replace(config, **overrides)
        result = recommend(
            body.query,
            config,
            snapshot.index,
            snapshot.corpus,
            snapshot.store,
            snapshot.provider,
            topic=snapshot.topic_for(body.query),
        )
        return recommendation_payload(snapshot, result)

    if ui_dir is not None:
        # everything not matching /api/* falls through to the static UI
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def _parse_method(raw: str) -> Method:
    aliases = {
        "m1": Method.M1,
        "m2": Method.M2,
        "m3": Method.M3,
        Method.M1.value: Method.M1,
        Method.M2.value: Method.M2,
        Method.M3.value: Method.M3,
    }
    try:
        return aliases[raw.strip().lower()]
    except KeyError:
        raise ConfigError(f"unknown method {raw!r}; use m1, m2 or m3") from None
