"""Candidate-generation evaluation: pairwise domination scores.

For each topic, every method's recommendation set is compared against
every other's: the (A, B) cell counts, over all of B's queries, how many
of A's queries each one dominates. Higher counts mean B produces queries
that beat A's.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Sequence

from .candidates import Method
from .corpus import CorpusHandle, QueryTopic
from .embeddings import EmbeddingStore
from .engine import EngineConfig, Recommendation, recommend
from .errors import BqrError
from .index import Index
from .pareto import dominates, oriented
from .scoring import DimensionSpec, ScoredQuery


def domination_score(
    recs_a: Sequence[ScoredQuery],
    recs_b: Sequence[ScoredQuery],
    specs: Sequence[DimensionSpec],
) -> int:
    """How many of A's queries are dominated by B's queries, with multiplicity."""
    vecs_a = [oriented(sq, specs) for sq in recs_a]
    vecs_b = [oriented(sq, specs) for sq in recs_b]
    return sum(1 for vb in vecs_b for va in vecs_a if dominates(vb, va))


@dataclass
class DominationMatrix:
    methods: tuple[str, ...]
    topics: tuple[str, ...]
    # (topic_id, method_a, method_b) -> count, or None when either side failed
    cells: dict[tuple[str, str, str], int | None]
    totals: dict[tuple[str, str], int] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["topic_id", "method_a", "method_b", "score"])
        for topic in self.topics:
            for a in self.methods:
                for b in self.methods:
                    score = self.cells.get((topic, a, b))
                    writer.writerow([topic, a, b, "NA" if score is None else score])
        for a in self.methods:
            for b in self.methods:
                writer.writerow(["TOTAL", a, b, self.totals.get((a, b), 0)])
        return buf.getvalue()

    def summary(self) -> dict:
        """Colour buckets over non-self pair totals: high/mid/low per Fig-style highlighting."""
        pairs = {
            (a, b): self.totals.get((a, b), 0)
            for a in self.methods
            for b in self.methods
            if a != b
        }
        out: dict[str, dict] = {}
        values = list(pairs.values())
        top = max(values) if values else 0
        bottom = min(values) if values else 0
        for a in self.methods:
            for b in self.methods:
                key = f"{b} over {a}"
                if a == b:
                    out[key] = {"score": self.totals.get((a, b), 0), "bucket": "self"}
                    continue
                score = pairs[(a, b)]
                if top == bottom:
                    bucket = "mid"
                elif score == top:
                    bucket = "high"
                elif score == bottom:
                    bucket = "low"
                else:
                    bucket = "mid"
                out[key] = {"score": score, "bucket": bucket}
        return out


def method_matrix(
    topics: Sequence[QueryTopic],
    methods: Sequence[Method],
    config: EngineConfig,
    index: Index,
    corpus: CorpusHandle,
    store: EmbeddingStore | None = None,
    provider=None,
) -> DominationMatrix:
    """Run every method over every topic and fill all ordered method pairs.

    Per-topic failures (inapplicable method, provider gaps, empty
    baseline) are recorded and skipped; the run continues.
    """
    config = config.with_dims_for(corpus)
    method_ids = tuple(m.value for m in methods)
    cells: dict[tuple[str, str, str], int | None] = {}
    failures: list[dict] = []

    per_topic: dict[str, dict[str, list[ScoredQuery] | None]] = {}
    for topic in topics:
        recs_by_method: dict[str, list[ScoredQuery] | None] = {}
        for method in methods:
            run_config = replace(config, method=method)
            try:
                result = recommend(
                    topic.title, run_config, index, corpus, store, provider, topic=topic
                )
                recs_by_method[method.value] = result.recs
            except BqrError as exc:
                recs_by_method[method.value] = None
                failures.append(
                    {"topic_id": topic.topic_id, "method": method.value, "error": str(exc)}
                )
        per_topic[topic.topic_id] = recs_by_method

    totals: dict[tuple[str, str], int] = {(a, b): 0 for a in method_ids for b in method_ids}
    for topic in topics:
        recs_by_method = per_topic[topic.topic_id]
        for a in method_ids:
            for b in method_ids:
                ra, rb = recs_by_method[a], recs_by_method[b]
                if ra is None or rb is None:
                    cells[(topic.topic_id, a, b)] = None
                    continue
                score = domination_score(ra, rb, config.dims)
                cells[(topic.topic_id, a, b)] = score
                totals[(a, b)] += score
    return DominationMatrix(
        methods=method_ids,
        topics=tuple(t.topic_id for t in topics),
        cells=cells,
        totals=totals,
        failures=failures,
    )


def scatter_rows(result: Recommendation) -> list[tuple[str, str, float, bool]]:
    """Long-format rows (query, dim-name, value, on_front) for plotting.

    Covers the original and every candidate ever scored; front members
    are the engine's recommendations.
    """
    on_front = {sq.query for sq in result.recs}
    rows: list[tuple[str, str, float, bool]] = []
    for name, value in result.original.dim_scores:
        rows.append((result.original.query, name, value, False))
    for entry in result.trace:
        for item in entry["scored"]:
            for name, value in item["scores"].items():
                rows.append((item["query"], name, value, item["query"] in on_front))
    return rows


def scatter_csv(result: Recommendation) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["query", "dim_name", "value", "on_front"])
    for query, dim, value, flag in scatter_rows(result):
        writer.writerow([query, dim, repr(value), "true" if flag else "false"])
    return buf.getvalue()


def _file_sha256(path: str | Path) -> str:
    digest = hashlib.sha256()
    digest.update(Path(path).read_bytes())
    return digest.hexdigest()


def run_manifest(
    config: EngineConfig,
    methods: Sequence[Method],
    topics: Sequence[QueryTopic],
    files: dict[str, str | Path] | None = None,
) -> dict:
    """Reproducibility record: config, method list, topic ids, input-file hashes."""
    cfg = asdict(config)
    cfg["method"] = config.method.value
    cfg["unlabeled_policy"] = config.unlabeled_policy.value
    cfg["dims"] = [
        {"name": d.name, "kind": d.kind.value, "orientation": d.orientation.value}
        for d in config.dims
    ]
    return {
        "config": cfg,
        "methods": [m.value for m in methods],
        "topics": [t.topic_id for t in topics],
        "files": {name: _file_sha256(p) for name, p in (files or {}).items()},
    }


def manifest_json(manifest: dict) -> str:
    return json.dumps(manifest, indent=2, sort_keys=True) + "\n"
