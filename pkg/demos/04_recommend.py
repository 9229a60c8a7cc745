#!/usr/bin/env python3
"""Full recommendation loop on the bundled corpus, all three methods.

M1 reuses embedding neighbors as queries, M2 prompts the (replayed) LLM
with those neighbors, M3 prompts it with the dataset's topic keywords.
The replay provider answers from data/synthetic/fixtures.json, so this
runs fully offline.
"""

from dataclasses import replace
from pathlib import Path

from bqr import (
    EngineConfig,
    Method,
    ReplayProvider,
    build_index,
    load_corpus,
    load_queries,
    load_schema,
    load_vectors,
    recommend,
)

DATA = Path(__file__).resolve().parents[1] / "data" / "synthetic"

schema = load_schema(DATA / "schema.json")
corpus = load_corpus(DATA / "corpus.jsonl", schema)
index = build_index(corpus)
store = load_vectors(DATA / "vectors.txt")
provider = ReplayProvider.from_file(DATA / "fixtures.json")
topics = load_queries(DATA / "topics.jsonl", corpus)

topic = topics[0]  # "politics"
config = EngineConfig(n=10)  # k=10, max_iter=5; n=10 suits the small corpus

print(f"original query: {topic.title!r} (keywords: {', '.join(topic.keywords)})\n")
for method in (Method.M1, Method.M2, Method.M3):
    result = recommend(
        topic.title, replace(config, method=method), index, corpus, store, provider, topic=topic
    )
    print(f"{method.value}: {result.iterations_used} iterations, "
          f"{sum(len(t['scored']) for t in result.trace)} candidates scored")
    names = [name for name, _ in result.original.dim_scores]
    print(f"  {'query':26s}" + "".join(f"{n:>12s}" for n in names))
    orig = "".join(f"{v:12.4f}" for v in result.original.values)
    print(f"  {'(original)':26s}{orig}")
    for sq in result.recs:
        row = "".join(f"{v:12.4f}" for v in sq.values)
        print(f"  {sq.query:26s}{row}")
    print()
