#!/usr/bin/env python3
"""Compare the three candidate-generation methods by domination counts.

For every topic and ordered method pair (A, B), the cell counts how many
of A's recommended queries are dominated by B's. Totals across topics
feed the high/mid/low buckets.
"""

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
    method_matrix,
)

DATA = Path(__file__).resolve().parents[1] / "data" / "synthetic"

schema = load_schema(DATA / "schema.json")
corpus = load_corpus(DATA / "corpus.jsonl", schema)
matrix = method_matrix(
    topics=load_queries(DATA / "topics.jsonl", corpus),
    methods=[Method.M1, Method.M2, Method.M3],
    config=EngineConfig(n=10),
    index=build_index(corpus),
    corpus=corpus,
    store=load_vectors(DATA / "vectors.txt"),
    provider=ReplayProvider.from_file(DATA / "fixtures.json"),
)

print(matrix.to_csv())
print("buckets over totals (how often the row-second method beats the row-first):")
for pair, info in matrix.summary().items():
    print(f"  {pair:52s} score={info['score']:3d}  {info['bucket']}")
if matrix.failures:
    print("\nfailures:", matrix.failures)
