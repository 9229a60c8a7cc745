#!/usr/bin/env python3
"""Score candidate queries against an original query by hand.

Each candidate gets a vector [geo divergence, gender divergence,
relevance]: divergences are Jensen-Shannon distances between the
candidate's result distribution and the original's; relevance is the
harmonic mean of directed mean-max bag-of-words cosines between the two
result sets.
"""

from pathlib import Path

from bqr import build_index, default_dims, dim_scores, load_corpus, load_schema

DATA = Path(__file__).resolve().parents[1] / "data" / "synthetic"

schema = load_schema(DATA / "schema.json")
corpus = load_corpus(DATA / "corpus.jsonl", schema)
index = build_index(corpus)
dims = default_dims(schema)

original = index.search("politics", n=10)
candidates = [
    "politics",                # the original itself: zero divergence, relevance 1
    "politics religion",       # the culture/religion slice lives in other regions
    "politicians debate",      # biographies bring gender labels into play
    "music",                   # unrelated topic: low relevance
]

header = "  ".join(f"{name:>10s}" for name in [d.name for d in dims])
print(f"{'candidate':28s}{header}")
for query in candidates:
    scored = dim_scores(query, original, dims, index, corpus, n=10)
    row = "  ".join(f"{value:10.4f}" for value in scored.values)
    print(f"{query:28s}{row}")
