#!/usr/bin/env python3
"""Search the bundled corpus and inspect attribute distributions.

The corpus mimics a small encyclopedia slice: documents carry geography
and gender labels, most of them only partially. Searching "politics"
surfaces the usual suspects; the distributions show how concentrated the
labeled mass is.
"""

from pathlib import Path

from bqr import UnlabeledPolicy, build_index, load_corpus, load_schema

DATA = Path(__file__).resolve().parents[1] / "data" / "synthetic"

schema = load_schema(DATA / "schema.json")
corpus = load_corpus(DATA / "corpus.jsonl", schema)
index = build_index(corpus)

print(f"corpus: {len(corpus)} docs, dimensions {schema}")
print(f"index:  {index.stats()}\n")

results = index.search("politics", n=20)
print(f"top {len(results)} hits for 'politics':")
for doc_id, score in results.hits[:8]:
    doc = corpus.get(doc_id)
    print(f"  {doc_id}  {score:6.3f}  {doc.title!r}  {dict(doc.attributes)}")
print("  ...")

for dim in schema:
    dist = corpus.distribution(results.doc_ids, dim)
    print(f"\n{dim} distribution (labeled docs only, support={dist.support_count}):")
    for cat, p in dist.probs.items():
        print(f"  {cat:20s} {p:.3f}")

# unlabeled documents can instead be counted as their own category
dist = corpus.distribution(results.doc_ids, "geography", UnlabeledPolicy.AS_CATEGORY)
print(f"\ngeography with unlabeled-as-category (support={dist.support_count}):")
for cat, p in dist.probs.items():
    print(f"  {cat:20s} {p:.3f}")
