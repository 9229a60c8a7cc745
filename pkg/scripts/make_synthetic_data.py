#!/usr/bin/env python3
"""Regenerate the bundled synthetic dataset under data/synthetic/.

Fully deterministic (seeded); rerunning reproduces the same bytes. The
LLM fixtures are recorded by running the real engine against a canned
response synthesizer, so the replay set covers exactly the prompts the
offline pipeline asks for.
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from bqr.candidates import Method  # noqa: E402
from bqr.corpus import load_corpus, load_queries  # noqa: E402
from bqr.engine import EngineConfig, recommend  # noqa: E402
from bqr.index import build_index  # noqa: E402
from bqr.embeddings import load_vectors  # noqa: E402
from bqr.providers import build_fixture  # noqa: E402

OUT = ROOT / "data" / "synthetic"

DIMENSIONS = ["geography", "gender"]

REGION_WEST = "northern america"
REGION_EAST = "eastern asia"
REGION_NORTH = "northern europe"
REGION_SOUTH = "southern asia"

# topic clusters: (cluster name, words)
CLUSTERS = {
    "politics": [
        "politics", "election", "government", "debate", "policy", "senate",
        "vote", "liberal", "conservative", "politicians", "political", "parliament",
    ],
    "culture": ["culture", "religion", "social", "history", "tradition", "society"],
    "music": [
        "music", "classical", "bach", "violin", "cantata", "jazz", "concert",
        "symphony", "orchestra", "haydn", "opera",
    ],
    "energy": [
        "solar", "power", "energy", "panels", "grid", "wind", "turbine",
        "battery", "electricity",
    ],
}

FIRST_NAMES = ["ada", "boris", "chen", "dara", "elena", "farid", "gita", "henri"]
LAST_NAMES = ["okafor", "lindgren", "tanaka", "singh", "moreau", "novak"]


def _cluster_docs(rng: random.Random) -> list[dict]:
    docs = []

    def add(prefix, i, words, region, gender=None, extra=""):
        attributes = {}
        if region:
            attributes["geography"] = region if isinstance(region, list) else [region]
        if gender:
            attributes["gender"] = [gender]
        body = " ".join(words)
        if extra:
            body = f"{body} {extra}"
        docs.append(
            {
                "doc_id": f"{prefix}{i:02d}",
                "title": " ".join(words[:3]).title(),
                "url": f"https://example.org/{prefix}{i:02d}",
                "text": body,
                "attributes": attributes,
                "quality": round(rng.uniform(0.3, 1.0), 2),
            }
        )

    pol = CLUSTERS["politics"]
    cul = CLUSTERS["culture"]
    # mainstream political pages: western region or unlabeled
    for i in range(10):
        words = ["politics"] + rng.sample(pol[1:], 4)
        region = REGION_WEST if i < 3 else None
        add("pol", i, words, region)
    # biographies of politicians: gendered, mixed regions
    for i in range(10, 16):
        name = f"{rng.choice(FIRST_NAMES)} {rng.choice(LAST_NAMES)}"
        words = rng.sample(["politicians", "political", "liberal", "debate", "vote"], 3)
        region = rng.choice([REGION_WEST, REGION_NORTH, None])
        gender = "male" if i % 2 == 0 else "female"
        add("pol", i, words, region, gender, extra=f"biography of {name}")
    # culture/religion angle on politics: eastern and southern regions
    for i in range(16, 24):
        words = ["politics"] + rng.sample(cul, 3) + rng.sample(pol[1:], 1)
        region = rng.choice([REGION_EAST, REGION_SOUTH, [REGION_EAST, REGION_SOUTH]])
        add("pol", i, words, region)

    mus = CLUSTERS["music"]
    for i in range(10):
        words = ["music"] + rng.sample(mus[1:], 4)
        region = REGION_NORTH if i < 4 else None
        add("mus", i, words, region)
    for i in range(10, 14):
        name = f"{rng.choice(FIRST_NAMES)} {rng.choice(LAST_NAMES)}"
        words = rng.sample(["classical", "concert", "orchestra", "opera"], 3)
        gender = "female" if i % 2 == 0 else "male"
        add("mus", i, words, rng.choice([REGION_NORTH, REGION_EAST]), gender,
            extra=f"biography of {name}")

    ene = CLUSTERS["energy"]
    for i in range(8):
        words = ["solar"] + rng.sample([w for w in ene if w != "solar"], 4)
        add("ene", i, words, REGION_WEST if i < 4 else REGION_SOUTH)

    return docs


def _vectors(rng: random.Random) -> dict[str, list[float]]:
    bases = {
        "politics": [1.0, 0.0, 0.0, 0.0],
        "culture": [0.6, 0.5, 0.0, 0.0],
        "music": [0.0, 0.0, 1.0, 0.0],
        "energy": [0.0, 0.0, 0.0, 1.0],
    }
    vectors = {}
    for cluster, words in CLUSTERS.items():
        base = bases[cluster]
        for word in words:
            vec = [v + rng.uniform(-0.08, 0.08) for v in base]
            vectors[word] = [round(x, 5) for x in vec]
    for word in ["biography", "famous", "pages"]:
        vectors[word] = [round(rng.uniform(-0.2, 0.2), 5) for _ in range(4)]
    return vectors


def synthesize_response(prompt: str) -> str:
    """Canned LLM: numbered queries composed from the prompt's own words.

    Newest keyword first, so each expansion round introduces at least
    one query the engine has not seen yet.
    """
    lines = prompt.strip().splitlines()
    topic = lines[-2].split(":", 1)[1].strip()
    keywords = [k.strip() for k in lines[-1].split(":", 1)[1].split(",") if k.strip()]
    queries = [f"{topic} {kw}" for kw in reversed(keywords)]
    queries += [f"{a} {b}" for a, b in zip(keywords, keywords[1:])]
    return "\n".join(f"{i}. {q}" for i, q in enumerate(queries[:10], start=1))


class _Recorder:
    def __init__(self):
        self.responses: dict[str, str] = {}

    def complete(self, prompt: str) -> str:
        response = synthesize_response(prompt)
        self.responses[prompt] = response
        return response


def main() -> None:
    rng = random.Random(20240601)
    OUT.mkdir(parents=True, exist_ok=True)

    docs = _cluster_docs(rng)
    corpus_path = OUT / "corpus.jsonl"
    corpus_path.write_text(
        "\n".join(json.dumps(d, sort_keys=True) for d in docs) + "\n", encoding="utf-8"
    )

    topics = [
        {"id": "t-politics", "title": "politics",
         "keywords": ["election", "government", "debate"],
         "relevant_docs": ["pol00", "pol01", "pol02"]},
        {"id": "t-music", "title": "music",
         "keywords": ["bach", "violin", "cantata"],
         "relevant_docs": ["mus00", "mus01"]},
        {"id": "t-energy", "title": "solar",
         "keywords": ["energy", "panels", "grid"],
         "relevant_docs": ["ene00"]},
    ]
    topics_path = OUT / "topics.jsonl"
    topics_path.write_text(
        "\n".join(json.dumps(t, sort_keys=True) for t in topics) + "\n", encoding="utf-8"
    )

    schema_path = OUT / "schema.json"
    schema_path.write_text(json.dumps(DIMENSIONS) + "\n", encoding="utf-8")

    vectors = _vectors(rng)
    vectors_path = OUT / "vectors.txt"
    vectors_path.write_text(
        "\n".join(f"{w} " + " ".join(str(x) for x in vec) for w, vec in sorted(vectors.items()))
        + "\n",
        encoding="utf-8",
    )

    # n=10 keeps result sets below the per-topic document count, so
    # candidate queries can actually retrieve different subsets
    config_path = OUT / "config.json"
    config = {
        "dimensions": DIMENSIONS,
        "k": 10,
        "n": 10,
        "max_iter": 5,
        "method": "m2",
        "unlabeled_policy": "exclude-unlabeled",
        "neighbor_words": 10,
    }
    config_path.write_text(json.dumps(config, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    # record fixtures by running the real engine over every topic x method
    corpus = load_corpus(corpus_path, DIMENSIONS)
    index = build_index(corpus)
    store = load_vectors(vectors_path)
    topic_objs = load_queries(topics_path, corpus)
    # record with a k the loop can never satisfy, so every expansion
    # prompt up to max_iter gets captured; replays with any smaller k,
    # any n and any max_iter <= 5 stay inside this fixture set
    recorder = _Recorder()
    engine_config = EngineConfig(k=50, n=10, max_iter=5, neighbor_words=10)
    from dataclasses import replace

    accepted: set[str] = set()
    for topic in topic_objs:
        for method in (Method.M1, Method.M2, Method.M3):
            result = recommend(
                topic.title,
                replace(engine_config, method=method),
                index,
                corpus,
                store,
                recorder,
                topic=topic,
            )
            accepted.update(result.rec_queries)
    # one accept-level deep: recommending for a recommended query must
    # also replay offline (the UI re-runs the loop when one is accepted)
    for query in sorted(accepted):
        try:
            recommend(query, engine_config, index, corpus, store, recorder)
        except Exception:
            pass  # single embedding words may be out of vocabulary etc.

    fixtures_path = OUT / "fixtures.json"
    fixtures_path.write_text(
        json.dumps(build_fixture(recorder.responses), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )

    print(f"wrote {len(docs)} docs, {len(topics)} topics, "
          f"{len(vectors)} vectors, {len(recorder.responses)} fixtures -> {OUT}")


if __name__ == "__main__":
    main()
