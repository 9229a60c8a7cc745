import random
from dataclasses import replace

import pytest

from bqr.candidates import Method
from bqr.corpus import QueryTopic
from bqr.engine import EngineConfig, recommend
from bqr.errors import BqrError
from bqr.evaluation import (
    domination_score,
    manifest_json,
    method_matrix,
    run_manifest,
    scatter_csv,
    scatter_rows,
)
from bqr.index import ResultSet
from bqr.scoring import DimensionKind, DimensionSpec, ScoredQuery

from conftest import RecordingProvider, keyword_synthesizer

from test_engine import solar_world

MAX2 = tuple(DimensionSpec(f"v{i}", DimensionKind.ENTROPY) for i in range(2))


def sq(values, query="q"):
    return ScoredQuery(
        query=query,
        result_set=ResultSet(query=query, hits=(), n_requested=0),
        dim_scores=tuple((f"v{i}", v) for i, v in enumerate(values)),
    )


class TestDominationScore:
    def test_hand_counted_pair(self):
        recs_a = [sq((0.2, 0.2), "a0")]
        recs_b = [sq((0.5, 0.5), "b0"), sq((0.1, 0.1), "b1")]
        assert domination_score(recs_a, recs_b, MAX2) == 1  # b0 dominates a0
        assert domination_score(recs_b, recs_a, MAX2) == 1  # a0 dominates b1

    def test_identical_sets_score_zero(self):
        recs = [sq((0.2, 0.2), "x"), sq((0.5, 0.1), "y")]
        assert domination_score(recs, recs, MAX2) == 0

    def test_empty_side(self):
        assert domination_score([sq((0.1, 0.1))], [], MAX2) == 0
        assert domination_score([], [sq((0.1, 0.1))], MAX2) == 0

    def test_full_domination_reaches_product(self):
        recs_a = [sq((0.1, 0.1), "a0"), sq((0.2, 0.1), "a1")]
        recs_b = [sq((0.5, 0.5), "b0"), sq((0.9, 0.9), "b1"), sq((0.7, 0.6), "b2")]
        assert domination_score(recs_a, recs_b, MAX2) == 6

    def test_antisymmetry_bound(self):
        rng = random.Random(77)
        for _ in range(100):
            recs_a = [sq((rng.random(), rng.random()), f"a{i}") for i in range(rng.randint(0, 6))]
            recs_b = [sq((rng.random(), rng.random()), f"b{i}") for i in range(rng.randint(0, 6))]
            ab = domination_score(recs_a, recs_b, MAX2)
            ba = domination_score(recs_b, recs_a, MAX2)
            assert ab >= 0 and ba >= 0
            assert ab + ba <= len(recs_a) * len(recs_b)

    def test_layout_mismatch(self):
        other = ScoredQuery("q", ResultSet("q", (), 0), (("different", 0.1),))
        with pytest.raises(BqrError):
            domination_score([sq((0.1, 0.2))], [other], MAX2)


def eval_world():
    corpus, index, store = solar_world()
    topics = [
        QueryTopic("t-solar", "solar", ("power", "energy")),
        QueryTopic("t-lunar", "lunar", ("base", "colony")),
    ]
    config = EngineConfig(k=4, n=20, max_iter=2, neighbor_words=2)
    return corpus, index, store, topics, config


class TestMethodMatrix:
    def test_cells_match_per_pair_oracle(self):
        corpus, index, store, topics, config = eval_world()
        provider = RecordingProvider(keyword_synthesizer)
        methods = [Method.M1, Method.M3]
        matrix = method_matrix(topics, methods, config, index, corpus, store, provider)

        full = config.with_dims_for(corpus)
        for topic in topics:
            per_method = {}
            for method in methods:
                result = recommend(
                    topic.title, replace(full, method=method), index, corpus, store,
                    RecordingProvider(keyword_synthesizer), topic=topic,
                )
                per_method[method.value] = result.recs
            for a in methods:
                for b in methods:
                    expected = domination_score(
                        per_method[a.value], per_method[b.value], full.dims
                    )
                    assert matrix.cells[(topic.topic_id, a.value, b.value)] == expected

        for a in methods:
            for b in methods:
                total = sum(
                    matrix.cells[(t.topic_id, a.value, b.value)] for t in topics
                )
                assert matrix.totals[(a.value, b.value)] == total

    def test_single_method_self_cell(self):
        corpus, index, store, topics, config = eval_world()
        provider = RecordingProvider(keyword_synthesizer)
        matrix = method_matrix(topics[:1], [Method.M1], config, index, corpus, store, provider)
        assert list(matrix.cells) == [("t-solar", Method.M1.value, Method.M1.value)]
        # recommendation sets are fronts, so the self-cell is always 0
        assert matrix.cells[("t-solar", Method.M1.value, Method.M1.value)] == 0
        assert matrix.summary()[f"{Method.M1.value} over {Method.M1.value}"]["bucket"] == "self"

    def test_topic_without_keywords_marks_m3_inapplicable(self):
        corpus, index, store, topics, config = eval_world()
        bare = QueryTopic("t-bare", "solar", ())
        provider = RecordingProvider(keyword_synthesizer)
        matrix = method_matrix(
            [topics[0], bare], [Method.M1, Method.M3], config, index, corpus, store, provider
        )
        assert matrix.cells[("t-bare", Method.M1.value, Method.M3.value)] is None
        assert matrix.cells[("t-bare", Method.M3.value, Method.M1.value)] is None
        assert matrix.cells[("t-bare", Method.M1.value, Method.M1.value)] is not None
        assert any(f["topic_id"] == "t-bare" and f["method"] == Method.M3.value for f in matrix.failures)
        # the failing cell renders as NA in the CSV
        assert "t-bare,m1-embedding,m3-llm-keywords,NA" in matrix.to_csv()

    def test_csv_is_deterministic(self):
        corpus, index, store, topics, config = eval_world()

        def run():
            provider = RecordingProvider(keyword_synthesizer)
            matrix = method_matrix(
                topics, [Method.M1, Method.M2, Method.M3], config, index, corpus, store, provider
            )
            return matrix.to_csv()

        assert run() == run()

    def test_csv_schema(self):
        corpus, index, store, topics, config = eval_world()
        provider = RecordingProvider(keyword_synthesizer)
        matrix = method_matrix(topics[:1], [Method.M1], config, index, corpus, store, provider)
        lines = matrix.to_csv().splitlines()
        assert lines[0] == "topic_id,method_a,method_b,score"
        assert lines[1].startswith("t-solar,")
        assert lines[-1].startswith("TOTAL,")

    def test_summary_buckets(self):
        corpus, index, store, topics, config = eval_world()
        provider = RecordingProvider(keyword_synthesizer)
        matrix = method_matrix(
            topics, [Method.M1, Method.M3], config, index, corpus, store, provider
        )
        summary = matrix.summary()
        non_self = [v for v in summary.values() if v["bucket"] != "self"]
        assert non_self
        scores = [v["score"] for v in non_self]
        if max(scores) != min(scores):
            assert any(v["bucket"] == "high" and v["score"] == max(scores) for v in non_self)
            assert any(v["bucket"] == "low" and v["score"] == min(scores) for v in non_self)
        else:
            assert all(v["bucket"] == "mid" for v in non_self)


class TestScatterExport:
    def test_rows_cover_original_and_all_candidates(self):
        corpus, index, store, topics, config = eval_world()
        result = recommend("solar", replace(config, method=Method.M1), index, corpus, store)
        rows = scatter_rows(result)
        queries = {q for q, _, _, _ in rows}
        scored = {c["query"] for t in result.trace for c in t["scored"]}
        assert queries == {"solar"} | scored
        dims = {d for _, d, _, _ in rows}
        assert dims == {"geography", "gender", "relevance"}
        flagged = {q for q, _, _, f in rows if f}
        assert flagged == set(result.rec_queries)

    def test_csv_header(self):
        corpus, index, store, topics, config = eval_world()
        result = recommend("solar", replace(config, method=Method.M1), index, corpus, store)
        lines = scatter_csv(result).splitlines()
        assert lines[0] == "query,dim_name,value,on_front"
        assert len(lines) == 1 + len(scatter_rows(result))


class TestManifest:
    def test_contains_config_and_hashes(self, tmp_path):
        corpus, index, store, topics, config = eval_world()
        payload = tmp_path / "corpus.jsonl"
        payload.write_text("{}", encoding="utf-8")
        manifest = run_manifest(
            config.with_dims_for(corpus), [Method.M1], topics, {"corpus": payload}
        )
        assert manifest["config"]["k"] == 4
        assert manifest["methods"] == [Method.M1.value]
        assert manifest["topics"] == ["t-solar", "t-lunar"]
        assert len(manifest["files"]["corpus"]) == 64
        text = manifest_json(manifest)
        assert text.endswith("\n")
        assert manifest_json(manifest) == text
