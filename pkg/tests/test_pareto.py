import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bqr.errors import BqrError
from bqr.index import ResultSet
from bqr.pareto import OrientedVector, dominates, oriented, pareto_front, pseudo_pareto_front
from bqr.scoring import DimensionKind, DimensionSpec, Orientation, ScoredQuery

MAX3 = tuple(DimensionSpec(f"v{i}", DimensionKind.ENTROPY) for i in range(3))
MAX2 = tuple(DimensionSpec(f"v{i}", DimensionKind.ENTROPY) for i in range(2))


def sq(values, query="q", specs=MAX3):
    names = [s.name for s in specs]
    return ScoredQuery(
        query=query,
        result_set=ResultSet(query=query, hits=(), n_requested=0),
        dim_scores=tuple(zip(names, values)),
    )


def mx(*values):
    return OrientedVector(tuple(values), tuple(Orientation.MAXIMIZE for _ in values))


def brute_front_indices(vectors: list[tuple[float, ...]]) -> set[int]:
    """Independent oracle: numpy matrix dominance check, all-maximize space."""
    arr = np.asarray(vectors, dtype=float)
    kept = set()
    for i in range(len(arr)):
        dominated = np.any(np.all(arr >= arr[i], axis=1) & np.any(arr > arr[i], axis=1))
        if not dominated:
            kept.add(i)
    return kept


class TestDominates:
    def test_clear_dominance(self):
        assert dominates(mx(0.5, 0.5), mx(0.4, 0.4))

    def test_equal_vectors_never_dominate(self):
        assert not dominates(mx(0.5, 0.5), mx(0.5, 0.5))

    def test_incomparable(self):
        assert not dominates(mx(0.9, 0.1), mx(0.5, 0.5))
        assert not dominates(mx(0.5, 0.5), mx(0.9, 0.1))

    def test_orientation_mismatch(self):
        a = OrientedVector((1.0,), (Orientation.MAXIMIZE,))
        b = OrientedVector((1.0,), (Orientation.MINIMIZE,))
        with pytest.raises(BqrError):
            dominates(a, b)

    def test_length_mismatch(self):
        with pytest.raises(BqrError):
            OrientedVector((1.0, 2.0), (Orientation.MAXIMIZE,))

    def test_minimize_orientation(self):
        a = OrientedVector((0.1,), (Orientation.MINIMIZE,))
        b = OrientedVector((0.9,), (Orientation.MINIMIZE,))
        assert dominates(a, b)

    def test_minimize_absolute_orientation(self):
        a = OrientedVector((0.1,), (Orientation.MINIMIZE_ABS,))
        b = OrientedVector((-0.9,), (Orientation.MINIMIZE_ABS,))
        assert dominates(a, b)

    def test_irreflexive_and_transitive_on_sampled_triples(self):
        rng = random.Random(11)
        for _ in range(500):
            a, b, c = (mx(*(rng.random() for _ in range(3))) for _ in range(3))
            assert not dominates(a, a)
            if dominates(a, b) and dominates(b, c):
                assert dominates(a, c)
            if dominates(a, b):
                assert not dominates(b, a)


class TestParetoFront:
    def test_three_vector_example(self):
        cands = [sq((0.9, 0.1, 0.5)), sq((0.5, 0.5, 0.5)), sq((0.4, 0.4, 0.4))]
        assert pareto_front(cands, MAX3) == cands[:2]

    def test_single_candidate(self):
        cands = [sq((0.3, 0.3, 0.3))]
        assert pareto_front(cands, MAX3) == cands

    def test_duplicates_all_kept(self):
        cands = [sq((0.5, 0.5, 0.5), "a"), sq((0.5, 0.5, 0.5), "b")]
        assert pareto_front(cands, MAX3) == cands

    def test_empty_input(self):
        assert pareto_front([], MAX3) == []

    def test_layout_mismatch_rejected(self):
        with pytest.raises(BqrError, match="layout"):
            pareto_front([sq((1.0, 1.0), specs=MAX2)], MAX3)

    def test_matches_brute_force_oracle(self):
        rng = random.Random(2024)
        for _ in range(100):
            vectors = [tuple(rng.random() for _ in range(3)) for _ in range(100)]
            cands = [sq(v, f"q{i}") for i, v in enumerate(vectors)]
            front = pareto_front(cands, MAX3)
            got = {c.query for c in front}
            expected = {f"q{i}" for i in brute_front_indices(vectors)}
            assert got == expected

    def test_front_is_an_antichain_and_covers_exclusions(self):
        rng = random.Random(5)
        vectors = [tuple(rng.random() for _ in range(3)) for _ in range(60)]
        cands = [sq(v, f"q{i}") for i, v in enumerate(vectors)]
        front = pareto_front(cands, MAX3)
        front_vecs = [oriented(c, MAX3) for c in front]
        for i, a in enumerate(front_vecs):
            for j, b in enumerate(front_vecs):
                if i != j:
                    assert not dominates(a, b)
        excluded = [c for c in cands if c not in front]
        for c in excluded:
            assert any(dominates(f, oriented(c, MAX3)) for f in front_vecs)

    def test_monotone_transform_invariance(self):
        rng = random.Random(6)
        vectors = [tuple(rng.random() for _ in range(3)) for _ in range(50)]
        cands = [sq(v, f"q{i}") for i, v in enumerate(vectors)]
        transformed = [
            sq(tuple(2 * x + 1 for x in v), f"q{i}") for i, v in enumerate(vectors)
        ]
        before = {c.query for c in pareto_front(cands, MAX3)}
        after = {c.query for c in pareto_front(transformed, MAX3)}
        assert before == after

    def test_adding_a_point_only_shrinks_or_extends(self):
        # front(S + {x}) is contained in front(S) + {x}
        rng = random.Random(7)
        for _ in range(50):
            vectors = [tuple(rng.random() for _ in range(3)) for _ in range(20)]
            cands = [sq(v, f"q{i}") for i, v in enumerate(vectors)]
            extra = sq(tuple(rng.random() for _ in range(3)), "extra")
            base = {c.query for c in pareto_front(cands, MAX3)}
            grown = {c.query for c in pareto_front(cands + [extra], MAX3)}
            assert grown <= base | {"extra"}

    def test_order_preserved(self):
        cands = [sq((0.1, 0.9, 0.5), "b"), sq((0.9, 0.1, 0.5), "a")]
        assert [c.query for c in pareto_front(cands, MAX3)] == ["b", "a"]


@settings(max_examples=200)
@given(
    st.lists(
        st.tuples(
            st.floats(0, 1, allow_nan=False), st.floats(0, 1, allow_nan=False),
            st.floats(0, 1, allow_nan=False),
        ),
        min_size=0,
        max_size=30,
    )
)
def test_front_matches_oracle_hypothesis(vectors):
    cands = [sq(v, f"q{i}") for i, v in enumerate(vectors)]
    front = pareto_front(cands, MAX3)
    assert {c.query for c in front} == {f"q{i}" for i in brute_front_indices(vectors)}


SIGNED_SPECS = (
    DimensionSpec("bias", DimensionKind.SIGNED_MEAN),
    DimensionSpec("relevance", DimensionKind.RELEVANCE),
)


def ssq(bias, relevance, query="q"):
    return ScoredQuery(
        query=query,
        result_set=ResultSet(query=query, hits=(), n_requested=0),
        dim_scores=(("bias", bias), ("relevance", relevance)),
    )


class TestPseudoParetoFront:
    def test_opposite_sign_high_bias_retained(self):
        # original bias +0.8: the low-|bias| candidate wins branch (a),
        # the strongly negative one joins via branch (b)
        low = ssq(0.2, 0.5, "low")
        opposite = ssq(-0.9, 0.9, "opp")
        got = pseudo_pareto_front([low, opposite], SIGNED_SPECS, "bias", 0.8)
        assert got == [low, opposite]

    def test_without_opposite_candidates_equals_plain_front(self):
        cands = [ssq(0.2, 0.5, "a"), ssq(0.4, 0.4, "b"), ssq(0.5, 0.2, "c")]
        plain = pareto_front(cands, SIGNED_SPECS)
        assert pseudo_pareto_front(cands, SIGNED_SPECS, "bias", 0.8) == plain

    def test_all_identical_retained(self):
        cands = [ssq(0.3, 0.3, f"q{i}") for i in range(3)]
        assert pseudo_pareto_front(cands, SIGNED_SPECS, "bias", 0.8) == cands

    def test_opposite_subset_prefers_stronger_counter_bias(self):
        weak = ssq(-0.1, 0.5, "weak")
        strong = ssq(-0.9, 0.5, "strong")
        got = pseudo_pareto_front([weak, strong], SIGNED_SPECS, "bias", 0.8)
        # weak wins |bias| minimization, strong wins the opposite-sign branch
        assert got == [weak, strong]

    def test_dominated_opposite_candidate_dropped(self):
        strong = ssq(-0.9, 0.9, "strong")
        mild = ssq(-0.2, 0.5, "mild")
        worse = ssq(-0.5, 0.1, "worse")
        got = pseudo_pareto_front([strong, mild, worse], SIGNED_SPECS, "bias", 0.8)
        # worse loses branch (a) to mild (smaller |bias|, higher relevance)
        # and branch (b) to strong (stronger counter-bias, higher relevance)
        assert got == [strong, mild]

    def test_zero_original_sign_means_plain_front(self):
        cands = [ssq(-0.9, 0.1, "a"), ssq(0.1, 0.2, "b")]
        plain = pareto_front(cands, SIGNED_SPECS)
        assert pseudo_pareto_front(cands, SIGNED_SPECS, "bias", 0.0) == plain

    def test_wrong_kind_rejected(self):
        with pytest.raises(BqrError, match="signed-mean"):
            pseudo_pareto_front([sq((1, 1, 1))], MAX3, "v0", 0.5)

    def test_unknown_dimension_rejected(self):
        with pytest.raises(BqrError, match="unknown"):
            pseudo_pareto_front([ssq(0.1, 0.1)], SIGNED_SPECS, "nope", 0.5)

    def test_empty_input(self):
        assert pseudo_pareto_front([], SIGNED_SPECS, "bias", 1.0) == []
