import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vrsd import veccore
from vrsd.algorithms import (
    CandidateSet,
    EmbeddingRecord,
    MmrParams,
    Query,
    SameSideScenario,
    build_same_side_scenario,
    cosine_topk,
    mmr_select,
    random_same_side_scenario,
    top_n_filter,
    vrsd_select,
)
from vrsd.errors import DimensionMismatch, DuplicateId, InvalidLambda, InvalidScenario, KTooLarge, ZeroNorm

from conftest import random_instance, random_orthogonal

ALGOS = {
    "cosine": cosine_topk,
    "mmr0": lambda c, q, k: mmr_select(c, q, k, 0.0),
    "mmr05": lambda c, q, k: mmr_select(c, q, k, 0.5),
    "mmr1": lambda c, q, k: mmr_select(c, q, k, 1.0),
    "vrsd": vrsd_select,
}


# -- types -------------------------------------------------------------------


def test_candidate_set_validation():
    with pytest.raises(DuplicateId):
        CandidateSet.from_vectors([[1, 0], [0, 1]], ["a", "a"])
    with pytest.raises(DimensionMismatch):
        CandidateSet.from_vectors([[1, 0], [0, 1, 0]])
    with pytest.raises(ZeroNorm):
        EmbeddingRecord("z", [0.0, 0.0])
    with pytest.raises(ValueError):
        EmbeddingRecord("", [1.0])
    with pytest.raises(ZeroNorm):
        Query("q", [0, 0])
    # duplicate vectors under distinct ids are fine
    assert len(CandidateSet.from_vectors([[1, 0], [1, 0]])) == 2


@pytest.mark.parametrize("lam", [-0.1, 1.5, math.nan])
def test_invalid_lambda(lam):
    with pytest.raises(InvalidLambda):
        MmrParams(lam)


# -- top_n_filter ------------------------------------------------------------


def test_top_n_filter_examples():
    cands = CandidateSet.from_vectors([[1, 0], [0, 1], [0.9, 0.1]], ["a", "b", "c"])
    q = Query("q", [1, 0])
    # cosines 1.0, 0.0, 0.99388 (mpmath)
    assert top_n_filter(cands, q, 2).ids == ["a", "c"]
    assert top_n_filter(cands, q, 1).ids == ["a"]
    assert top_n_filter(cands, q, 10).ids == ["a", "c", "b"]


def test_top_n_filter_ties_keep_input_order():
    cands = CandidateSet.from_vectors([[0, 1], [1, 1], [2, 2], [1, 1]], ["w", "x", "y", "z"])
    assert top_n_filter(cands, Query("q", [1, 1]), 3).ids == ["x", "y", "z"]


def test_top_n_filter_dimension_check():
    cands = CandidateSet.from_vectors([[1, 0]])
    with pytest.raises(DimensionMismatch):
        top_n_filter(cands, Query("q", [1, 0, 0]), 1)


# -- worked fixture ----------------------------------------------------------


def test_cosine_topk_fixture(fixture_instance):
    cands, q = fixture_instance
    # cos: a 0.997054, b 0.998868, c 0.976187 (mpmath)
    res = cosine_topk(cands, q, 2)
    assert res.selected_ids == ("b", "a")
    assert cosine_topk(cands, q, 1).selected_ids == ("b",)
    assert cosine_topk(cands, q, 3).selected_ids == ("b", "a", "c")


def test_vrsd_fixture(fixture_instance):
    cands, q = fixture_instance
    res = vrsd_select(cands, q, 2)
    assert res.selected_ids == ("b", "a")
    assert res.sum_vector == (8.0, 2.0)
    assert res.score == 1.0
    # step 1 compared cos([8,2],q)=1.0 against cos([7,2],q)=0.999445 (mpmath)
    assert res.steps[0].objective_value == pytest.approx(0.998868137724437566, abs=1e-15)
    assert res.steps[1].objective_value == 1.0
    assert res.candidate_evaluations == 2


def test_vrsd_k1_and_full(fixture_instance):
    cands, q = fixture_instance
    one = vrsd_select(cands, q, 1)
    assert one.selected_ids == ("b",)
    assert one.score == pytest.approx(0.998868137724437566, abs=1e-15)
    full = vrsd_select(cands, q, 3)
    assert sorted(full.selected_ids) == ["a", "b", "c"]
    assert full.sum_vector == (10.0, 3.0)
    assert full.score == pytest.approx(0.998920086078065841, abs=1e-15)


def test_k_too_large(fixture_instance):
    cands, q = fixture_instance
    for fn in ALGOS.values():
        with pytest.raises(KTooLarge):
            fn(cands, q, 4)
        with pytest.raises(ValueError):
            fn(cands, q, 0)


def test_mmr_lambda_one_is_cosine_order(fixture_instance):
    cands, q = fixture_instance
    assert mmr_select(cands, q, 3, 1.0).selected_ids == cosine_topk(cands, q, 3).selected_ids


def test_mmr_first_pick_fixed_for_any_lambda(fixture_instance):
    cands, q = fixture_instance
    for lam in (0.0, 0.25, 0.5, 1.0):
        assert mmr_select(cands, q, 1, lam).selected_ids == ("b",)


def test_mmr_step_value_matches_formula():
    # hand-checkable: q=[1,0]; a at 0 deg, b at 60 deg, c at 90 deg
    cands = CandidateSet.from_vectors([[1, 0], [0.5, math.sqrt(3) / 2], [0, 1]], ["a", "b", "c"])
    res = mmr_select(cands, Query("q", [1, 0]), 2, 0.5)
    # b: 0.5*0.5 - 0.5*0.5 = 0 ; c: 0.5*0 - 0.5*0 = 0 -> tie, lowest index b
    assert res.selected_ids == ("a", "b")
    assert res.steps[1].objective_value == pytest.approx(0.0, abs=1e-15)


# -- VRSD zero-sum handling --------------------------------------------------


def test_vrsd_skips_cancelling_candidate():
    cands = CandidateSet.from_vectors([[1, 0], [-1, 0], [0, 1]], ["a", "neg", "up"])
    res = vrsd_select(cands, Query("q", [1, 0.01]), 2)
    assert res.selected_ids == ("a", "up")
    assert not res.degenerate


def test_vrsd_all_cancelling_is_flagged():
    cands = CandidateSet.from_vectors([[1, 0], [-1, 0], [-1, 0]], ["a", "n1", "n2"])
    res = vrsd_select(cands, Query("q", [1, 0]), 2)
    assert res.selected_ids == ("a", "n1")
    assert res.degenerate
    assert res.steps[1].degenerate and res.steps[1].objective_value == 0.0
    assert res.score == 0.0


# -- same-side scenario ------------------------------------------------------


def test_build_same_side_scenario():
    s = SameSideScenario(math.radians(10), (math.radians(20),))
    cands, q = build_same_side_scenario(s)
    assert len(cands) == 2
    np.testing.assert_allclose(cands[0].vector, [math.cos(math.radians(10)), math.sin(math.radians(10))])
    cands, q = build_same_side_scenario(SameSideScenario(math.radians(10), tuple(map(math.radians, (20, 30, 40)))))
    assert len(cands) == 4
    assert cosine_topk(cands, q, 1).selected_ids == (cands[0].id,)


@pytest.mark.parametrize("theta, angles", [
    (math.radians(10), (math.radians(90),)),
    (math.radians(10), (math.radians(100),)),
    (math.radians(20), (math.radians(10),)),
    (0.0, (0.5,)),
    (0.3, (0.5, 0.5)),
])
def test_invalid_scenarios(theta, angles):
    with pytest.raises(InvalidScenario):
        SameSideScenario(theta, angles)


def test_same_side_mmr_order_10_20_30_40():
    s = SameSideScenario(math.radians(10), tuple(map(math.radians, (20, 30, 40))))
    cands, q = build_same_side_scenario(s)
    # direct evaluation of the MMR objective at each step
    res = mmr_select(cands, q, 4, 0.5)
    assert res.selected_ids == ("d0", "d1", "d2", "d3")


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_same_side_mmr_ascending_property(seed, m):
    s = random_same_side_scenario(np.random.default_rng(seed), m)
    cands, q = build_same_side_scenario(s)
    assert mmr_select(cands, q, m + 1, 0.5).selected_ids == tuple(cands.ids)


# -- structural invariants on random instances -------------------------------


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 15), st.integers(1, 6), st.data())
def test_selection_result_invariants(seed, n, d, data):
    cands, q = random_instance(np.random.default_rng(seed), n, d)
    k = data.draw(st.integers(1, n))
    cos_q = [veccore.cosine(r.vector, q.vector) for r in cands]
    top = max(range(n), key=lambda i: (cos_q[i], -i))
    by_id = {r.id: r.vector for r in cands}
    for name, fn in ALGOS.items():
        res = fn(cands, q, k)
        assert len(res.selected_ids) == k == len(set(res.selected_ids))
        total = veccore.sum_vectors([by_id[i] for i in res.selected_ids])
        np.testing.assert_allclose(res.sum_vector, total, atol=1e-12)
        if veccore.norm(total) > 0:
            assert res.score == pytest.approx(veccore.cosine(total, q.vector), abs=1e-12)
        assert res.selected_ids[0] == cands[top].id
        assert all(s.candidates_scanned == n - i for i, s in enumerate(res.steps))


def test_vrsd_step_optimality_by_rescan(rng):
    for _ in range(20):
        cands, q = random_instance(rng, 30, 8)
        res = vrsd_select(cands, q, 6)
        by_id = {r.id: r.vector for r in cands}
        chosen = [res.selected_ids[0]]
        for step in res.steps[1:]:
            s = veccore.sum_vectors([by_id[i] for i in chosen])
            rest = [r.id for r in cands if r.id not in chosen]
            values = [veccore.cosine(s + by_id[i], q.vector) for i in rest]
            best = max(values)
            assert step.chosen_id == rest[values.index(best)]
            assert step.objective_value == best
            chosen.append(step.chosen_id)


@pytest.mark.parametrize("n,k", [(5, 2), (10, 4), (20, 20), (50, 10)])
def test_counter_closed_forms(rng, n, k):
    cands, q = random_instance(rng, n, 4)
    assert vrsd_select(cands, q, k).candidate_evaluations == (k - 1) * n - k * (k - 1) // 2
    assert mmr_select(cands, q, k, 0.5).pair_similarity_evaluations == sum(i * (n - i) for i in range(1, k))


def test_invariances(rng):
    for _ in range(10):
        cands, q = random_instance(rng, 12, 6)
        Q = random_orthogonal(rng, 6)
        rotated = cands.transformed(lambda v: Q @ v)
        q_rot = Query(q.id, Q @ q.vector)
        for fn in ALGOS.values():
            base = fn(cands, q, 4).selected_ids
            for c in (0.1, 10.0):
                assert fn(cands, q.scaled(c), 4).selected_ids == base
            assert fn(rotated, q_rot, 4).selected_ids == base


def test_results_independent_of_threading(rng):
    from concurrent.futures import ThreadPoolExecutor

    instances = [random_instance(rng, 25, 8) for _ in range(16)]
    serial = [vrsd_select(c, q, 5) for c, q in instances]
    with ThreadPoolExecutor(4) as pool:
        parallel = list(pool.map(lambda cq: vrsd_select(cq[0], cq[1], 5), instances))
    assert serial == parallel
