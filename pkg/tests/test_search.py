import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_colorable, finite_distance_matrix, greedy_reference
from packdist.core import DistanceSet, verify_segment
from packdist.search import (
    BUDGET,
    SAT,
    UNSAT,
    SearchInstance,
    exact_search,
    finite_distances,
    greedy,
    greedy_sweep,
    smallest_unsat_n,
    sweep_csv,
    verify_finite,
)

SMALL_D = st.sampled_from([(1,), (1, 2), (1, 3), (2, 3), (1, 4), (2, 5)])


def test_trivial_instances():
    r = exact_search(SearchInstance(DistanceSet((1,)), 2, 2))
    assert r.verdict == SAT and r.certificate == (1, 2)
    assert exact_search(SearchInstance(DistanceSet((1,)), 3, 1)).verdict == UNSAT


def test_instance_validation():
    with pytest.raises(ValueError):
        SearchInstance(DistanceSet((1,)), 0, 1)
    with pytest.raises(ValueError):
        SearchInstance(DistanceSet((1,)), 3, 0)


@given(SMALL_D, st.integers(1, 30))
@settings(max_examples=40)
def test_finite_distances_match_floyd_warshall(d, n):
    ours = finite_distances(DistanceSet(d), n)
    ref = finite_distance_matrix(d, n)
    ref = np.where(ref >= 10**6, -1, ref)
    assert (ours == ref).all()


def test_finite_distances_exceed_infinite_ones():
    # in Z, 0 -> 5 -> 4 takes two steps; inside 0..4 the long edge is missing
    from packdist.core import dist_1t

    assert dist_1t(4, 5) == 2
    assert finite_distances(DistanceSet((1, 5)), 5)[0, 4] == 4
    assert finite_distances(DistanceSet((1, 5)), 6)[0, 4] == 2


@given(SMALL_D, st.integers(1, 10), st.integers(1, 4), st.booleans())
@settings(max_examples=80)
def test_search_matches_enumeration(d, n, k, memo):
    res = exact_search(SearchInstance(DistanceSet(d), n, k), memo=memo)
    sat, _ = brute_colorable(d, n, k)
    assert res.verdict == (SAT if sat else UNSAT)
    if res.sat:
        assert verify_finite(res.certificate, DistanceSet(d)).valid
        assert max(res.certificate) <= k


@given(SMALL_D, st.integers(2, 16), st.integers(2, 5))
@settings(max_examples=40)
def test_unsat_is_monotone_in_n(d, n, k):
    ds = DistanceSet(d)
    if exact_search(SearchInstance(ds, n, k)).unsat:
        assert exact_search(SearchInstance(ds, n + 3, k)).unsat


def test_memo_does_not_change_verdicts():
    ds = DistanceSet((1, 3))
    for n in (30, 40, 50):
        a = exact_search(SearchInstance(ds, n, 7), memo=True)
        b = exact_search(SearchInstance(ds, n, 7), memo=False)
        assert a.verdict == b.verdict


def test_budget_is_reported_separately():
    res = exact_search(SearchInstance(DistanceSet((1, 5)), 45, 9), budget_nodes=500)
    assert res.verdict == BUDGET and res.exhausted and not res.unsat
    res = exact_search(SearchInstance(DistanceSet((1, 5)), 45, 9), budget_secs=0.0, chunk=1000)
    assert res.verdict == BUDGET


def test_resuming_in_chunks_gives_same_answer():
    inst = SearchInstance(DistanceSet((1, 2)), 27, 7)
    a = exact_search(inst, memo=False)
    b = exact_search(inst, memo=False, chunk=137)
    assert a.verdict == b.verdict == UNSAT
    assert a.nodes_explored == b.nodes_explored


def test_path_square_26_vertices_is_seven_colorable():
    res = exact_search(SearchInstance(DistanceSet((1, 2)), 26, 7))
    assert res.sat
    assert verify_segment(res.certificate, DistanceSet((1, 2))).valid


def test_smallest_unsat_n():
    n, log = smallest_unsat_n(DistanceSet((1, 2)), 7, 40)
    assert n == 27
    assert all(r.verdict in (SAT, UNSAT) for _, r in log)


def test_verify_finite_flags_conflicts():
    assert not verify_finite((1, 1), DistanceSet((1,))).valid
    assert verify_finite((1, 2, 1), DistanceSet((1,))).valid


def test_greedy_examples():
    used, col = greedy(DistanceSet((1, 2)), 5)
    assert used == 4 and col.tolist() == [1, 2, 3, 1, 4]
    used, col = greedy(DistanceSet((1,)), 3)
    assert used == 2 and col.tolist() == [1, 2, 1]


@given(SMALL_D, st.integers(1, 120))
@settings(max_examples=40)
def test_greedy_matches_reference(d, n):
    used, col = greedy(DistanceSet(d), n)
    ref = greedy_reference(d, n)
    assert col.tolist() == ref and used == max(ref)


@given(st.integers(2, 60))
@settings(max_examples=20)
def test_greedy_prefix_is_valid_and_deterministic(t):
    d = DistanceSet((1, t))
    u1, c1 = greedy(d, 20000)
    u2, c2 = greedy(d, 20000)
    assert u1 == u2 and (c1 == c2).all()
    assert verify_segment(c1, d).valid


def test_greedy_grows_palette_on_demand():
    # D(1,2,...,40) needs more than the initial palette of 32 colors quickly
    d = DistanceSet(tuple(range(1, 41)))
    used, col = greedy(d, 200)
    assert used > 32 and verify_segment(col, d).valid


def test_sweep_rows_and_csv():
    rows = greedy_sweep([2, 3], 1000)
    assert [r[0] for r in rows] == [2, 3]
    text = sweep_csv(rows)
    assert text.splitlines()[0] == "t,colors" and len(text.splitlines()) == 3
