"""Acceptance criteria, one test (or one small group) each.

Every check prints a ``criterion N PASS/FAIL`` line; the lines are repeated
in the pytest terminal summary.  Run directly with
``python tests/test_acceptance.py`` for just this file.
"""

import random
import time

import pytest

from acceptance_log import record
from oracles import brute_colorable
from packdist.bounds import density_closed_form, density_oracle, lower_bound_from_densities, stock_table
from packdist.construct import aux_path_coloring, build_29, build_40, build_86, build_even, construct, verify_lift
from packdist.core import DistanceSet, dist_1t, dist_general, verify, verify_segment
from packdist.data_files import load_bundled, manifest
from packdist.search import SearchInstance, exact_search, greedy, verify_finite

# ---------------------------------------------------------------- 1


BUNDLED = {
    "D12-p54": ((1, 2), 8, 54),
    "D13-p32": ((1, 3), 9, 32),
    "D15-p80": ((1, 5), 13, 80),
    "B1": ((1, 2, 3), 23, 768),
    "B2": ((1, 4), 16, 320),
    "B3": ((2, 3), 13, 240),
    "B4": ((2, 5), 23, 336),
}


@pytest.mark.parametrize("key", list(BUNDLED))
def test_c1_bundled_sequences_verify(key):
    d, k, p = BUNDLED[key]
    t0 = time.perf_counter()
    col = load_bundled(key)
    ok_shape = col.dset.values == d and col.max_color == k and col.period == p
    verdict = verify(col)
    secs = time.perf_counter() - t0
    ok = ok_shape and verdict.valid and secs < 5
    record(1, f"bundled {key} D={d} k={k} p={p}", ok, f"{len(verdict.violations)} violations, {secs:.2f}s")
    assert ok


def test_c1_manifest_complete():
    assert set(manifest()) == set(BUNDLED)


# ---------------------------------------------------------------- 2

CONSTRUCTIONS = (
    [("29", t, 29) for t in (95, 97, 191)]
    + [("40", t, 40) for t in (447, 449)]
    + [("86", t, 86) for t in range(95, 144, 2)]
    + [("even", 480, 59), ("even", 448, 81)]
)
_BUILDERS = {"29": build_29, "40": build_40, "86": build_86, "even": build_even}


@pytest.mark.parametrize("family,t,limit", CONSTRUCTIONS, ids=[f"{f}-{t}" for f, t, _ in CONSTRUCTIONS])
def test_c2_constructions(family, t, limit):
    t0 = time.perf_counter()
    col = _BUILDERS[family](t)
    valid = verify(col).valid
    secs = time.perf_counter() - t0
    ok = valid and col.max_color <= limit and secs < 60
    record(2, f"build_{family}({t}) <= {limit} colors", ok,
           f"{col.max_color} colors, period {col.period}, {secs:.1f}s")
    assert ok


# ---------------------------------------------------------------- 3


# the lift holds for colorings made of blocks of length t+1; for t = 1 mod 4
# build_86 uses blocks of length t-1 (already a lift from t-2), so the
# sampled t are taken with t = 3 mod 4
@pytest.mark.parametrize("family,t", [("29", 95), ("86", 103), ("86", 119), ("86", 139)])
def test_c3_lift_to_t_plus_2(family, t):
    built = construct(t, family)
    assert built.s == t + 1
    v = verify_lift(built.coloring)
    record(3, f"build_{family}({t}) re-verifies on D(1,{t + 2})", v.valid, f"{len(v.violations)} violations")
    assert v.valid


# ---------------------------------------------------------------- 4

UNSAT_CLAIMS = [((1, 2), 26, 7), ((1, 3), 100, 8), ((1, 5), 45, 9), ((1, 7), 45, 9), ((1, 9), 45, 9)]


@pytest.mark.parametrize("d,n,k", UNSAT_CLAIMS, ids=[f"D{d}-n{n}-k{k}" for d, n, k in UNSAT_CLAIMS])
def test_c4_unsat_reproduction(d, n, k):
    res = exact_search(SearchInstance(DistanceSet(d), n, k), budget_nodes=10**13, budget_secs=1800)
    detail = f"{res.verdict}, {res.nodes_explored} nodes, {res.wall_time:.1f}s"
    if res.sat:
        detail += " (certificate re-verified: " + str(verify_finite(res.certificate, DistanceSet(d)).valid) + ")"
    record(4, f"D_{n}{d} not {k}-colorable", res.unsat, detail)
    assert res.unsat


# ---------------------------------------------------------------- 5


@pytest.mark.parametrize("d,expected", [((1, 2, 3), 19), ((1, 4), 11), ((2, 3), 11), ((2, 5), 14)])
def test_c5_density_bounds(d, expected):
    got = lower_bound_from_densities(stock_table(DistanceSet(d)))
    record(5, f"density bound D={d} = {expected}", got == expected, f"computed {got}")
    assert got == expected


# ---------------------------------------------------------------- 6


@pytest.mark.parametrize("d", [(1, 2, 3), (1, 4), (2, 3), (2, 5)])
def test_c6_oracle_equals_closed_form(d):
    ds = DistanceSet(d)
    mismatches = []
    i = 1
    while i * ds.max <= 18:
        a, b = density_oracle(ds, i), density_closed_form(ds, i)
        if a != b:
            mismatches.append(f"i={i}: oracle {a}, closed form {b}")
        i += 1
    record(6, f"density oracle = closed form for D={d}, i*max <= 18", not mismatches,
           "; ".join(mismatches) or f"{i - 1} colors agree")
    assert not mismatches


# ---------------------------------------------------------------- 7


@pytest.mark.parametrize(
    "k1,strategy,bound,exact",
    [(2, "doubling", 3, True), (87, "doubling", 173, True),
     (30, "greedy", 53, False), (41, "greedy", 71, False), (87, "greedy", 152, False)],
)
def test_c7_aux_colorings(k1, strategy, bound, exact):
    t0 = time.perf_counter()
    aux = aux_path_coloring(k1, strategy)
    ok = aux.valid and (aux.k2 == bound if exact else aux.k2 <= bound)
    rel = "=" if exact else "<="
    record(7, f"aux {strategy} k1={k1}: k2 {rel} {bound}", ok,
           f"k2={aux.k2}, period {aux.period}, {time.perf_counter() - t0:.1f}s")
    assert ok


# ---------------------------------------------------------------- 8

SWEEP_T = sorted(random.Random(2024).sample(range(200, 501), 10))


@pytest.mark.parametrize("t", SWEEP_T)
def test_c8_greedy_sweep(t):
    d = DistanceSet((1, t))
    t0 = time.perf_counter()
    used, col = greedy(d, 1_000_000)
    secs = time.perf_counter() - t0
    valid = verify_segment(col, d).valid
    ok = 25 <= used <= 60 and valid and secs < 120
    record(8, f"greedy D(1,{t}) n=1e6 in [25, 60] colors", ok, f"{used} colors, prefix valid={valid}, {secs:.1f}s")
    assert ok


# ---------------------------------------------------------------- 9


def test_c9_dist_formula_vs_bfs():
    mismatches = 0
    checked = 0
    for t in range(2, 31):
        ds = DistanceSet((1, t))
        for delta in range(10 * t + 1):
            checked += 1
            if dist_1t(delta, t) != dist_general(0, delta, ds):
                mismatches += 1
    record(9, "dist_1t = BFS for t <= 30, delta <= 10t", mismatches == 0, f"{checked} pairs, {mismatches} mismatches")
    assert mismatches == 0


# ---------------------------------------------------------------- 10


def test_c10_search_vs_enumeration():
    bad = []
    count = 0
    for d in ((1, 2), (1, 3), (2, 3)):
        for n in range(1, 13):
            for k in range(1, 5):
                count += 1
                res = exact_search(SearchInstance(DistanceSet(d), n, k))
                sat, _ = brute_colorable(d, n, k)
                if res.sat != sat or res.exhausted:
                    bad.append((d, n, k))
    record(10, "exact_search = full enumeration, n <= 12, k <= 4", not bad, f"{count} instances, {len(bad)} disagree")
    assert not bad


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-v", "-s"]))
