import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import bfs_distance, periodic_violations, segment_violations
from packdist.core import (
    ColoringFormatError,
    DistanceSet,
    PeriodicColoring,
    UnreachableError,
    dist_1t,
    dist_general,
    distance_profile,
    format_coloring,
    lift_coloring,
    parse_coloring,
    verify,
    verify_segment,
)

dsets = st.lists(st.integers(1, 9), min_size=1, max_size=3, unique=True).map(
    lambda v: DistanceSet.of(v)
)


def test_distance_examples():
    assert dist_general(0, 16, DistanceSet((1, 7))) == 4
    assert dist_1t(16, 7) == 4
    assert dist_general(5, 5, DistanceSet((2, 3))) == 0
    assert dist_general(0, 1, DistanceSet((2, 3))) == 2


def test_unreachable():
    with pytest.raises(UnreachableError):
        dist_general(0, 1, DistanceSet((2, 4)))


def test_distance_set_validation():
    with pytest.raises(ValueError):
        DistanceSet((3, 1))
    with pytest.raises(ValueError):
        DistanceSet(())
    assert DistanceSet.parse("4, 1 ,4").values == (1, 4)
    assert DistanceSet((1, 9)).one_t == 9 and DistanceSet((2, 9)).one_t is None


@given(st.integers(2, 30), st.integers(0, 300))
def test_dist_1t_matches_bfs(t, delta):
    assert dist_1t(delta, t) == bfs_distance(0, delta, (1, t))


@given(dsets, st.integers(-40, 40), st.integers(-40, 40))
@settings(max_examples=150)
def test_general_distance_symmetric_and_translation_invariant(d, a, b):
    if (b - a) % d.gcd:
        return
    x = dist_general(a, b, d)
    assert x == dist_general(b, a, d) == dist_general(0, b - a, d)
    assert x == bfs_distance(a, b, d.values)


@given(dsets, st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
@settings(max_examples=100)
def test_triangle_inequality(d, a, b, c):
    if (b - a) % d.gcd or (c - b) % d.gcd:
        return
    assert dist_general(a, c, d) <= dist_general(a, b, d) + dist_general(b, c, d)


@given(dsets, st.integers(1, 5))
@settings(max_examples=60)
def test_profile_matches_general(d, radius):
    prof = distance_profile(d, radius)
    for delta in range(len(prof)):
        if delta % d.gcd:
            assert prof[delta] == radius + 1
            continue
        true = dist_general(0, delta, d)
        assert prof[delta] == min(true, radius + 1)


@given(
    st.lists(st.integers(1, 6), min_size=1, max_size=24),
    st.lists(st.integers(1, 6), min_size=1, max_size=2, unique=True),
)
@settings(max_examples=200)
def test_verify_matches_pairwise_oracle(colors, dvals):
    d = DistanceSet.of(dvals)
    got = {(v.color, v.pos_a, v.pos_b) for v in verify(PeriodicColoring(d, tuple(colors))).violations}
    assert got == set(periodic_violations(colors, d.values))


@given(
    st.lists(st.integers(0, 5), min_size=1, max_size=40),
    st.lists(st.integers(1, 6), min_size=1, max_size=2, unique=True),
)
@settings(max_examples=200)
def test_verify_segment_matches_pairwise_oracle(colors, dvals):
    d = DistanceSet.of(dvals)
    got = {(v.color, v.pos_a, v.pos_b) for v in verify_segment(colors, d).violations}
    assert got == set(segment_violations(colors, d.values))


def test_single_color_meets_its_own_translate():
    # period 2 but color 3 needs distance >= 4
    col = PeriodicColoring(DistanceSet((1,)), (3, 1))
    assert not verify(col).valid


@given(st.integers(2, 4))
def test_lift_preserves_validity(factor):
    base = PeriodicColoring(DistanceSet((1, 2)), (1, 2, 1, 3, 1, 4, 1, 2, 1, 5, 1, 3))
    ok = verify(base).valid
    lifted = lift_coloring(base, factor)
    assert lifted.dset.values == (factor, 2 * factor)
    assert verify(lifted).valid == ok


def test_coloring_claims_are_checked():
    with pytest.raises(ValueError):
        PeriodicColoring(DistanceSet((1,)), (1, 2), max_color=3)
    with pytest.raises(ValueError):
        PeriodicColoring(DistanceSet((1,)), (0, 1))


def test_format_roundtrip():
    col = PeriodicColoring(DistanceSet((1, 3)), tuple([1, 2, 1, 3] * 15))
    text = format_coloring(col, ["a comment"], per_line=7)
    again = parse_coloring(text)
    assert again == col


@pytest.mark.parametrize(
    "text",
    [
        "D: 1,2\nk: 2\n1,2\n",
        "D: 1,2\nk: 2\nperiod: 3\n1,2\n",
        "D: 1,2\nk: 2\nperiod: 2\n1,x\n",
        "D: 1,2\nk: 3\nperiod: 2\n1,2\n",
    ],
)
def test_format_errors(text):
    with pytest.raises(ColoringFormatError):
        parse_coloring(text)


def test_violation_kernel_handles_many_equal_colors():
    arr = np.ones(1000, dtype=np.int64)
    v = verify_segment(arr, DistanceSet((1,)))
    assert len(v.violations) == 999
