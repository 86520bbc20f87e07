from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import best_periodic_density, harmonic_reference
from packdist.bounds import (
    D3_JOINT,
    DensityTable,
    Diverges,
    JointConstraint,
    UnsupportedCase,
    WindowTooLarge,
    check_joint_constraint,
    density_closed_form,
    density_oracle,
    harmonic_lower_bound,
    joint_density_oracle,
    lower_bound_from_densities,
    max_joint_count,
    stock_table,
    supported_closed_forms,
)
from packdist.core import DistanceSet

D3 = DistanceSet((1, 2, 3))
D14 = DistanceSet((1, 4))
D23 = DistanceSet((2, 3))
D25 = DistanceSet((2, 5))


def test_closed_form_examples():
    assert density_closed_form(D3, 2) == Fraction(1, 7)
    assert density_closed_form(D14, 1) == Fraction(2, 5)
    assert density_closed_form(D25, 1) == Fraction(3, 7)
    assert density_closed_form(D23, 1) == Fraction(2, 5)
    with pytest.raises(UnsupportedCase):
        density_closed_form(DistanceSet((1, 5)), 1)


@pytest.mark.parametrize("d", supported_closed_forms(), ids=str)
def test_closed_forms_in_range_and_non_increasing(d):
    vals = [density_closed_form(d, i) for i in range(1, 200)]
    assert all(0 < v <= 1 for v in vals)
    assert all(a >= b for a, b in zip(vals[1:], vals[2:]))


def test_oracle_examples():
    assert density_oracle(DistanceSet((1,)), 1) == Fraction(1, 2)
    assert density_oracle(D3, 1) == Fraction(1, 4)
    assert density_oracle(D14, 2) == Fraction(1, 6)


@pytest.mark.parametrize(
    "d,i,period",
    [((1,), 1, 8), ((1, 2, 3), 1, 12), ((1, 2, 3), 2, 14), ((1, 4), 1, 12), ((1, 4), 2, 14),
     ((2, 3), 1, 12), ((2, 5), 1, 14), ((2, 5), 2, 18), ((1, 3), 2, 14)],
)
def test_oracle_matches_periodic_enumeration(d, i, period):
    # the enumeration only sees periods up to ``period``, which covers the optimum here
    assert density_oracle(DistanceSet(d), i) == best_periodic_density(d, i, period)


@given(
    st.lists(st.integers(1, 5), min_size=1, max_size=2, unique=True),
    st.integers(1, 3),
)
@settings(max_examples=40)
def test_oracle_dominates_periodic_enumeration(dvals, i):
    d = DistanceSet.of(dvals)
    if i * d.max > 15:
        return
    assert density_oracle(d, i) >= best_periodic_density(d.values, i, 10)


def test_oracle_window_cap():
    with pytest.raises(WindowTooLarge):
        density_oracle(D25, 5)


def test_density_bounds():
    assert lower_bound_from_densities(stock_table(D3)) == 19
    assert lower_bound_from_densities(stock_table(D23)) == 11
    assert lower_bound_from_densities(stock_table(D25)) == 14


def test_d25_rho1_variants():
    # the coefficient 2/5 in the displayed sum does not give 14; 3/7 does
    two_fifths = DensityTable.closed_form(D25, overrides={1: Fraction(2, 5)})
    assert lower_bound_from_densities(two_fifths) == 16
    assert lower_bound_from_densities(stock_table(D25)) == 14


def test_d14_sum_reaches_one_at_twelve():
    table = stock_table(D14)
    from packdist.bounds import density_sum

    assert density_sum(table, 11) < 1 <= density_sum(table, 12)
    assert lower_bound_from_densities(table) == 12


def test_joint_constraint_parse():
    jc = JointConstraint.parse("1,2:10/28")
    assert jc == D3_JOINT and str(jc) == "1,2:10/28"
    with pytest.raises(ValueError):
        JointConstraint.parse("1,2-10/28")


def test_diverges():
    table = DensityTable(DistanceSet((1,)), rule=lambda i: Fraction(1, 10**9))
    with pytest.raises(Diverges):
        lower_bound_from_densities(table, cap=50)


@given(st.integers(1, 30), st.integers(2, 40))
@settings(max_examples=60)
def test_tighter_density_never_lowers_bound(color, shrink):
    for d in (D3, D14, D23, D25):
        table = stock_table(d)
        base = lower_bound_from_densities(table)
        tighter = table.with_density(color, table.density(color) * Fraction(shrink - 1, shrink))
        assert lower_bound_from_densities(tighter) >= base


def test_harmonic_examples():
    assert harmonic_lower_bound(1) == 3
    # 1/3 + 1/5 + ... + 1/13 is still below 1; adding 1/15 crosses it
    assert sum(Fraction(1, 2 * i + 1) for i in range(1, 7)) < 1
    assert harmonic_lower_bound(2) == 7


@given(st.integers(1, 7))
def test_harmonic_matches_plain_sum(t):
    assert harmonic_lower_bound(t) == harmonic_reference(t)


@given(st.integers(1, 9))
def test_harmonic_monotone(t):
    assert harmonic_lower_bound(t + 1) >= harmonic_lower_bound(t)


def test_joint_counts():
    # color 1 alone: every fourth cell of D^3
    assert max_joint_count(D3, (1,), 28) == 7
    assert max_joint_count(D3, (2,), 28) == 4


def test_d3_joint_window_claim():
    """At most 10 of any 28 consecutive vertices can take colors 1 or 2."""
    holds, best = check_joint_constraint(D3, D3_JOINT)
    assert holds, f"a window of 28 holds {best} vertices colored 1 or 2"


def test_d3_joint_density_exact():
    # 1,2,_,_,1,_,_,_ repeated already beats 10/28 with 3 of every 8
    assert joint_density_oracle(D3, (1, 2)) == Fraction(8, 21)
