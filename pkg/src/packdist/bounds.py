"""Density lower bounds for packing colorings of G(Z, D).

Color class ``i`` of a packing coloring is an *i-packing*, a set whose
points are pairwise more than ``i`` apart in the graph.  If ``rho_i`` bounds
the fraction of integers such a set can cover, a coloring with ``c`` colors
needs ``sum(rho_i) >= 1``.  Everything here runs on :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

import numpy as np

from .core import DistanceSet, distance_profile, forbidden_offsets

#: Largest color count the bound search will try.
BOUND_CAP = 10_000


class UnsupportedCase(ValueError):
    """No closed form is known here; use :func:`density_oracle`."""


class WindowTooLarge(ValueError):
    """The occupancy-window state space of the oracle is too big."""


class Diverges(RuntimeError):
    """No color count up to the cap satisfies the density inequality."""


# --------------------------------------------------------------------------
# closed forms
# --------------------------------------------------------------------------


def _rho_123(i: int) -> Fraction:
    return Fraction(1, 3 * i + 1)


def _rho_14(i: int) -> Fraction:
    return Fraction(2, 5) if i == 1 else Fraction(1, 4 * i - 2)


def _rho_23(i: int) -> Fraction:
    # 1/(3i+1) would give 1/4 at i = 1, but {0, 1} repeated with period 5
    # is a 1-packing of density 2/5
    return Fraction(2, 5) if i == 1 else Fraction(1, 3 * i + 1)


def _rho_25(i: int) -> Fraction:
    return Fraction(3, 7) if i == 1 else Fraction(1, 5 * i - 4)


_CLOSED_FORMS: dict[tuple[int, ...], Callable[[int], Fraction]] = {
    (1, 2, 3): _rho_123,
    (1, 4): _rho_14,
    (2, 3): _rho_23,
    (2, 5): _rho_25,
}


def density_closed_form(dset: DistanceSet, i: int) -> Fraction:
    """Maximum density of an ``i``-packing for the four hand-derived sets."""
    if i < 1:
        raise ValueError(f"color must be positive, got {i}")
    rule = _CLOSED_FORMS.get(dset.values)
    if rule is None:
        raise UnsupportedCase(f"no closed form for D={{{dset}}}; use density_oracle")
    return rule(i)


def supported_closed_forms() -> list[DistanceSet]:
    return [DistanceSet(v) for v in _CLOSED_FORMS]


# --------------------------------------------------------------------------
# exact oracle: maximum mean cycle over occupancy windows
# --------------------------------------------------------------------------

DEFAULT_WINDOW_CAP = 24
DEFAULT_STATE_CAP = 200_000


def _window_graph(dset: DistanceSet, i: int, state_cap: int):
    """States are occupancy bitmasks of the last ``w = i*max`` cells.

    Bit ``j`` of a state is the cell ``j + 1`` steps back.  Appending an
    occupied cell is allowed when no occupied cell sits at a forbidden offset.
    """
    w = i * dset.max
    forb = forbidden_offsets(dset, i)
    conflict = 0
    for d in forb:
        conflict |= 1 << (int(d) - 1)
    mask = (1 << w) - 1
    index = {0: 0}
    order = [0]
    succ: list[list[tuple[int, int]]] = []
    head = 0
    while head < len(order):
        st = order[head]
        head += 1
        edges = []
        for bit in (0, 1):
            if bit and st & conflict:
                continue
            nxt = ((st << 1) | bit) & mask
            if nxt not in index:
                if len(order) >= state_cap:
                    raise WindowTooLarge(
                        f"more than {state_cap} occupancy states for D={{{dset}}}, i={i}"
                    )
                index[nxt] = len(order)
                order.append(nxt)
            edges.append((index[nxt], bit))
        succ.append(edges)
    return succ


def _max_mean_cycle(succ: list[list[tuple[int, int]]]) -> Fraction:
    """Karp's characterization with every vertex as a start (weights 0/1)."""
    n = len(succ)
    neg = -1
    # table[k][v]: best weight of a k-edge walk ending at v, or -1
    table = np.full((n + 1, n), neg, dtype=np.int64)
    table[0, :] = 0
    src, dst, wt = [], [], []
    for u, edges in enumerate(succ):
        for v, b in edges:
            src.append(u)
            dst.append(v)
            wt.append(b)
    src = np.asarray(src)
    dst = np.asarray(dst)
    wt = np.asarray(wt)
    for k in range(1, n + 1):
        prev = table[k - 1]
        ok = prev[src] >= 0
        cand = np.where(ok, prev[src] + wt, neg)
        np.maximum.at(table[k], dst, cand)
    best = None
    for v in range(n):
        if table[n, v] < 0:
            continue
        worst = None
        for k in range(n):
            if table[k, v] < 0:
                continue
            val = Fraction(int(table[n, v] - table[k, v]), n - k)
            if worst is None or val < worst:
                worst = val
        if worst is not None and (best is None or worst > best):
            best = worst
    return best if best is not None else Fraction(0)


def density_oracle(
    dset: DistanceSet,
    i: int,
    window_cap: int = DEFAULT_WINDOW_CAP,
    *,
    state_cap: int = DEFAULT_STATE_CAP,
) -> Fraction:
    """Exact maximum density of a periodic ``i``-packing of G(Z, dset).

    Pairs farther than ``i*max(dset)`` apart never conflict, so a placement is
    valid iff every window of that width is; the best periodic placement is
    the maximum-mean cycle of the window graph.
    """
    if i < 1:
        raise ValueError(f"color must be positive, got {i}")
    if i * dset.max > window_cap:
        raise WindowTooLarge(
            f"window {i}*{dset.max} = {i * dset.max} exceeds cap {window_cap}"
        )
    return _max_mean_cycle(_window_graph(dset, i, state_cap))


# --------------------------------------------------------------------------
# tables and the bound
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class JointConstraint:
    """At most ``numerator`` of any ``window`` consecutive integers carry a color in ``colors``."""

    colors: frozenset[int]
    numerator: int
    window: int

    def __post_init__(self):
        object.__setattr__(self, "colors", frozenset(int(c) for c in self.colors))
        if not self.colors or min(self.colors) < 1:
            raise ValueError("joint constraint needs positive colors")
        if self.window < 1 or not 0 <= self.numerator <= self.window:
            raise ValueError(f"bad ratio {self.numerator}/{self.window}")

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.numerator, self.window)

    @classmethod
    def parse(cls, text: str) -> "JointConstraint":
        """``"1,2:10/28"`` -> colors {1, 2}, at most 10 in 28."""
        try:
            cols, ratio = text.split(":")
            num, win = ratio.split("/")
            return cls(frozenset(int(c) for c in cols.split(",") if c.strip()), int(num), int(win))
        except ValueError as exc:
            raise ValueError(f"joint constraint must look like '1,2:10/28', got {text!r}") from exc

    def __str__(self):
        return f"{','.join(map(str, sorted(self.colors)))}:{self.numerator}/{self.window}"


@dataclass
class DensityTable:
    """Per-color densities plus optional joint constraints.

    ``entries`` takes priority; colors missing from it fall back to ``rule``.
    """

    dset: DistanceSet
    entries: dict[int, Fraction] = field(default_factory=dict)
    joint_constraints: list[JointConstraint] = field(default_factory=list)
    rule: Callable[[int], Fraction] | None = None

    def __post_init__(self):
        self.entries = {int(k): Fraction(v) for k, v in self.entries.items()}
        for k, v in self.entries.items():
            if not 0 < v <= 1:
                raise ValueError(f"density of color {k} must lie in (0, 1], got {v}")
        seen: set[int] = set()
        for jc in self.joint_constraints:
            if seen & jc.colors:
                raise ValueError("joint constraints must cover disjoint color sets")
            seen |= jc.colors

    @classmethod
    def closed_form(
        cls, dset: DistanceSet, joint: Iterable[JointConstraint] = (), overrides: Mapping[int, Fraction] | None = None
    ) -> "DensityTable":
        rule = _CLOSED_FORMS.get(dset.values)
        if rule is None:
            raise UnsupportedCase(f"no closed form for D={{{dset}}}")
        return cls(dset, dict(overrides or {}), list(joint), rule)

    def density(self, i: int) -> Fraction:
        if i in self.entries:
            return self.entries[i]
        if self.rule is None:
            raise KeyError(f"no density for color {i}")
        return self.rule(i)

    def with_density(self, i: int, value: Fraction) -> "DensityTable":
        entries = dict(self.entries)
        entries[i] = Fraction(value)
        return DensityTable(self.dset, entries, list(self.joint_constraints), self.rule)

    def covered(self) -> set[int]:
        out: set[int] = set()
        for jc in self.joint_constraints:
            out |= jc.colors
        return out


def density_sum(table: DensityTable, c: int) -> Fraction:
    """Largest total density colors ``1..c`` can reach under the table."""
    covered = table.covered()
    total = sum((table.density(i) for i in range(1, c + 1) if i not in covered), Fraction(0))
    for jc in table.joint_constraints:
        own = sum((table.density(i) for i in jc.colors if i <= c), Fraction(0))
        total += min(jc.ratio, own)
    return total


def lower_bound_from_densities(table: DensityTable, cap: int = BOUND_CAP) -> int:
    """Least ``c`` whose density budget reaches 1."""
    covered = table.covered()
    running = Fraction(0)
    joint_own = [Fraction(0)] * len(table.joint_constraints)
    for c in range(1, cap + 1):
        if c in covered:
            for idx, jc in enumerate(table.joint_constraints):
                if c in jc.colors:
                    joint_own[idx] += table.density(c)
        else:
            running += table.density(c)
        total = running + sum(
            (min(jc.ratio, own) for jc, own in zip(table.joint_constraints, joint_own)), Fraction(0)
        )
        if total >= 1:
            return c
    raise Diverges(f"density sum stays below 1 for every c <= {cap}")


def harmonic_lower_bound(t: int, cap: int = 10**8) -> int:
    """Least ``c`` with ``sum_{i<=c} 1/(i*t+1) >= 1`` for the path power D^t.

    Partial sums are bracketed by integer floor/ceil sums at a scale ``N``;
    only an ambiguous bracket falls back to a full Fraction sum.
    """
    if t < 1:
        raise ValueError(f"t must be at least 1, got {t}")
    scale = 1 << 64
    lo = hi = 0
    for c in range(1, cap + 1):
        den = c * t + 1
        lo += scale // den
        hi += -(-scale // den)
        if lo >= scale:
            return c
        if hi >= scale:
            exact = sum((Fraction(1, i * t + 1) for i in range(1, c + 1)), Fraction(0))
            if exact >= 1:
                return c
    raise Diverges(f"harmonic sum for t={t} stays below 1 up to c={cap}")


# --------------------------------------------------------------------------
# joint-constraint checker
# --------------------------------------------------------------------------


def max_joint_count(dset: DistanceSet, colors: Iterable[int], window: int) -> int:
    """Most cells of ``window`` consecutive integers that can take colors from ``colors``.

    Dynamic program over the window: the state keeps the recent cells that
    can still conflict (most ``max(colors)*max(dset)`` back).  Distances are
    those of the infinite graph.
    """
    cols = sorted(set(int(c) for c in colors))
    top = cols[-1]
    reach = top * dset.max
    profile = distance_profile(dset, top)
    forb = {c: set(int(d) for d in forbidden_offsets(dset, c, profile)) for c in cols}
    states: dict[tuple[int, ...], int] = {(0,) * reach: 0}
    for _ in range(window):
        nxt: dict[tuple[int, ...], int] = {}
        for st, cnt in states.items():
            # st[j] is the color j+1 cells back
            for c in [0] + cols:
                if c and any(st[d - 1] == c for d in forb[c]):
                    continue
                key = (c,) + st[:-1]
                val = cnt + (1 if c else 0)
                if nxt.get(key, -1) < val:
                    nxt[key] = val
        states = nxt
    return max(states.values())


def joint_density_oracle(
    dset: DistanceSet, colors: Iterable[int], *, state_cap: int = DEFAULT_STATE_CAP
) -> Fraction:
    """Exact largest density of cells a periodic partial coloring with ``colors`` can fill."""
    cols = sorted(set(int(c) for c in colors))
    reach = cols[-1] * dset.max
    profile = distance_profile(dset, cols[-1])
    forb = {c: [int(d) for d in forbidden_offsets(dset, c, profile)] for c in cols}
    start = (0,) * reach
    index = {start: 0}
    order = [start]
    succ: list[list[tuple[int, int]]] = []
    head = 0
    while head < len(order):
        st = order[head]
        head += 1
        edges = []
        for c in [0] + cols:
            if c and any(st[d - 1] == c for d in forb[c]):
                continue
            nxt = (c,) + st[:-1]
            if nxt not in index:
                if len(order) >= state_cap:
                    raise WindowTooLarge(f"more than {state_cap} window states for colors {cols}")
                index[nxt] = len(order)
                order.append(nxt)
            edges.append((index[nxt], 1 if c else 0))
        succ.append(edges)
    return _max_mean_cycle(succ)


def check_joint_constraint(dset: DistanceSet, jc: JointConstraint) -> tuple[bool, int]:
    """``(holds, achieved)``: the claimed bound holds iff no window beats it."""
    best = max_joint_count(dset, jc.colors, jc.window)
    return best <= jc.numerator, best


# --------------------------------------------------------------------------
# stock tables
# --------------------------------------------------------------------------

D3_JOINT = JointConstraint(frozenset({1, 2}), 10, 28)


def stock_table(dset: DistanceSet) -> DensityTable:
    """Closed-form table, with the {1,2} joint constraint for D = {1,2,3}."""
    joint = [D3_JOINT] if dset.values == (1, 2, 3) else []
    return DensityTable.closed_form(dset, joint)


__all__ = [
    "BOUND_CAP",
    "DEFAULT_WINDOW_CAP",
    "D3_JOINT",
    "DensityTable",
    "Diverges",
    "JointConstraint",
    "UnsupportedCase",
    "WindowTooLarge",
    "check_joint_constraint",
    "density_closed_form",
    "density_oracle",
    "density_sum",
    "harmonic_lower_bound",
    "joint_density_oracle",
    "lower_bound_from_densities",
    "max_joint_count",
    "stock_table",
    "supported_closed_forms",
]
