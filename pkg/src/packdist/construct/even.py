"""Even t: odd-case patterns widened by one auxiliary color per block.

Blocks have ``s = 4p + 1`` vertices for ``t = 4p`` or ``4p + 2``; each block
carries a pattern of length ``4p`` from an odd construction followed by one
extra color.  The extra colors, read block by block, form a coloring of the
path in which two blocks with color ``i`` are more than ``i/2`` blocks apart.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Sequence

import numba
import numpy as np

from ..core import DistanceSet, PeriodicColoring, Verdict, verify
from .odd import meta_29, meta_40, meta_86
from .patterns import DomainError, MetaPattern, finalize

STRATEGIES = ("doubling", "greedy", "split")


@dataclass(frozen=True)
class AuxColoringSpec:
    """Periodic coloring of the path with colors ``k1..k2``."""

    k1: int
    k2: int
    sequence: tuple[int, ...]
    strategy: str = ""

    @property
    def period(self) -> int:
        return len(self.sequence)

    def violations(self) -> list[tuple[int, int, int]]:
        """``(color, i, j)`` for equal colors at most ``color/2`` apart, over two periods."""
        seq = np.asarray(self.sequence * 2, dtype=np.int64)
        n = self.period
        out = []
        for c in np.unique(seq[:n]):
            pos = np.flatnonzero(seq == c)
            gaps = np.diff(pos)
            for g_idx in np.flatnonzero(2 * gaps <= c):
                if pos[g_idx] < n:
                    out.append((int(c), int(pos[g_idx]), int(pos[g_idx + 1])))
        return out

    @property
    def valid(self) -> bool:
        return min(self.sequence) >= self.k1 and max(self.sequence) == self.k2 and not self.violations()


def _from_classes(k1: int, classes: Sequence[tuple[int, int, int]], strategy: str) -> AuxColoringSpec:
    """``classes`` are ``(color, modulus, residue)`` triples partitioning Z."""
    period = 1
    for _, m, _ in classes:
        period = math.lcm(period, m)
    seq = np.zeros(period, dtype=np.int64)
    for c, m, a in classes:
        if seq[a::m].any():
            raise ValueError("residue classes overlap")
        seq[a::m] = c
    if not seq.all():
        raise ValueError("residue classes do not cover Z")
    return AuxColoringSpec(k1, int(seq.max()), tuple(int(c) for c in seq), strategy)


def _doubling(k1: int) -> AuxColoringSpec:
    # color c sits on one residue class; replacing the smallest color by two
    # new ones on the halves of its class keeps every class wide enough
    classes = {2: (2, 0), 3: (2, 1)}
    top = 3
    for low in range(2, k1):
        m, a = classes.pop(low)
        classes[top + 1] = (2 * m, a)
        classes[top + 2] = (2 * m, a + m)
        top += 2
    return _from_classes(k1, [(c, m, a) for c, (m, a) in classes.items()], "doubling")


@numba.njit(cache=True)
def _greedy_step(ages, need):
    ch = 0
    while ages[ch] < need[ch]:
        ch += 1
    for j in range(len(ages)):
        if ages[j] < need[j]:
            ages[j] += 1
    ages[ch] = 1
    return ch


@numba.njit(cache=True)
def _greedy_cycle(need):
    """Start index and length of the cycle of the deterministic greedy state."""
    start = need.copy()
    tort = start.copy()
    hare = start.copy()
    _greedy_step(hare, need)
    power = 1
    lam = 1
    while not np.array_equal(tort, hare):
        if power == lam:
            tort[:] = hare
            power *= 2
            lam = 0
        _greedy_step(hare, need)
        lam += 1
    tort[:] = start
    hare[:] = start
    for _ in range(lam):
        _greedy_step(hare, need)
    mu = 0
    while not np.array_equal(tort, hare):
        _greedy_step(tort, need)
        _greedy_step(hare, need)
        mu += 1
    out = np.empty(lam, dtype=np.int64)
    for i in range(lam):
        out[i] = _greedy_step(tort, need)
    return mu, out


def _greedy(k1: int) -> AuxColoringSpec:
    # the greedy never needs more than 2*k1 - 1 colors, so this palette is ample
    colors = np.arange(k1, 4 * k1 + 4, dtype=np.int64)
    need = colors // 2 + 1
    _, idx = _greedy_cycle(need)
    seq = colors[idx]
    return AuxColoringSpec(k1, int(seq.max()), tuple(int(c) for c in seq), "greedy")


def _split_once(k1: int, rng: np.random.Generator | None):
    """One residue-class tree: split the narrowest class until it fits the next color."""
    heap = [(1, 0)]
    classes = []
    color = k1
    while heap:
        m, a = heapq.heappop(heap)
        if 2 * m > color:
            classes.append((color, m, a))
            color += 1
            continue
        f = 2 if rng is None else int(rng.integers(2, 4))
        for j in range(f):
            heapq.heappush(heap, (f * m, a + j * m))
    return classes


def _split(k1: int, trials: int, seed: int) -> AuxColoringSpec:
    rng = np.random.default_rng(seed)
    best = None
    for trial in range(trials):
        classes = _split_once(k1, None if trial == 0 else rng)
        top = k1 + len(classes) - 1
        period = 1
        for _, m, _ in classes:
            period = math.lcm(period, m)
        key = (top, period)
        if best is None or key < best[0]:
            best = (key, classes)
    return _from_classes(k1, best[1], "split")


def aux_path_coloring(k1: int, strategy: str = "doubling", *, trials: int = 4000, seed: int = 0) -> AuxColoringSpec:
    """Periodic path coloring with colors from ``k1`` up, color ``i`` repeating only beyond ``i/2``.

    ``doubling`` gives exactly ``2*k1 - 1`` colors.  ``greedy`` takes the
    smallest available color at each vertex and returns the cycle the greedy
    falls into.  ``split`` partitions Z into residue classes by a seeded random
    tree of 2- and 3-way splits and keeps the best of ``trials`` trees.
    """
    if k1 < 2:
        raise ValueError(f"k1 must be at least 2, got {k1}")
    if strategy == "doubling":
        spec = _doubling(k1)
    elif strategy == "greedy":
        spec = _greedy(k1)
    elif strategy == "split":
        spec = _split(k1, trials, seed)
    else:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    if not spec.valid:
        raise RuntimeError(f"{strategy} aux coloring for k1={k1} violates its separation rule")
    return spec


# --------------------------------------------------------------------------
# even t
# --------------------------------------------------------------------------

BASES = ("29", "40", "86")


def even_base(t: int, base: str = "auto") -> tuple[str, MetaPattern]:
    """Odd-case meta-pattern used for even ``t`` (patterns of length ``4 * (t // 4)``)."""
    if t % 2 or t < 4:
        raise DomainError(f"t must be even and at least 4, got {t}")
    width = 4 * (t // 4)
    choices = BASES if base == "auto" else (base,)
    for b in choices:
        if b == "29" and width % 96 == 0:
            return b, meta_29(width // 96)
        if b == "40" and width - 1 >= 447:
            return b, meta_40(width)
        if b == "86" and width - 1 >= 73 and (width % 48 >= 24 or width >= 96):
            return b, meta_86(width)
    raise DomainError(f"no odd base construction ({'/'.join(choices)}) covers even t={t}")


def build_even(t: int, strategy: str = "doubling", base: str = "auto") -> PeriodicColoring:
    """Packing coloring of D(1, t) for even ``t``; blocks of ``4p + 1`` with ``p = t // 4``."""
    name, meta = even_base(t, base)
    k1 = max(meta.colors()) + 1
    aux = aux_path_coloring(k1, strategy)
    if aux.k2 >= t:
        raise DomainError(f"t={t} must exceed the top auxiliary color {aux.k2}")
    blocks = math.lcm(len(meta), aux.period)
    rows = []
    for b in range(blocks):
        rows.append(meta.sequence[b % len(meta)].colors + (aux.sequence[b % aux.period],))
    colors = tuple(c for row in rows for c in row)
    return finalize(
        PeriodicColoring(DistanceSet((1, t)), colors),
        f"even construction for t={t} (base {name}, {strategy} aux)",
    )


def verify_lift(coloring: PeriodicColoring, target: int | None = None) -> Verdict:
    """Re-check a coloring of D(1, t) on D(1, target), ``target = t + 2`` by default."""
    t = coloring.dset.one_t
    if t is None:
        raise ValueError("verify_lift expects a coloring of some D(1, t)")
    return verify(coloring.with_dset(DistanceSet((1, t + 2 if target is None else target))))
