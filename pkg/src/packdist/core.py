"""Distance graphs G(Z, D), exact distances and the packing-coloring verifier.

A vertex set is the integers; ``u ~ v`` iff ``|u - v|`` is in the distance
set.  A *packing coloring* assigns colors ``1..k`` so that two vertices of
color ``i`` are at graph distance at least ``i + 1``.  Periodic colorings are
stored as one period and read modulo the period over all of Z.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import reduce
from pathlib import Path
from typing import Iterable, Sequence

import numba
import numpy as np


class UnreachableError(ValueError):
    """Raised when two integers lie in different components of G(Z, D)."""


# --------------------------------------------------------------------------
# graph model
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class DistanceSet:
    values: tuple[int, ...]
    gcd: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if not vals:
            raise ValueError("distance set must be non-empty")
        if any(v < 1 for v in vals):
            raise ValueError(f"distances must be positive: {vals}")
        if any(a >= b for a, b in zip(vals, vals[1:])):
            raise ValueError(f"distances must be strictly increasing: {vals}")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "gcd", reduce(math.gcd, vals))

    @classmethod
    def of(cls, values: Iterable[int]) -> "DistanceSet":
        """Build from any iterable, sorting and de-duplicating."""
        return cls(tuple(sorted(set(int(v) for v in values))))

    @classmethod
    def parse(cls, text: str) -> "DistanceSet":
        parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
        return cls.of(int(p) for p in parts)

    @property
    def max(self) -> int:
        return self.values[-1]

    @property
    def one_t(self) -> int | None:
        """``t`` when the set is ``{1, t}`` with ``t >= 2``, else None."""
        if len(self.values) == 2 and self.values[0] == 1:
            return self.values[1]
        return None

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __str__(self):
        return ",".join(map(str, self.values))


def dist_1t(delta: int, t: int) -> int:
    """Graph distance between two vertices ``delta`` apart in D(1, t).

    With ``delta = q*t + r`` a shortest path uses either ``q`` long edges and
    ``r`` unit edges, or ``q + 1`` long edges and ``t - r`` unit edges back.
    """
    if delta < 0:
        raise ValueError("delta must be non-negative")
    if t < 2:
        raise ValueError("t must be at least 2")
    q, r = divmod(delta, t)
    return min(q + r, q + 1 + t - r)


def _dist_1t_array(deltas: np.ndarray, t: int) -> np.ndarray:
    q, r = np.divmod(deltas, t)
    return np.minimum(q + r, q + 1 + t - r)


def dist_general(a: int, b: int, dset: DistanceSet) -> int:
    """Exact distance in G(Z, dset) by bidirectional layered BFS."""
    if (b - a) % dset.gcd:
        raise UnreachableError(
            f"{a} and {b} lie in different components of G(Z, {{{dset}}})"
        )
    if a == b:
        return 0
    steps = [d for d in dset.values] + [-d for d in dset.values]
    seen = [{a: 0}, {b: 0}]
    frontier = [[a], [b]]
    while True:
        # expand the smaller side
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        mine, other = seen[side], seen[1 - side]
        nxt = []
        best = None
        for x in frontier[side]:
            dx = mine[x] + 1
            for s in steps:
                y = x + s
                if y in mine:
                    continue
                mine[y] = dx
                nxt.append(y)
                if y in other:
                    cand = dx + other[y]
                    if best is None or cand < best:
                        best = cand
        if best is not None:
            return best
        frontier[side] = nxt


def distance_profile(dset: DistanceSet, radius: int) -> np.ndarray:
    """Distances from 0 to each ``delta`` in ``0..radius*max(dset)``.

    Entries farther than ``radius`` (or unreachable) are reported as
    ``radius + 1``.  Any path of length at most ``radius`` stays inside
    ``[-radius*max, radius*max]``, so the truncated BFS is exact below the cap.
    """
    span = radius * dset.max
    deltas = np.arange(span + 1, dtype=np.int64)
    t = dset.one_t
    if t is not None:
        return np.minimum(_dist_1t_array(deltas, t), radius + 1)
    far = radius + 1
    dist = np.full(2 * span + 1, far, dtype=np.int64)
    dist[span] = 0
    frontier = np.zeros(2 * span + 1, dtype=bool)
    frontier[span] = True
    for layer in range(1, radius + 1):
        nxt = np.zeros_like(frontier)
        for d in dset.values:
            nxt[d:] |= frontier[:-d]
            nxt[:-d] |= frontier[d:]
        nxt &= dist == far
        if not nxt.any():
            break
        dist[nxt] = layer
        frontier = nxt
    return dist[span:]


def forbidden_offsets(dset: DistanceSet, color: int, profile: np.ndarray | None = None) -> np.ndarray:
    """Positive offsets ``delta`` with ``d(0, delta) <= color``.

    Two vertices of ``color`` must never sit at one of these offsets.
    """
    if profile is None or len(profile) < color * dset.max + 1:
        profile = distance_profile(dset, color)
    window = profile[1 : color * dset.max + 1]
    return np.flatnonzero(window <= color) + 1


# --------------------------------------------------------------------------
# colorings
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PeriodicColoring:
    dset: DistanceSet
    colors: tuple[int, ...]
    max_color: int | None = None

    def __post_init__(self):
        cols = tuple(int(c) for c in self.colors)
        if not cols:
            raise ValueError("a coloring needs at least one position")
        top = max(cols)
        k = top if self.max_color is None else int(self.max_color)
        if min(cols) < 1 or top > k:
            raise ValueError(f"colors must lie in [1, {k}]")
        if top != k:
            raise ValueError(f"claimed {k} colors but the largest color used is {top}")
        object.__setattr__(self, "colors", cols)
        object.__setattr__(self, "max_color", k)

    @property
    def period(self) -> int:
        return len(self.colors)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.colors, dtype=np.int64)

    def with_dset(self, dset: DistanceSet) -> "PeriodicColoring":
        return PeriodicColoring(dset, self.colors, self.max_color)


@dataclass(frozen=True)
class Violation:
    color: int
    pos_a: int
    pos_b: int
    distance: int

    def __str__(self):
        return (
            f"color {self.color}: positions {self.pos_a} and {self.pos_b} "
            f"at distance {self.distance}"
        )


@dataclass
class Verdict:
    violations: list[Violation]

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid


#: Upper bound on the number of violations collected by one scan.
VIOLATION_LIMIT = 1_000_000


@numba.njit(cache=True)
def _violation_kernel(arr, ptr, offs, periodic, limit):
    n = len(arr)
    top = len(ptr) - 1
    out = np.empty((limit, 3), dtype=np.int64)
    count = 0
    total = 0
    for p in range(n):
        c = arr[p]
        if c <= 0 or c >= top:
            continue
        for j in range(ptr[c], ptr[c + 1]):
            q = p + offs[j]
            if periodic:
                q = q % n
            elif q >= n:
                break
            if arr[q] == c:
                if count < limit:
                    out[count, 0] = c
                    out[count, 1] = p
                    out[count, 2] = p + offs[j]
                    count += 1
                total += 1
    return out[:count], total


def _scan(arr: np.ndarray, dset: DistanceSet, periodic: bool) -> list[Violation]:
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    top = int(arr.max()) if len(arr) else 0
    if top <= 0:
        return []
    profile = distance_profile(dset, top)
    ptr = np.zeros(top + 2, dtype=np.int64)
    chunks = []
    for color in range(1, top + 1):
        f = forbidden_offsets(dset, color, profile) if (arr == color).any() else np.empty(0, np.int64)
        chunks.append(f)
        ptr[color + 1] = ptr[color] + len(f)
    offs = np.concatenate(chunks).astype(np.int64)
    found, _ = _violation_kernel(arr, ptr, offs, periodic, VIOLATION_LIMIT)
    return [Violation(int(c), int(a), int(b), int(profile[b - a])) for c, a, b in found]


def verify(coloring: PeriodicColoring) -> Verdict:
    """Check a periodic coloring on all of Z.

    Every pair ``u < v`` of equal color ``i`` with ``u`` in one period and
    ``v - u <= i*max(D)`` is examined; farther pairs are safe because each
    edge spans at most ``max(D)`` integers.  All violations are returned (up
    to ``VIOLATION_LIMIT``).
    """
    return Verdict(_scan(coloring.as_array(), coloring.dset, periodic=True))


def verify_segment(colors: Sequence[int], dset: DistanceSet) -> Verdict:
    """Check a finite stretch ``0..n-1`` of G(Z, dset); ``0`` marks an empty cell.

    Distances are those of the infinite graph, so paths may leave the stretch.
    """
    arr = np.asarray(colors, dtype=np.int64)
    return Verdict(_scan(arr, dset, periodic=False))


def lift_coloring(coloring: PeriodicColoring, factor: int) -> PeriodicColoring:
    """Coloring of G(Z, factor*D) from one of G(Z, D).

    G(Z, gD) is ``g`` disjoint copies of G(Z, D) (the residue classes mod g);
    vertex ``x`` receives the color of ``x // g``.
    """
    dset = DistanceSet(tuple(factor * d for d in coloring.dset.values))
    cols = tuple(c for c in coloring.colors for _ in range(factor))
    return PeriodicColoring(dset, cols, coloring.max_color)


# --------------------------------------------------------------------------
# coloring files
# --------------------------------------------------------------------------


class ColoringFormatError(ValueError):
    pass


def parse_coloring(text: str) -> PeriodicColoring:
    """Parse the line-oriented coloring format (``D:``, ``k:``, ``period:``, colors)."""
    header: dict[str, str] = {}
    body: list[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if len(header) < 3:
            key, sep, value = line.partition(":")
            key = key.strip().lower()
            if not sep or key not in ("d", "k", "period"):
                raise ColoringFormatError(f"expected header line, got {line!r}")
            header[key] = value.strip()
            continue
        body.append(line)
    missing = {"d", "k", "period"} - header.keys()
    if missing:
        raise ColoringFormatError(f"missing header fields: {sorted(missing)}")
    try:
        dset = DistanceSet.parse(header["d"])
        k = int(header["k"])
        period = int(header["period"])
        colors = [int(tok) for tok in re.split(r"[,\s]+", " ".join(body)) if tok]
    except ValueError as exc:
        raise ColoringFormatError(str(exc)) from exc
    if len(colors) != period:
        raise ColoringFormatError(f"period {period} declared but {len(colors)} colors given")
    try:
        return PeriodicColoring(dset, tuple(colors), k)
    except ValueError as exc:
        raise ColoringFormatError(str(exc)) from exc


def read_coloring(path: str | Path) -> PeriodicColoring:
    return parse_coloring(Path(path).read_text(encoding="utf-8"))


def format_coloring(coloring: PeriodicColoring, comments: Sequence[str] = (), per_line: int = 40) -> str:
    lines = [f"# {c}" for c in comments]
    lines += [
        f"D: {coloring.dset}",
        f"k: {coloring.max_color}",
        f"period: {coloring.period}",
    ]
    cols = coloring.colors
    for i in range(0, len(cols), per_line):
        lines.append(",".join(map(str, cols[i : i + per_line])))
    return "\n".join(lines) + "\n"


def write_coloring(coloring: PeriodicColoring, path: str | Path, comments: Sequence[str] = ()) -> None:
    Path(path).write_text(format_coloring(coloring, comments), encoding="utf-8")
