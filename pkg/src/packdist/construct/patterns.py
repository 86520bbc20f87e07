"""Block patterns, cyclic pattern checks and meta-pattern separation.

``D(1, t)`` is cut into consecutive blocks of ``s`` integers and each block
receives a *pattern*, a color sequence of length ``s``.  A *meta-pattern* is
the cyclic list of patterns laid on consecutive blocks.  Two blocks ``j``
apart may share colors up to ``m`` when ``j > m/2`` and the shared colors sit
at the same offsets inside both blocks.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from ..core import DistanceSet, PeriodicColoring, Verdict, verify


class DomainError(ValueError):
    """The requested construction does not cover this ``t``."""


class ConstructionError(RuntimeError):
    """A construction produced a coloring the verifier rejects."""

    def __init__(self, message: str, verdict: Verdict | None = None):
        super().__init__(message)
        self.verdict = verdict


@dataclass(frozen=True)
class ConstructionParams:
    t: int
    s: int
    q: int = 0
    p: int = 0

    def __post_init__(self):
        if self.t < 3:
            raise DomainError(f"t must be at least 3, got {self.t}")
        if self.s not in (self.t - 1, self.t + 1):
            raise DomainError(f"block size {self.s} must be t-1 or t+1 for t={self.t}")
        if self.t % 2 and self.s % 4:
            raise DomainError(f"odd t needs a block size divisible by 4, got {self.s}")

    @classmethod
    def for_odd(cls, t: int, modulus: int = 4) -> "ConstructionParams":
        """Pick ``s`` in ``{t-1, t+1}`` divisible by 4; ``q = s // modulus``."""
        if t % 2 == 0 or t < 3:
            raise DomainError(f"t must be odd and at least 3, got {t}")
        s = t + 1 if (t + 1) % 4 == 0 else t - 1
        return cls(t=t, s=s, q=s // modulus, p=s // 4)


# --------------------------------------------------------------------------
# patterns
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Pattern:
    name: str
    colors: tuple[int, ...]

    def __post_init__(self):
        cols = tuple(int(c) for c in self.colors)
        if not cols or min(cols) < 1:
            raise ValueError(f"pattern {self.name} needs positive colors")
        object.__setattr__(self, "colors", cols)

    def __len__(self):
        return len(self.colors)

    @property
    def max_color(self) -> int:
        return max(self.colors)

    def positions(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = defaultdict(list)
        for i, c in enumerate(self.colors):
            out[c].append(i)
        return {c: tuple(v) for c, v in out.items()}


@dataclass(frozen=True)
class CyclicConflict:
    color: int
    pos_a: int
    pos_b: int
    gap: int


@dataclass
class PatternVerdict:
    conflicts: list[CyclicConflict]

    @property
    def valid(self) -> bool:
        return not self.conflicts

    def __bool__(self):
        return self.valid


def check_pattern_cyclic(pattern: Pattern | Sequence[int]) -> PatternVerdict:
    """Treat the pattern as a cycle; equal colors ``m`` need cyclic gap ``>= m + 1``.

    A color occurring once is also rejected when the cycle is shorter than
    ``m + 1``, since it then meets its own copy in the next block.
    """
    cols = pattern.colors if isinstance(pattern, Pattern) else tuple(pattern)
    n = len(cols)
    by_color: dict[int, list[int]] = defaultdict(list)
    for i, c in enumerate(cols):
        by_color[c].append(i)
    conflicts = []
    for c, pos in sorted(by_color.items()):
        if n < c + 1:
            conflicts.append(CyclicConflict(c, pos[0], pos[0] + n, n))
        for a_idx, a in enumerate(pos):
            for b in pos[a_idx + 1 :]:
                gap = min(b - a, n - (b - a))
                if gap < c + 1:
                    conflicts.append(CyclicConflict(c, a, b, gap))
    return PatternVerdict(conflicts)


# --------------------------------------------------------------------------
# meta-patterns
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MetaPattern:
    """Cyclic sequence of patterns over consecutive blocks."""

    sequence: tuple[Pattern, ...]

    def __post_init__(self):
        seq = tuple(self.sequence)
        if not seq:
            raise ValueError("a meta-pattern needs at least one block")
        sizes = {len(p) for p in seq}
        if len(sizes) != 1:
            raise ValueError(f"patterns of a meta-pattern must share one length, got {sorted(sizes)}")
        object.__setattr__(self, "sequence", seq)

    @property
    def block_size(self) -> int:
        return len(self.sequence[0])

    def __len__(self):
        return len(self.sequence)

    def colors(self) -> tuple[int, ...]:
        return tuple(c for p in self.sequence for c in p.colors)

    def coloring(self, dset: DistanceSet) -> PeriodicColoring:
        return PeriodicColoring(dset, self.colors())


@dataclass(frozen=True)
class SeparationRow:
    first: str
    second: str
    distance: int
    max_common: int
    aligned: bool

    @property
    def ok(self) -> bool:
        return 2 * self.distance > self.max_common and self.aligned


@dataclass
class MetaVerdict:
    rows: list[SeparationRow]
    failures: list[tuple[int, int, SeparationRow]] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.valid

    def table(self) -> str:
        head = f"{'Patterns':<14}| {'Cyclic distance':<16}| Max common color"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            lines.append(f"{r.first + ',' + r.second:<14}| {r.distance:<16}| {r.max_common}")
        return "\n".join(lines)


def _pair_info(a: Pattern, b: Pattern) -> tuple[int, bool]:
    """Largest shared color and whether every shared color sits at the same offsets."""
    pa, pb = a.positions(), b.positions()
    common = pa.keys() & pb.keys()
    if not common:
        return 0, True
    aligned = all(pa[c] == pb[c] for c in common)
    return max(common), aligned


def check_meta(meta: MetaPattern) -> MetaVerdict:
    """Check separation of every pair of blocks sharing a color.

    For blocks at cyclic distance ``j`` (every block meets its own copy at
    distance ``len(meta)``) sharing colors up to ``m`` the pair passes when
    ``2j > m`` and the shared colors are aligned.  The returned rows give, per
    pair of pattern names, the tightest such pair (smallest ``2j - m``).
    """
    seq = meta.sequence
    L = len(seq)
    # distinct patterns by content
    ids: dict[tuple[int, ...], int] = {}
    reps: list[Pattern] = []
    where: list[int] = []
    for p in seq:
        key = p.colors
        if key not in ids:
            ids[key] = len(reps)
            reps.append(p)
        where.append(ids[key])
    occ: dict[int, list[int]] = defaultdict(list)
    for blk, pid in enumerate(where):
        occ[pid].append(blk)

    info = {}
    for x in range(len(reps)):
        for y in range(x, len(reps)):
            info[x, y] = _pair_info(reps[x], reps[y])

    best: dict[tuple[str, str], SeparationRow] = {}
    failures = []
    for x in range(len(reps)):
        for y in range(x, len(reps)):
            m, aligned = info[x, y]
            if m == 0:
                continue
            # smallest cyclic block distance between an occurrence of x and one of y
            dmin, pair = L, (occ[x][0], occ[x][0])
            for i in occ[x]:
                for j in occ[y]:
                    d = (j - i) % L
                    d = L if d == 0 else min(d, L - d)
                    if d < dmin:
                        dmin, pair = d, (i, j)
            na, nb = sorted((reps[x].name, reps[y].name))
            row = SeparationRow(na, nb, dmin, m, aligned)
            if not row.ok:
                failures.append((pair[0], pair[1], row))
            cur = best.get((na, nb))
            if cur is None or (2 * row.distance - row.max_common, row.distance) < (
                2 * cur.distance - cur.max_common,
                cur.distance,
            ):
                best[na, nb] = row
    rows = sorted(best.values(), key=lambda r: (r.first, r.second))
    return MetaVerdict(rows, failures)


# --------------------------------------------------------------------------
# shared helpers for the constructions
# --------------------------------------------------------------------------

#: Block layout shared by every odd construction.
META_NAMES = ("P1", "P2", "P1", "P3", "P1", "P2'", "P1", "P3'",
              "P1", "P2", "P1", "P3", "P1", "P2'", "P1", "P3''")


def meta_period(counts: dict[str, int]) -> int:
    """Repeats of the 16-block layout before every rotation realigns.

    ``counts[name]`` is the number of round-robin alternatives used by the
    pattern ``name``; a pattern occurring ``k`` times per layout returns to
    its first alternative after ``c / gcd(c, k)`` layouts.
    """
    occ = defaultdict(int)
    for n in META_NAMES:
        occ[n] += 1
    period = 1
    for name, c in counts.items():
        if c > 1:
            period = math.lcm(period, c // math.gcd(c, occ[name]))
    return period


def interleave_ones(extras: Sequence[int]) -> tuple[int, ...]:
    """``(x, y, ...)`` -> ``(1, x, 1, y, ...)``."""
    out = []
    for x in extras:
        out.extend((1, int(x)))
    return tuple(out)


def finalize(coloring: PeriodicColoring, what: str) -> PeriodicColoring:
    """Verify before returning; a failing construction is a hard error."""
    verdict = verify(coloring)
    if not verdict.valid:
        first = "; ".join(str(v) for v in verdict.violations[:3])
        raise ConstructionError(
            f"{what} failed verification with {len(verdict.violations)} violations: {first}",
            verdict,
        )
    return coloring
