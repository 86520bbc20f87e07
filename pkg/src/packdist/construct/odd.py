"""Pattern colorings of D(1, t) for odd t with 29, 86 and 40 colors."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Sequence

from ..core import DistanceSet, PeriodicColoring
from .patterns import (
    META_NAMES,
    ConstructionParams,
    DomainError,
    MetaPattern,
    Pattern,
    check_pattern_cyclic,
    finalize,
    interleave_ones,
    meta_period,
)

U1 = (1, 2, 1, 3)
U2 = (1, 4, 1, 5, 1, 8, 1, 4, 1, 5, 1, 9)
U2b = (1, 4, 1, 5, 1, 10, 1, 4, 1, 5, 1, 11)
U3 = (1, 6, 1, 7, 1, 12, 1, 13, 1, 6, 1, 7, 1, 14, 1, 15)
U3b = interleave_ones((6, 7, 16, 17, 6, 7, 18, 19, 6, 7, 20, 21))
U3c32 = interleave_ones((6, 7, 22, 23, 6, 7, 24, 25, 6, 7, 26, 27, 6, 7, 28, 29))
U3c48 = interleave_ones(
    (6, 7, 22, 23, 6, 7, 24, 25, 6, 7, 26, 27, 6, 7, 22, 23, 6, 7, 28, 29, 6, 7, 30, 31)
)

#: Base unit of each pattern in the 29- and 40-color layouts.
UNITS_96 = {"P1": U1, "P2": U2, "P2'": U2b, "P3": U3, "P3'": U3b, "P3''": U3c32}
#: Base units when ``s`` is a multiple of 48 (the 86-color layout).
UNITS_48 = {"P1": U1, "P2": U2, "P2'": U2b, "P3": U3, "P3'": U3b, "P3''": U3c48}


def _repeat(unit: Sequence[int], length: int) -> tuple[int, ...]:
    reps, rest = divmod(length, len(unit))
    if rest:
        raise DomainError(f"length {length} is not a multiple of unit length {len(unit)}")
    return tuple(unit) * reps


def _layout(patterns_by_name, dset: DistanceSet) -> MetaPattern:
    """Lay patterns over blocks; ``patterns_by_name[n]`` maps occurrence index -> Pattern."""
    counts = {n: len(v) for n, v in patterns_by_name.items()}
    reps = meta_period(counts)
    seen = {n: 0 for n in patterns_by_name}
    blocks = []
    for _ in range(reps):
        for n in META_NAMES:
            variants = patterns_by_name[n]
            blocks.append(variants[seen[n] % len(variants)])
            seen[n] += 1
    return MetaPattern(tuple(blocks))


# --------------------------------------------------------------------------
# 29 colors, t = 96q +- 1
# --------------------------------------------------------------------------


def meta_29(q: int) -> MetaPattern:
    """The 16-block layout with block size ``96q``."""
    if q < 1:
        raise DomainError("q must be at least 1")
    s = 96 * q
    pats = {n: [Pattern(n, _repeat(u, s))] for n, u in UNITS_96.items()}
    return _layout(pats, DistanceSet((1, 2)))


def build_29(t: int) -> PeriodicColoring:
    """Packing coloring of D(1, t) with at most 29 colors for ``t = 96q +- 1``."""
    if t < 95 or t % 96 not in (1, 95):
        raise DomainError(f"t must be 96q-1 or 96q+1 with q >= 1, got {t}")
    q = (t + 1) // 96
    meta = meta_29(q)
    return finalize(meta.coloring(DistanceSet((1, t))), f"29-color construction for t={t}")


# --------------------------------------------------------------------------
# 86 colors, odd t >= 73
# --------------------------------------------------------------------------


@lru_cache(maxsize=1)
def residue_table() -> dict:
    """The per-residue suffix table shipped in ``data/residue_suffixes.json``."""
    with resources.files("packdist").joinpath("data/residue_suffixes.json").open(encoding="utf-8") as fh:
        raw = json.load(fh)
    return {int(k): v for k, v in raw.items() if not k.startswith("_")}


def resolve_suffix(residue: int, name: str) -> list:
    """Fully expanded item list (ints and round-robin groups) for one table cell."""
    table = residue_table()
    if residue not in table:
        raise DomainError(f"no suffix table for s mod 48 = {residue}")
    cell = table[residue][name]
    items = resolve_suffix(int(cell["base"]), name) if cell.get("base") is not None else []
    return items + list(cell["add"])


def _suffix_width(items) -> int:
    return sum(1 if isinstance(it, int) else len(it[0]) for it in items)


def _suffix_cycle(items) -> int:
    n = 1
    for it in items:
        if not isinstance(it, int):
            n = math.lcm(n, len(it))
    return n


def _suffix_at(items, k: int) -> list[int]:
    out = []
    for it in items:
        if isinstance(it, int):
            out.append(it)
        else:
            out.extend(it[k % len(it)])
    return out


def meta_86(s: int) -> MetaPattern:
    """Meta-pattern with block size ``s`` (a multiple of 4, at least 48)."""
    q, r = divmod(s, 48)
    if s % 4 or q < 1:
        raise DomainError(f"block size must be a positive multiple of 4 and at least 48, got {s}")
    base = 48 * q
    pats: dict[str, list[Pattern]] = {"P1": [Pattern("P1", _repeat(U1, s))]}
    for name in ("P2", "P2'", "P3", "P3'", "P3''"):
        items = resolve_suffix(r, name)
        if 2 * _suffix_width(items) != r:
            raise DomainError(f"suffix for {name} at residue {r} has {_suffix_width(items)} colors, need {r // 2}")
        head = _repeat(UNITS_48[name], base)
        pats[name] = [
            Pattern(name, head + interleave_ones(_suffix_at(items, k)))
            for k in range(_suffix_cycle(items))
        ]
    return _layout(pats, DistanceSet((1, 2)))


def build_86(t: int) -> PeriodicColoring:
    """Packing coloring of D(1, t) with at most 86 colors for odd ``t >= 73``."""
    if t % 2 == 0 or t < 73:
        raise DomainError(f"t must be odd and at least 73, got {t}")
    params = ConstructionParams.for_odd(t, 48)
    q, r = divmod(params.s, 48)
    if r < 24 and q < 2:
        raise DomainError(f"s={params.s}: residues below 24 need s >= 96")
    meta = meta_86(params.s)
    return finalize(meta.coloring(DistanceSet((1, t))), f"86-color construction for t={t}")


# --------------------------------------------------------------------------
# shuffle and 40 colors, odd t >= 447
# --------------------------------------------------------------------------


class InfeasibleShuffle(ValueError):
    pass


@dataclass(frozen=True)
class ShuffleSpec:
    base: tuple[int, ...]
    pair_color: int
    repetitions: int

    @property
    def spacing(self) -> int:
        """Guaranteed even spacing between consecutive insertion points."""
        if self.repetitions == 0:
            return len(self.base)
        return 2 * ((len(self.base) // self.repetitions) // 2)

    @property
    def feasible(self) -> bool:
        return self.repetitions == 0 or self.spacing >= self.pair_color


def _check_alternating(seq: Sequence[int]) -> None:
    if len(seq) % 2:
        raise InfeasibleShuffle("base sequence must have even length")
    for i, c in enumerate(seq):
        if (c == 1) != (i % 2 == 0):
            raise InfeasibleShuffle(f"base does not alternate 1 / color>1 at index {i}")


def insertion_points(length: int, r: int) -> list[int]:
    """Anchors ``floor(j*length/r)`` moved up to the next even index."""
    return [((j * length // r) + 1) // 2 * 2 for j in range(r)]


def shuffle(base: Sequence[int], pair: tuple[int, int], r: int) -> tuple[int, ...]:
    """Insert ``r`` copies of ``pair = (1, alpha)`` quasi evenly into ``base``.

    ``base`` alternates 1 and colors above 1, starting with 1; insertions go
    right after a color above 1 so the result still alternates.
    """
    base = tuple(int(c) for c in base)
    one, alpha = pair
    if one != 1:
        raise InfeasibleShuffle("the inserted pair must be (1, alpha)")
    if r < 0:
        raise InfeasibleShuffle("r must be non-negative")
    if r == 0:
        return base
    _check_alternating(base)
    spec = ShuffleSpec(base, alpha, r)
    if not spec.feasible:
        raise InfeasibleShuffle(
            f"{r} copies of color {alpha} into {len(base)} positions: spacing {spec.spacing} < {alpha}"
        )
    out: list[int] = []
    prev = 0
    for p in insertion_points(len(base), r):
        out.extend(base[prev:p])
        out.extend((1, alpha))
        prev = p
    out.extend(base[prev:])
    return tuple(out)


#: Inserted colors of the 40-color layout, used in turn by successive occurrences.
ALPHAS_40 = {"P2": (32, 33, 34), "P2'": (35, 36, 37), "P3": (38, 39, 40), "P3'": (30,), "P3''": (31,)}

#: Colors of the P3 family outside the shared 6,7 scaffold, in stream order.
STREAMS_40 = {
    "P3": (12, 13, 14, 15),
    "P3'": (16, 17, 18, 19, 20, 21),
    "P3''": (22, 23, 24, 25, 26, 27, 28, 29),
}


def _scaffold_slots(s: int) -> list[str]:
    """Slot kinds shared by the P3 family: ``"6"``, ``"7"``, free ``"F"`` or fixed ``"A"``.

    Slots come in groups ``6,7,F,F``.  When ``s/2`` is 2 mod 4 two groups,
    half a block apart, get a fifth slot that always holds the inserted color;
    without it the two spare slots would crowd the stream.
    """
    slots = s // 2
    groups, spare = divmod(slots, 4)
    if spare not in (0, 2):
        raise DomainError(f"block size must be a multiple of 4, got {s}")
    # 4g + 2 slots = (g - 2) plain groups + 2 groups of five
    extended = {0, groups // 2} if spare else set()
    kinds = []
    for g in range(groups):
        kinds += ["6", "7", "F", "F"]
        if g in extended:
            kinds.append("A")
    return kinds


def scaffold_inserts(s: int, stream_len: int) -> int:
    """Inserted copies of ``alpha`` needed by a stream of length ``stream_len``."""
    kinds = _scaffold_slots(s)
    return kinds.count("A") + kinds.count("F") % stream_len


def scaffold_patterns(s: int, stream: Sequence[int], alphas: Sequence[int]) -> list[tuple[int, ...]]:
    """P3-family blocks of length ``s``, one per inserted color in ``alphas``.

    Colors 6 and 7 sit on the shared scaffold, so the three patterns agree on
    them wherever they are placed.  Free slots read the cyclic ``stream``
    except for ``f mod len(stream)`` quasi evenly spaced ones, which get the
    inserted color so that the stream wraps cleanly around the block.  All
    variants use the same slots for the insert, keeping the stream colors
    aligned between successive occurrences.
    """
    kinds = _scaffold_slots(s)
    free = kinds.count("F")
    r = free % len(stream)
    body = free - r
    for shift in range(max(1, free // max(r, 1))):
        marks = {(free // 2 + shift + (j * free) // r) % free for j in range(r)} if r else set()
        outs = []
        for alpha in alphas:
            stream_iter = iter(list(stream) * (body // len(stream)))
            filled = iter([alpha if f in marks else next(stream_iter) for f in range(free)])
            slot_colors = [
                int(k) if k in ("6", "7") else alpha if k == "A" else next(filled) for k in kinds
            ]
            outs.append(interleave_ones(slot_colors))
        if all(check_pattern_cyclic(o).valid for o in outs):
            return outs
    raise InfeasibleShuffle(f"no placement of {r} inserted colors keeps the block valid (s={s})")


def shuffle_plan(s: int) -> dict[str, int]:
    """Number of inserted ``(1, alpha)`` pairs per pattern for block size ``s``."""
    if s % 4:
        raise DomainError(f"block size must be a multiple of 4, got {s}")
    plan = {"P1": 0}
    for name in ("P2", "P2'"):
        plan[name] = (s % len(UNITS_96[name])) // 2
    for name, stream in STREAMS_40.items():
        plan[name] = scaffold_inserts(s, len(stream))
    return plan


def meta_40(s: int) -> MetaPattern:
    plan = shuffle_plan(s)
    pats: dict[str, list[Pattern]] = {"P1": [Pattern("P1", _repeat(U1, s))]}
    for name in ("P2", "P2'"):
        r = plan[name]
        unit = UNITS_96[name]
        base = unit * (s // len(unit))
        alphas = ALPHAS_40[name] if r else (0,)
        pats[name] = [Pattern(name, shuffle(base, (1, a), r)) for a in alphas]
    for name, stream in STREAMS_40.items():
        r = plan[name]
        alphas = ALPHAS_40[name] if r else (0,)
        pats[name] = [Pattern(name, p) for p in scaffold_patterns(s, stream, alphas)]
    return _layout(pats, DistanceSet((1, 2)))


def build_40(t: int) -> PeriodicColoring:
    """Packing coloring of D(1, t) with at most 40 colors for odd ``t >= 447``."""
    if t % 2 == 0 or t < 447:
        raise DomainError(f"t must be odd and at least 447, got {t}")
    params = ConstructionParams.for_odd(t)
    meta = meta_40(params.s)
    return finalize(meta.coloring(DistanceSet((1, t))), f"40-color construction for t={t}")
