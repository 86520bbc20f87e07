"""Pick a construction for a given ``t``."""

from __future__ import annotations

from dataclasses import dataclass

from ..core import PeriodicColoring
from .even import STRATEGIES, build_even, even_base
from .odd import build_29, build_40, build_86, meta_29, meta_40, meta_86
from .patterns import ConstructionParams, DomainError, MetaPattern

FAMILIES = ("auto", "29", "40", "86", "even")


@dataclass(frozen=True)
class Built:
    family: str
    t: int
    s: int
    coloring: PeriodicColoring


def _odd_family(t: int) -> str:
    if t >= 95 and t % 96 in (1, 95):
        return "29"
    if t >= 447:
        return "40"
    if t >= 73:
        return "86"
    raise DomainError(f"no odd construction covers t={t} (need t >= 73)")


def resolve_family(t: int, family: str = "auto") -> str:
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if family != "auto":
        return family
    return "even" if t % 2 == 0 else _odd_family(t)


def odd_meta(t: int, family: str = "auto") -> MetaPattern:
    """The meta-pattern an odd construction lays on D(1, t)."""
    fam = resolve_family(t, family)
    if fam == "even" or t % 2 == 0:
        raise DomainError("meta-patterns are checked for odd t; even t reuses an odd base")
    if fam == "29":
        if t < 95 or t % 96 not in (1, 95):
            raise DomainError(f"t must be 96q-1 or 96q+1, got {t}")
        return meta_29((t + 1) // 96)
    modulus = 48 if fam == "86" else 4
    s = ConstructionParams.for_odd(t, modulus).s
    return meta_86(s) if fam == "86" else meta_40(s)


def construct(t: int, family: str = "auto", strategy: str = "doubling", base: str = "auto") -> Built:
    """Build and verify a packing coloring of D(1, t)."""
    fam = resolve_family(t, family)
    if fam == "even":
        if strategy not in STRATEGIES:
            raise DomainError(f"unknown strategy {strategy!r}; choose from {', '.join(STRATEGIES)}")
        even_base(t, base)
        col = build_even(t, strategy, base)
        return Built("even", t, 4 * (t // 4) + 1, col)
    if fam == "29":
        col = build_29(t)
        return Built(fam, t, len(meta_29((t + 1) // 96).sequence[0]), col)
    if fam == "40":
        return Built(fam, t, ConstructionParams.for_odd(t).s, build_40(t))
    return Built(fam, t, ConstructionParams.for_odd(t, 48).s, build_86(t))
