"""Packing colorings of integer distance graphs: construction, verification and bounds."""

from .core import (
    DistanceSet,
    PeriodicColoring,
    UnreachableError,
    Verdict,
    Violation,
    dist_1t,
    dist_general,
    lift_coloring,
    read_coloring,
    verify,
    verify_segment,
    write_coloring,
)

__version__ = "0.1.0"

__all__ = [
    "DistanceSet",
    "PeriodicColoring",
    "UnreachableError",
    "Verdict",
    "Violation",
    "dist_1t",
    "dist_general",
    "lift_coloring",
    "read_coloring",
    "verify",
    "verify_segment",
    "write_coloring",
]
