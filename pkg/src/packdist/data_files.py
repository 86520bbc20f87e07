"""Bundled periodic colorings and their checksums.

The checksum covers the normalized content (distance set, color count,
period and the color list) so comments and line wrapping may change freely.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .core import DistanceSet, PeriodicColoring, parse_coloring


@dataclass(frozen=True)
class BundledSequence:
    id: str
    file: str
    dset: DistanceSet
    period: int
    max_color: int
    sha256: str

    def text(self) -> str:
        return resources.files("packdist").joinpath("data").joinpath(self.file).read_text(encoding="utf-8")

    def load(self) -> PeriodicColoring:
        return parse_coloring(self.text())

    def path(self):
        return resources.files("packdist").joinpath("data").joinpath(self.file)


class ChecksumMismatch(ValueError):
    pass


def content_digest(coloring: PeriodicColoring) -> str:
    body = f"D:{coloring.dset}|k:{coloring.max_color}|period:{coloring.period}|" + ",".join(
        map(str, coloring.colors)
    )
    return hashlib.sha256(body.encode("ascii")).hexdigest()


@lru_cache(maxsize=None)
def manifest() -> dict[str, BundledSequence]:
    raw = json.loads(resources.files("packdist").joinpath("data").joinpath("bundled.json").read_text("utf-8"))
    return {
        key: BundledSequence(key, e["file"], DistanceSet.parse(e["dset"]), e["period"], e["k"], e["sha256"])
        for key, e in raw.items()
    }


def load_bundled(key: str, *, check: bool = True) -> PeriodicColoring:
    """Load a bundled coloring; with ``check`` the header and digest must match the manifest."""
    entry = manifest()[key]
    col = entry.load()
    if check:
        problems = []
        if col.dset != entry.dset:
            problems.append(f"D: file {col.dset} vs manifest {entry.dset}")
        if col.max_color != entry.max_color:
            problems.append(f"k: file {col.max_color} vs manifest {entry.max_color}")
        if col.period != entry.period:
            problems.append(f"period: file {col.period} vs manifest {entry.period}")
        digest = content_digest(col)
        if digest != entry.sha256:
            problems.append(f"sha256: file {digest} vs manifest {entry.sha256}")
        if problems:
            raise ChecksumMismatch(f"{key} ({entry.file}) drifted:\n  " + "\n  ".join(problems))
    return col
