"""Exact packing-colorability search on finite D_n(D) and the greedy prefix coloring.

Two distance notions live here and are never mixed:

* *finite* distances, inside the induced subgraph on ``0..n-1`` (paths may
  not leave the interval); :func:`exact_search` and :func:`verify_finite`
  use these.
* *infinite* distances of G(Z, D); :func:`greedy` uses these, so its output
  is a valid prefix of a coloring of the whole line.
"""

from __future__ import annotations

import csv
import io
import os
import time
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numba
import numpy as np

from .core import DistanceSet, Verdict, Violation, distance_profile, forbidden_offsets, verify_segment

SAT = "SAT"
UNSAT = "UNSAT"
BUDGET = "BUDGET"

DEFAULT_BUDGET_NODES = int(os.environ.get("PACKDIST_BUDGET_NODES", 10**9))
DEFAULT_BUDGET_SECS = float(os.environ.get("PACKDIST_BUDGET_SECS", 30 * 60))


@dataclass(frozen=True)
class SearchInstance:
    dset: DistanceSet
    n: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")


@dataclass
class SearchResult:
    verdict: str
    certificate: tuple[int, ...] | None
    nodes_explored: int
    wall_time: float

    @property
    def sat(self) -> bool:
        return self.verdict == SAT

    @property
    def unsat(self) -> bool:
        return self.verdict == UNSAT

    @property
    def exhausted(self) -> bool:
        """True when a budget ran out before a verdict."""
        return self.verdict == BUDGET


# --------------------------------------------------------------------------
# finite-graph distances
# --------------------------------------------------------------------------


def finite_distances(dset: DistanceSet, n: int, limit: int | None = None) -> np.ndarray:
    """All-pairs distances in D_n(dset); unreachable (or beyond ``limit``) is ``-1``."""
    steps = [d for d in dset.values if d < n]
    out = np.full((n, n), -1, dtype=np.int64)
    for src in range(n):
        row = out[src]
        row[src] = 0
        queue = deque([src])
        while queue:
            x = queue.popleft()
            dx = row[x]
            if limit is not None and dx >= limit:
                continue
            for s in steps:
                for y in (x - s, x + s):
                    if 0 <= y < n and row[y] < 0:
                        row[y] = dx + 1
                        queue.append(y)
    return out


def verify_finite(colors: Sequence[int], dset: DistanceSet) -> Verdict:
    """Check a coloring of D_n(dset) with distances measured inside ``0..n-1``."""
    cols = [int(c) for c in colors]
    n = len(cols)
    if any(c < 1 for c in cols):
        raise ValueError("every vertex of a finite coloring needs a positive color")
    top = max(cols)
    dist = finite_distances(dset, n, limit=top)
    bad = []
    for u in range(n):
        for v in range(u + 1, n):
            if cols[u] == cols[v] and 0 <= dist[u, v] <= cols[u]:
                bad.append(Violation(cols[u], u, v, int(dist[u, v])))
    return Verdict(bad)


# --------------------------------------------------------------------------
# backtracking with forward checking
# --------------------------------------------------------------------------


def _neighbour_table(dist: np.ndarray, k: int):
    """For each ``v``: later vertices within distance ``k``, sorted by distance."""
    n = len(dist)
    ptr = np.zeros(n + 1, dtype=np.int64)
    nbr: list[int] = []
    nd: list[int] = []
    for v in range(n):
        row = dist[v, v + 1 :]
        idx = np.flatnonzero((row >= 1) & (row <= k))
        order = np.argsort(row[idx], kind="stable")
        nbr.extend((idx[order] + v + 1).tolist())
        nd.extend(row[idx][order].tolist())
        ptr[v + 1] = len(nbr)
    return ptr, np.asarray(nbr, dtype=np.int64), np.asarray(nd, dtype=np.int64)


@numba.njit(cache=True)
def _window_hash(dom, v, width, n):
    h = np.uint64(1469598103934665603) ^ np.uint64(v)
    for j in range(width):
        u = v + j
        x = np.uint64(dom[u]) if u < n else np.uint64(0)
        h = (h ^ x) * np.uint64(1099511628211)
    h ^= h >> np.uint64(29)
    return h


@numba.njit(cache=True)
def _window_equal(keys, slot, dom, v, width, n):
    if keys[slot, 0] != v + 1:
        return False
    for j in range(width):
        u = v + j
        x = dom[u] if u < n else 0
        if keys[slot, j + 1] != x:
            return False
    return True


@numba.njit(cache=True)
def _memo_find(keys, dom, v, width, n, probes):
    cap = keys.shape[0]
    h = _window_hash(dom, v, width, n)
    base = np.int64(h & np.uint64(cap - 1))
    for p in range(probes):
        slot = (base + p) & (cap - 1)
        if keys[slot, 0] == 0:
            return False
        if _window_equal(keys, slot, dom, v, width, n):
            return True
    return False


@numba.njit(cache=True)
def _memo_store(keys, dom, v, width, n, probes, stored):
    cap = keys.shape[0]
    h = _window_hash(dom, v, width, n)
    base = np.int64(h & np.uint64(cap - 1))
    slot = base
    for p in range(probes):
        cand = (base + p) & (cap - 1)
        if keys[cand, 0] == 0:
            slot = cand
            break
    else_slot = keys[slot, 0] != 0
    keys[slot, 0] = v + 1
    for j in range(width):
        u = v + j
        keys[slot, j + 1] = dom[u] if u < n else 0
    if not else_slot:
        stored[0] += 1


@numba.njit(cache=True)
def _dfs_run(ptr, nbr, nd, dom, col, start, trail_u, trail_m, state, chunk, keys, width, stored):
    """Resume the search for at most ``chunk`` nodes.

    ``state = [v, trail_top, nodes]``.  Returns 1 for SAT (``col`` holds it),
    0 for UNSAT, 2 when the chunk ran out.  ``keys`` is a table of failed
    subproblems (empty table: no caching); a subproblem is the vertex ``v``
    together with the domains of ``v .. v+width-1``, every later vertex
    still having its full domain.
    """
    n = len(col)
    v = state[0]
    tp = state[1]
    nodes = state[2]
    budget = nodes + chunk
    memo = keys.shape[0] > 0
    probes = 8
    while True:
        if v == n:
            state[0] = v
            state[1] = tp
            state[2] = nodes
            return 1
        if v < 0:
            state[0] = v
            state[1] = tp
            state[2] = nodes
            return 0
        c0 = col[v]
        if c0 > 0:
            lo = start[v]
            while tp > lo:
                tp -= 1
                dom[trail_u[tp]] = trail_m[tp]
        elif memo and _memo_find(keys, dom, v, width, n, probes):
            v -= 1
            continue
        # remaining candidate colors are those above the last one tried
        m = dom[v] & ~((np.int64(1) << c0) - 1)
        if m == 0:
            # every color failed and all trails are undone: domains are as on entry
            if memo:
                _memo_store(keys, dom, v, width, n, probes, stored)
            col[v] = 0
            v -= 1
            continue
        if nodes >= budget:
            # col[v] keeps c0 and its trail is already undone, so resuming is a no-op undo
            state[0] = v
            state[1] = tp
            state[2] = nodes
            return 2
        c = 0
        while not (m >> c) & 1:
            c += 1
        c += 1
        col[v] = c
        nodes += 1
        start[v] = tp
        bit = np.int64(1) << (c - 1)
        ok = True
        for j in range(ptr[v], ptr[v + 1]):
            if nd[j] > c:
                break
            u = nbr[j]
            du = dom[u]
            if du & bit:
                trail_u[tp] = u
                trail_m[tp] = du
                tp += 1
                du &= ~bit
                dom[u] = du
                if du == 0:
                    ok = False
                    break
        if ok:
            v += 1


#: Memory for the failed-subproblem table, in bytes.
DEFAULT_MEMO_BYTES = int(os.environ.get("PACKDIST_MEMO_BYTES", 128 * 2**20))
#: Widest domain window for which the table is used by default; wider keys
#: rarely repeat and the hashing costs more than it saves.
MEMO_AUTO_WIDTH = 32


def exact_search(
    inst: SearchInstance,
    budget_nodes: int | None = None,
    budget_secs: float | None = None,
    *,
    memo: bool | None = None,
    memo_bytes: int | None = None,
    chunk: int = 2_000_000,
) -> SearchResult:
    """Decide packing ``k``-colorability of D_n(dset).

    Vertices are colored left to right, colors tried in increasing order;
    assigning ``c`` to ``v`` removes ``c`` from every later vertex within
    finite distance ``c``, and a vertex left with no color prunes the branch.
    Failed subproblems are remembered by exact key when ``memo`` is true;
    by default only when the domain window is at most ``MEMO_AUTO_WIDTH``.  A SAT certificate is re-verified before it is returned.
    """
    budget_nodes = DEFAULT_BUDGET_NODES if budget_nodes is None else int(budget_nodes)
    budget_secs = DEFAULT_BUDGET_SECS if budget_secs is None else float(budget_secs)
    memo_bytes = DEFAULT_MEMO_BYTES if memo_bytes is None else int(memo_bytes)
    t0 = time.perf_counter()
    n, k = inst.n, inst.k
    if k > 62:
        raise ValueError("at most 62 colors are supported by the bitmask search")
    dist = finite_distances(inst.dset, n, limit=k)
    ptr, nbr, nd = _neighbour_table(dist, k)
    dom = np.full(n, (np.int64(1) << k) - 1, dtype=np.int64)
    col = np.zeros(n, dtype=np.int64)
    start = np.zeros(n + 1, dtype=np.int64)
    size = max(1, len(nbr))
    trail_u = np.zeros(size, dtype=np.int64)
    trail_m = np.zeros(size, dtype=np.int64)
    state = np.zeros(3, dtype=np.int64)
    # a past vertex w < v only touches domains up to w + width
    width = 1
    for w in range(n):
        if ptr[w + 1] > ptr[w]:
            width = max(width, int(nbr[ptr[w] : ptr[w + 1]].max()) - w)
    ktype = np.uint16 if n < 2**16 - 1 and k <= 16 else np.int64
    row_bytes = (width + 1) * np.dtype(ktype).itemsize
    cap = 0
    if memo is None:
        memo = width <= MEMO_AUTO_WIDTH
    if memo and memo_bytes > 0 and n > 1:
        cap = 1 << max(0, int(memo_bytes // row_bytes).bit_length() - 1)
    keys = np.zeros((cap, width + 1), dtype=ktype)
    stored = np.zeros(1, dtype=np.int64)
    status = 2
    while True:
        step = min(chunk, budget_nodes - int(state[2]))
        if step <= 0:
            break
        status = _dfs_run(ptr, nbr, nd, dom, col, start, trail_u, trail_m, state, step, keys, width, stored)
        if status != 2:
            break
        if time.perf_counter() - t0 > budget_secs:
            break
    elapsed = time.perf_counter() - t0
    nodes = int(state[2])
    if status == 1:
        cert = tuple(int(c) for c in col)
        check = verify_finite(cert, inst.dset)
        if not check.valid:
            raise AssertionError(f"search returned an invalid certificate: {check.violations[:3]}")
        return SearchResult(SAT, cert, nodes, elapsed)
    if status == 0:
        return SearchResult(UNSAT, None, nodes, elapsed)
    return SearchResult(BUDGET, None, nodes, elapsed)


def smallest_unsat_n(
    dset: DistanceSet,
    k: int,
    n_max: int,
    n_min: int = 1,
    budget_secs: float | None = None,
) -> tuple[int | None, list[tuple[int, SearchResult]]]:
    """Smallest ``n`` in ``[n_min, n_max]`` with D_n(dset) not ``k``-colorable.

    UNSAT is monotone in ``n``, so a binary search over SAT/UNSAT works; a
    budget hit at any probe aborts with ``None``.
    """
    log: list[tuple[int, SearchResult]] = []
    lo, hi = n_min, n_max
    res = exact_search(SearchInstance(dset, hi, k), budget_secs=budget_secs)
    log.append((hi, res))
    if not res.unsat:
        return None, log
    while lo < hi:
        mid = (lo + hi) // 2
        res = exact_search(SearchInstance(dset, mid, k), budget_secs=budget_secs)
        log.append((mid, res))
        if res.exhausted:
            return None, log
        if res.unsat:
            hi = mid
        else:
            lo = mid + 1
    return hi, log


# --------------------------------------------------------------------------
# greedy
# --------------------------------------------------------------------------


@numba.njit(cache=True)
def _greedy_kernel(n, ptr, offs, kmax):
    col = np.zeros(n, dtype=np.int32)
    used = 0
    for v in range(n):
        chosen = 0
        for c in range(1, kmax + 1):
            free = True
            for j in range(ptr[c], ptr[c + 1]):
                d = offs[j]
                if d > v:
                    break
                if col[v - d] == c:
                    free = False
                    break
            if free:
                chosen = c
                break
        if chosen == 0:
            return col, -1
        col[v] = chosen
        if chosen > used:
            used = chosen
    return col, used


def _offset_table(dset: DistanceSet, kmax: int):
    profile = distance_profile(dset, kmax)
    ptr = np.zeros(kmax + 2, dtype=np.int64)
    chunks = []
    for c in range(1, kmax + 1):
        f = forbidden_offsets(dset, c, profile)
        chunks.append(f)
        ptr[c + 1] = ptr[c] + len(f)
    return ptr, np.concatenate(chunks).astype(np.int64)


def greedy(dset: DistanceSet, n: int) -> tuple[int, np.ndarray]:
    """First-fit coloring of ``0..n-1`` with infinite-graph distances.

    Returns ``(colors used, coloring)``.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    kmax = 32
    while True:
        ptr, offs = _offset_table(dset, kmax)
        col, used = _greedy_kernel(n, ptr, offs, kmax)
        if used > 0:
            return int(used), col
        kmax *= 2


def greedy_sweep(t_values: Iterable[int], n: int) -> list[tuple[int, int]]:
    """``(t, colors used)`` for the greedy coloring of a length-``n`` prefix of D(1, t)."""
    rows = []
    for t in t_values:
        if t < 2:
            raise ValueError(f"t must be at least 2, got {t}")
        used, _ = greedy(DistanceSet((1, t)), n)
        rows.append((int(t), used))
    return rows


def sweep_csv(rows: Iterable[tuple[int, int]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("t", "colors"))
    w.writerows(rows)
    return buf.getvalue()


def write_sweep(rows: Iterable[tuple[int, int]], path: str | Path) -> None:
    Path(path).write_text(sweep_csv(rows), encoding="utf-8")


def verify_greedy_prefix(dset: DistanceSet, coloring: Sequence[int]) -> Verdict:
    return verify_segment(coloring, dset)


__all__ = [
    "BUDGET",
    "SAT",
    "UNSAT",
    "SearchInstance",
    "SearchResult",
    "exact_search",
    "finite_distances",
    "greedy",
    "greedy_sweep",
    "smallest_unsat_n",
    "sweep_csv",
    "verify_finite",
    "verify_greedy_prefix",
    "write_sweep",
]
