"""Command-line front end.

Exit codes: 0 success (valid / SAT), 1 invalid / UNSAT / failed check,
2 budget exhausted, 3 usage error.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .core import (
    ColoringFormatError,
    DistanceSet,
    UnreachableError,
    dist_general,
    read_coloring,
    verify,
    write_coloring,
)

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse names the offending flag in ``message``
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _dset(flag: str, text: str) -> DistanceSet:
    try:
        return DistanceSet.parse(text)
    except ValueError as exc:
        raise UsageError(flag, f"bad distance set {text!r} ({exc})") from exc


def _positive(flag: str, value: int, least: int = 1) -> int:
    if value < least:
        raise UsageError(flag, f"must be at least {least}, got {value}")
    return value


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_dist(a) -> int:
    d = _dset("--d", a.d)
    try:
        print(dist_general(a.a, a.b, d))
    except UnreachableError as exc:
        print(f"unreachable: {exc}")
        return EXIT_FAIL
    return EXIT_OK


def _report_violations(verdict, limit: int) -> None:
    for v in verdict.violations[:limit]:
        print(f"violation: {v}")
    extra = len(verdict.violations) - limit
    if extra > 0:
        print(f"... {extra} more")


def cmd_verify(a) -> int:
    from .data_files import load_bundled, manifest

    if (a.file is None) == (a.bundled is None):
        raise UsageError("--file", "give exactly one of --file or --bundled")
    if a.bundled is not None:
        if a.bundled not in manifest():
            raise UsageError("--bundled", f"unknown id {a.bundled!r}; known: {', '.join(manifest())}")
        col = load_bundled(a.bundled)
        label = a.bundled
    else:
        try:
            col = read_coloring(a.file)
        except FileNotFoundError as exc:
            raise UsageError("--file", f"cannot read {a.file}") from exc
        except ColoringFormatError as exc:
            print(f"format error: {exc}")
            return EXIT_FAIL
        label = a.file
    if a.d is not None:
        col = col.with_dset(_dset("--d", a.d))
    t0 = time.perf_counter()
    verdict = verify(col)
    secs = time.perf_counter() - t0
    state = "valid" if verdict.valid else "invalid"
    print(f"{label}: {state} D={{{col.dset}}} k={col.max_color} period={col.period} ({secs:.2f}s)")
    if not verdict.valid:
        print(f"violations: {len(verdict.violations)}")
        _report_violations(verdict, a.max_report)
        return EXIT_FAIL
    return EXIT_OK


def cmd_construct(a) -> int:
    from .construct import DomainError, construct, verify_lift

    _positive("--t", a.t, 3)
    try:
        built = construct(a.t, a.family, a.strategy, a.base)
    except DomainError as exc:
        raise UsageError("--t", str(exc)) from exc
    col = built.coloring
    print(f"t={built.t} s={built.s} period={col.period} colors={col.max_color} family={built.family}")
    if a.lift:
        v = verify_lift(col)
        print(f"lift to D(1,{a.t + 2}): {'valid' if v.valid else 'invalid'}")
        if not v.valid:
            return EXIT_FAIL
    if a.out:
        write_coloring(col, a.out, [f"Construction family {built.family} for D(1,{a.t}), block size {built.s}."])
        print(f"wrote {a.out}")
    return EXIT_OK


def cmd_check_meta(a) -> int:
    from .construct import DomainError, check_meta, check_pattern_cyclic, odd_meta

    try:
        meta = odd_meta(a.t, a.family)
    except DomainError as exc:
        raise UsageError("--t", str(exc)) from exc
    bad_patterns = 0
    seen = set()
    for p in meta.sequence:
        if p.colors in seen:
            continue
        seen.add(p.colors)
        pv = check_pattern_cyclic(p)
        if not pv.valid:
            bad_patterns += 1
            c = pv.conflicts[0]
            print(f"pattern {p.name}: color {c.color} at {c.pos_a},{c.pos_b} cyclic gap {c.gap}")
    verdict = check_meta(meta)
    print(verdict.table())
    print(f"blocks={len(meta)} block_size={meta.block_size} distinct_patterns={len(seen)}")
    for i, j, row in verdict.failures[: a.max_report]:
        print(f"separation failure: blocks {i},{j} {row.first},{row.second} distance {row.distance} "
              f"max common {row.max_common} aligned={row.aligned}")
    ok = verdict.valid and not bad_patterns
    print("meta-pattern: " + ("valid" if ok else "invalid"))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_density_lb(a) -> int:
    from .bounds import (
        DensityTable,
        Diverges,
        JointConstraint,
        UnsupportedCase,
        WindowTooLarge,
        density_oracle,
        density_sum,
        lower_bound_from_densities,
    )

    d = _dset("--d", a.d)
    joint = []
    for text in a.joint:
        try:
            joint.append(JointConstraint.parse(text))
        except ValueError as exc:
            raise UsageError("--joint", str(exc)) from exc
    overrides = {}
    for text in a.rho:
        try:
            key, val = text.split("=")
            overrides[int(key)] = Fraction(val)
        except ValueError as exc:
            raise UsageError("--rho", f"expected i=fraction, got {text!r}") from exc
    try:
        table = DensityTable.closed_form(d, joint, overrides)
        source = "closed form"
    except UnsupportedCase:
        def rule(i: int) -> Fraction:
            return density_oracle(d, i, a.window_cap)

        table = DensityTable(d, overrides, joint, rule)
        source = "oracle"
    try:
        c = lower_bound_from_densities(table)
    except WindowTooLarge as exc:
        print(f"density unavailable: {exc}")
        return EXIT_FAIL
    except Diverges as exc:
        print(str(exc))
        return EXIT_FAIL
    covered = table.covered()
    print(f"D={{{d}}} densities from {source}")
    for jc in table.joint_constraints:
        print(f"joint {jc}: contributes at most {jc.ratio}")
    for i in range(1, c + 1):
        tag = " (joint)" if i in covered else ""
        print(f"rho_{i} = {table.density(i)}{tag}  cumulative = {density_sum(table, i)}")
    print(f"lower bound: {c}")
    return EXIT_OK


def cmd_harmonic_lb(a) -> int:
    from .bounds import harmonic_lower_bound

    print(harmonic_lower_bound(_positive("--t", a.t)))
    return EXIT_OK


def cmd_search(a) -> int:
    from .search import SearchInstance, exact_search

    d = _dset("--d", a.d)
    inst = SearchInstance(d, _positive("--n", a.n), _positive("--k", a.k))
    if a.budget_nodes is not None:
        _positive("--budget-nodes", a.budget_nodes)
    res = exact_search(inst, a.budget_nodes, a.budget_secs)
    print(f"D={{{d}}} n={inst.n} k={inst.k}: {res.verdict} nodes={res.nodes_explored} time={res.wall_time:.2f}s")
    if res.sat:
        cert = ",".join(map(str, res.certificate))
        if a.cert_out:
            Path(a.cert_out).write_text(
                f"# Packing {inst.k}-coloring of the finite graph D_{inst.n}({d}).\n"
                f"D: {d}\nn: {inst.n}\nk: {inst.k}\n{cert}\n",
                encoding="utf-8",
            )
            print(f"certificate written to {a.cert_out}")
        else:
            print(f"certificate: {cert}")
        return EXIT_OK
    return EXIT_FAIL if res.unsat else EXIT_BUDGET


def cmd_greedy(a) -> int:
    from .search import greedy, verify_greedy_prefix

    d = _dset("--d", a.d)
    used, col = greedy(d, _positive("--n", a.n))
    print(f"D={{{d}}} n={a.n}: {used} colors")
    if a.check:
        v = verify_greedy_prefix(d, col)
        print("prefix check: " + ("valid" if v.valid else f"invalid ({len(v.violations)} violations)"))
        if not v.valid:
            return EXIT_FAIL
    if a.emit:
        with open(a.emit, "w", encoding="utf-8") as fh:
            fh.write("vertex,color\n")
            fh.writelines(f"{i},{c}\n" for i, c in enumerate(col.tolist()))
        print(f"wrote {a.emit}")
    return EXIT_OK


def cmd_sweep(a) -> int:
    from .search import greedy, sweep_csv

    _positive("--t-min", a.t_min, 2)
    if a.t_max < a.t_min:
        raise UsageError("--t-max", f"must be at least --t-min={a.t_min}")
    _positive("--n", a.n)
    rows = []
    for t in range(a.t_min, a.t_max + 1):
        used, _ = greedy(DistanceSet((1, t)), a.n)
        rows.append((t, used))
        if not a.emit:
            print(f"{t},{used}", flush=True)
    if a.emit:
        Path(a.emit).write_text(sweep_csv(rows), encoding="utf-8")
        print(f"wrote {len(rows)} rows to {a.emit}")
    return EXIT_OK


def cmd_reproduce_table1(a) -> int:
    from .table1 import published_instance_checks, reproduce_table1

    reports = reproduce_table1(searches=not a.no_search, budget_secs=a.budget_secs)
    failed = 0
    for rep in reports:
        print(rep.line())
        for err in rep.errors:
            failed += 1
            print(f"  - {err}")
    if a.published:
        for claim, verdict in published_instance_checks(a.budget_secs):
            d = ",".join(map(str, claim.dset))
            print(f"published instance D_{claim.n}({d}) k={claim.k}: {verdict}")
    counts = {s: sum(r.status == s for r in reports) for s in ("match", "differs", "incomplete", "FAIL")}
    print("summary: " + " ".join(f"{k}={v}" for k, v in counts.items()))
    return EXIT_FAIL if failed else EXIT_OK


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="packdist", description="Packing colorings of integer distance graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("dist", help="graph distance between two integers")
    s.add_argument("--d", required=True)
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.set_defaults(func=cmd_dist)

    s = sub.add_parser("verify", help="verify a periodic coloring file")
    s.add_argument("--file")
    s.add_argument("--bundled", help="id of a bundled coloring")
    s.add_argument("--d", help="check against this distance set instead of the file's")
    s.add_argument("--max-report", type=int, default=20)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("construct", help="build and verify a coloring of D(1,t)")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--family", default="auto", choices=("auto", "29", "40", "86", "even"))
    s.add_argument("--strategy", default="doubling", choices=("doubling", "greedy", "split"))
    s.add_argument("--base", default="auto", choices=("auto", "29", "40", "86"))
    s.add_argument("--lift", action="store_true", help="also verify on D(1,t+2)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("check-meta", help="pattern and separation checks for an odd construction")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--family", default="auto", choices=("auto", "29", "40", "86"))
    s.add_argument("--max-report", type=int, default=20)
    s.set_defaults(func=cmd_check_meta)

    s = sub.add_parser("density-lb", help="density lower bound")
    s.add_argument("--d", required=True)
    s.add_argument("--joint", action="append", default=[], help='e.g. "1,2:10/28"')
    s.add_argument("--rho", action="append", default=[], help="override, e.g. 1=2/5")
    s.add_argument("--window-cap", type=int, default=24)
    s.set_defaults(func=cmd_density_lb)

    s = sub.add_parser("harmonic-lb", help="harmonic lower bound for D^t")
    s.add_argument("--t", type=int, required=True)
    s.set_defaults(func=cmd_harmonic_lb)

    s = sub.add_parser("search", help="exact k-colorability of D_n(D)")
    s.add_argument("--d", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--budget-nodes", type=int)
    s.add_argument("--budget-secs", type=float)
    s.add_argument("--cert-out")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("greedy", help="first-fit coloring of a prefix")
    s.add_argument("--d", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--emit")
    s.add_argument("--check", action="store_true", help="re-verify the prefix")
    s.set_defaults(func=cmd_greedy)

    s = sub.add_parser("sweep", help="greedy color counts for D(1,t), t = t-min..t-max")
    s.add_argument("--t-min", type=int, default=2)
    s.add_argument("--t-max", type=int, required=True)
    s.add_argument("--n", type=int, default=1_000_000)
    s.add_argument("--emit")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("reproduce-table1", help="recompute the small-D bound table")
    s.add_argument("--no-search", action="store_true")
    s.add_argument("--budget-secs", type=float)
    s.add_argument("--published", action="store_true", help="also run D_26(1,2) k=7 and D_45(1,9) k=9")
    s.set_defaults(func=cmd_reproduce_table1)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"packdist {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
