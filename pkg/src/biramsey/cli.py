"""Command-line interface.

    biramsey z compute|bound|verify-table ...
    biramsey ramsey search|verify|number ...
    biramsey replay b223|upper18 ...

Exit codes: 0 success, 1 violation or failed chain, 2 usage, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .ramsey import (
    OutcomeKind,
    RamseyInstance,
    WitnessFormatError,
    bipartite_ramsey,
    format_witness,
    read_witness,
    search_witness,
    verify_witness,
    write_witness,
)
from .replay import CONVENTIONS, MissingEntries, replay_b223, replay_upper18
from .zarankiewicz import (
    ZTable,
    ZTableError,
    kst_upper_bound,
    load_ztable,
    shipped_table,
    verify_table,
    z_lookup,
    z_search,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    subcommand: str
    budget: int
    workers: int = 1
    deterministic: bool = True
    convention: str = "strict"
    ztable: str | None = None
    out: str | None = None

    def __post_init__(self) -> None:
        if self.budget <= 0:
            raise ValueError("--budget must be positive")
        if self.workers < 1:
            raise ValueError("--workers must be at least 1")
        if self.convention not in CONVENTIONS:
            raise ValueError(f"--convention must be one of {', '.join(CONVENTIONS)}")


def _sizes(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not sizes or any(s < 1 for s in sizes):
        raise argparse.ArgumentTypeError("biclique orders must be positive")
    return sizes


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _table(cfg: RunConfig, check: bool = False) -> ZTable:
    if cfg.ztable is None or cfg.ztable == "shipped":
        return shipped_table()
    return load_ztable(cfg.ztable, check=check)


def _name(sizes: Sequence[int]) -> str:
    return ",".join(str(s) for s in sizes)


# -- z ------------------------------------------------------------------------

def cmd_z(args: argparse.Namespace, cfg: RunConfig) -> int:
    if cfg.subcommand == "verify-table":
        source = args.table or "shipped"
        table = shipped_table() if source == "shipped" else load_ztable(source, check=False)
        report = verify_table(table)
        for rec in table:
            print(rec.format())
        for v in report.violations:
            print(f"violation: {v}")
        print(f"{report.checked} records checked, {len(report.violations)} violations")
        return EXIT_OK if report.ok else EXIT_FAIL

    m, n, t = args.m, args.n, args.t
    if cfg.subcommand == "compute":
        res = z_search(m, n, t, cfg.budget, _table(cfg) if cfg.ztable else None)
        rec = res.record
        if res.completed:
            print(f"z({m},{n},{t}) = {rec.lb} ({rec.provenance})")
            print(f"nodes: {res.nodes}")
            return EXIT_OK
        print(f"{rec.lb} ≤ z({m},{n},{t}) ≤ {rec.ub} ({rec.provenance}; budget of {cfg.budget} nodes exhausted)")
        return EXIT_BUDGET

    table = _table(cfg)
    rec = z_lookup(table, m, n, t)
    kst = min(kst_upper_bound(m, n, t), kst_upper_bound(n, m, t), m * n)
    print(f"{rec.lb} ≤ ? ≤ {kst}")
    stored = table.get(m, n, t)
    if stored is not None:
        print(f"table: {stored.lb} ≤ z({m},{n},{t}) ≤ {stored.ub} ({stored.provenance})")
    print(f"combined: {rec.lb} ≤ z({m},{n},{t}) ≤ {rec.ub} ({rec.provenance}); counting bound {kst}")
    return EXIT_OK


# -- ramsey -------------------------------------------------------------------

def cmd_ramsey(args: argparse.Namespace, cfg: RunConfig) -> int:
    sizes = args.sizes
    if cfg.subcommand == "verify":
        try:
            c = read_witness(args.witness)
        except (WitnessFormatError, OSError) as exc:
            print(f"error: {args.witness}: {exc}", file=sys.stderr)
            return EXIT_FAIL
        if c.t != len(sizes):
            print(f"error: witness has {c.t} colours but {len(sizes)} sizes were given", file=sys.stderr)
            return EXIT_FAIL
        verdict = verify_witness(c, sizes, naive=args.naive)
        for i, (s, mono) in enumerate(zip(sizes, verdict.monochromatic)):
            state = f"contains K_{{{s},{s}}}" if mono else f"no K_{{{s},{s}}}"
            print(f"colour {i}: {state}")
        print("valid" if verdict.valid else "invalid")
        return EXIT_OK if verdict.valid else EXIT_FAIL

    if cfg.subcommand == "search":
        inst = RamseyInstance(args.b, sizes)
        out = search_witness(inst, cfg.budget, cfg.workers, not args.no_symmetry, cfg.deterministic)
        if out.kind is OutcomeKind.WITNESS:
            assert out.witness is not None
            print(f"Witness for b={args.b}, sizes {_name(sizes)} (nodes {out.nodes})")
            if cfg.out:
                write_witness(out.witness, cfg.out)
                print(f"witness written to {cfg.out}")
            else:
                sys.stdout.write(format_witness(out.witness))
            return EXIT_OK
        if out.kind is OutcomeKind.EXHAUSTED:
            print("Exhausted; no witness")
            print(f"nodes {out.nodes}; symmetry: {out.symmetry}")
            return EXIT_OK
        print(f"BudgetExceeded after {out.nodes} nodes")
        return EXIT_BUDGET

    bracket = bipartite_ramsey(sizes, args.b_max, cfg.budget, cfg.workers)
    name = _name(sizes)
    if bracket.value is not None:
        print(f"B({name}) = {bracket.value}")
    elif bracket.upper is not None:
        print(f"{bracket.lower} ≤ B({name}) ≤ {bracket.upper}")
    else:
        print(f"B({name}) ≥ {bracket.lower}")
    for b, o in sorted(bracket.outcomes.items()):
        print(f"b={b}: {o.kind.value} (nodes {o.nodes})")
    return EXIT_OK if bracket.value is not None else EXIT_BUDGET


# -- replay -------------------------------------------------------------------

def cmd_replay(args: argparse.Namespace, cfg: RunConfig) -> int:
    table = _table(cfg)
    if cfg.subcommand == "upper18":
        try:
            chain = replay_upper18(table, b=args.b)
        except MissingEntries as exc:
            print(f"missing: {', '.join(f'z({m},{n},{t})' for m, n, t in exc.keys)}")
            print("chain cannot be evaluated")
            return EXIT_FAIL
        for step in chain:
            print(step.line())
        ok = all(s.holds for s in chain)
        last = chain[-1]
        if ok:
            print(f"holds: {last.lhs} < {last.rhs}")
        else:
            print(f"fails: {last.lhs} {'=' if last.lhs == last.rhs else '>'} {last.rhs}, not <")
        if cfg.out:
            Path(cfg.out).write_text(json.dumps([s.to_dict() for s in chain], indent=2, ensure_ascii=False) + "\n")
        return EXIT_OK if ok else EXIT_FAIL

    verdict = replay_b223(table, cfg.convention)
    sys.stdout.write(verdict.report(max_cases=args.max_cases))
    print(f"failed steps: {len(verdict.failed_steps())}; flagged steps: {len(verdict.flagged_steps())}")
    if cfg.out:
        Path(cfg.out).write_text(verdict.to_json() + "\n")
    return EXIT_OK if verdict.infeasible else EXIT_FAIL


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=_positive, default=10**7, help="search-node budget")
    common.add_argument("--workers", type=_positive, default=1, help="worker processes for Ramsey search")
    common.add_argument("--nondeterministic", action="store_true",
                        help="let parallel Ramsey search return the first witness found")
    common.add_argument("--convention", choices=CONVENTIONS, default="strict",
                        help="comparison used where a chain meets a z value with equality")
    common.add_argument("--ztable", help="z-table file (default: the shipped table)")
    common.add_argument("--out", help="output path (witness file or JSON report)")

    p = argparse.ArgumentParser(prog="biramsey", description="Bipartite Ramsey and Zarankiewicz toolkit")
    cmds = p.add_subparsers(dest="command", required=True)

    z = cmds.add_parser("z", help="Zarankiewicz numbers").add_subparsers(dest="subcommand", required=True)
    for name, text in (("compute", "exact value by branch and bound"), ("bound", "table and counting bounds")):
        sp = z.add_parser(name, parents=[common], help=text)
        sp.add_argument("m", type=_positive)
        sp.add_argument("n", type=_positive)
        sp.add_argument("t", type=_positive)
    vt = z.add_parser("verify-table", parents=[common], help="consistency check of a z-table")
    vt.add_argument("table", nargs="?", default="shipped", help="table path or 'shipped'")

    r = cmds.add_parser("ramsey", help="bipartite Ramsey search").add_subparsers(dest="subcommand", required=True)
    rs = r.add_parser("search", parents=[common], help="search for a witness colouring of K_{b,b}")
    rs.add_argument("b", type=_positive)
    rs.add_argument("sizes", type=_sizes)
    rs.add_argument("--no-symmetry", action="store_true", help="disable symmetry breaking")
    rv = r.add_parser("verify", parents=[common], help="check a witness file")
    rv.add_argument("witness")
    rv.add_argument("sizes", type=_sizes)
    rv.add_argument("--naive", action="store_true", help="use the subset-enumeration biclique oracle")
    rn = r.add_parser("number", parents=[common], help="scan board sizes for B(sizes)")
    rn.add_argument("sizes", type=_sizes)
    rn.add_argument("--b-max", type=_positive, default=18)

    rp = cmds.add_parser("replay", help="replay the counting argument").add_subparsers(dest="subcommand", required=True)
    b223 = rp.add_parser("b223", parents=[common], help="full argument that B(2,2,3) <= 17")
    b223.add_argument("--max-cases", type=_positive, default=None,
                      help="print at most this many cases per ledger")
    u18 = rp.add_parser("upper18", parents=[common], help="capacity argument that B(2,2,3) <= 18")
    u18.add_argument("--b", type=_positive, default=18, help="board size for the capacity chain")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.subcommand, args.budget, args.workers,
                        not args.nondeterministic, args.convention, args.ztable, args.out)
    except ValueError as exc:
        parser.error(str(exc))
    handlers = {"z": cmd_z, "ramsey": cmd_ramsey, "replay": cmd_replay}
    try:
        return handlers[cfg.command](args, cfg)
    except (ZTableError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
