"""Zarankiewicz numbers z(m, n, t): the most edges a K_{t,t}-free subgraph of K_{m,n} can have.

Convention: z is the maximum edge count *without* K_{t,t}, so a graph is forced
to contain K_{t,t} only when it has strictly more than z edges.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from importlib import resources
from math import comb
from pathlib import Path
from typing import Iterable, Iterator

from .bigraph import MAX_WIDTH, BiGraph, has_biclique
from .coverage import CoverageCounters

log = logging.getLogger(__name__)

PROVENANCES = ("paper", "computed-exact", "counting-bound", "witness-search")


class ZTableError(ValueError):
    """Malformed or inconsistent Zarankiewicz table."""


class BudgetExhausted(RuntimeError):
    """The node budget ran out before the search reached a verdict."""

    def __init__(self, nodes: int, best: BiGraph | None = None) -> None:
        super().__init__(f"node budget exhausted after {nodes} nodes")
        self.nodes = nodes
        self.best = best


# -- counting bound ---------------------------------------------------------

def _min_cost(edges: int, rows: int, t: int) -> int:
    q, rem = divmod(edges, rows)
    return (rows - rem) * comb(q, t) + rem * comb(q + 1, t)


def max_edges_under_budget(rows: int, cap: int, budget: int, t: int) -> int:
    """Largest edge total over ``rows`` rows of degree <= ``cap`` with sum C(d_i, t) <= budget.

    Balanced degrees minimise the convex cost, so this equals raising degrees
    one unit at a time, cheapest marginal C(d, t-1) first.
    """
    if rows <= 0 or cap <= 0 or budget < 0:
        return 0
    lo, hi = 0, rows * cap
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if _min_cost(mid, rows, t) <= budget:
            lo = mid
        else:
            hi = mid - 1
    return lo


def kst_upper_bound(m: int, n: int, t: int) -> int:
    """Counting (Kővári–Sós–Turán style) upper bound on z(m, n, t).

    Rows of K_{t,t}-free graphs cover each t-subset of the n columns at most
    t - 1 times, so sum_i C(d_i, t) <= (t - 1) C(n, t).
    """
    if t < 1:
        raise ValueError("t must be positive")
    if t > min(m, n):
        return m * n
    return max_edges_under_budget(m, n, (t - 1) * comb(n, t), t)


def trivial_value(m: int, n: int, t: int) -> int | None:
    """z when it needs no search: full grid if no K_{t,t} fits, zero when t = 1."""
    if t > min(m, n):
        return m * n
    if t == 1:
        return 0
    return None


# -- table ------------------------------------------------------------------

@dataclass(frozen=True)
class ZRecord:
    m: int
    n: int
    t: int
    lb: int
    ub: int
    provenance: str

    def __post_init__(self) -> None:
        if min(self.m, self.n, self.t) < 1:
            raise ValueError(f"dimensions must be positive: {self.key}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if not 0 <= self.lb <= self.ub <= self.m * self.n:
            raise ValueError(f"bounds must satisfy 0 <= lb <= ub <= mn, got {self.lb}, {self.ub} for {self.key}")
        if self.provenance == "computed-exact" and self.lb != self.ub:
            raise ValueError("computed-exact records need lb == ub")

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.m, self.n, self.t)

    @property
    def exact(self) -> bool:
        return self.lb == self.ub

    def normalized(self) -> ZRecord:
        if self.m <= self.n:
            return self
        return replace(self, m=self.n, n=self.m)

    def format(self) -> str:
        return f"{self.m} {self.n} {self.t} {self.lb} {self.ub} {self.provenance}"


def normalize_key(m: int, n: int, t: int) -> tuple[int, int, int]:
    return (m, n, t) if m <= n else (n, m, t)


@dataclass
class ZTable:
    """Records keyed by (m, n, t) with m <= n."""

    records: dict[tuple[int, int, int], ZRecord] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.records = {r.normalized().key: r.normalized() for r in self.records.values()}

    @classmethod
    def from_records(cls, records: Iterable[ZRecord]) -> ZTable:
        table = cls()
        for r in records:
            table.put(r)
        return table

    def put(self, record: ZRecord) -> None:
        r = record.normalized()
        self.records[r.key] = r

    def get(self, m: int, n: int, t: int) -> ZRecord | None:
        return self.records.get(normalize_key(m, n, t))

    def copy(self) -> ZTable:
        return ZTable(dict(self.records))

    def __iter__(self) -> Iterator[ZRecord]:
        return iter(sorted(self.records.values(), key=lambda r: (r.t, r.m, r.n)))

    def __len__(self) -> int:
        return len(self.records)

    def __contains__(self, key: object) -> bool:
        if not isinstance(key, tuple) or len(key) != 3:
            return False
        return normalize_key(*key) in self.records

    def dumps(self) -> str:
        lines = ["# m n t lb ub provenance"]
        lines += [r.format() for r in self]
        return "\n".join(lines) + "\n"


def parse_ztable(text: str, check: bool = True) -> ZTable:
    table = ZTable()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 6:
            raise ZTableError(f"line {lineno}: expected 'm n t lb ub provenance', got {raw!r}")
        try:
            m, n, t, lb, ub = (int(p) for p in parts[:5])
            record = ZRecord(m, n, t, lb, ub, parts[5])
        except ValueError as exc:
            raise ZTableError(f"line {lineno}: {exc}") from None
        if record.normalized().key in table.records:
            raise ZTableError(f"line {lineno}: duplicate entry for {record.normalized().key}")
        table.put(record)
    if check:
        report = verify_table(table)
        if not report.ok:
            raise ZTableError("inconsistent table:\n  " + "\n  ".join(report.violations))
    return table


def load_ztable(path: str | Path, check: bool = True) -> ZTable:
    return parse_ztable(Path(path).read_text(), check=check)


def shipped_table() -> ZTable:
    """The literature values used by the B(2,2,3) argument."""
    text = resources.files("biramsey.data").joinpath("paper_ztable.txt").read_text()
    return parse_ztable(text)


@dataclass
class TableReport:
    checked: int
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def _dominated(a: tuple[int, int, int], b: tuple[int, int, int]) -> bool:
    """Whether z(a) <= z(b) follows from monotonicity and the m <-> n symmetry."""
    (m1, n1, t1), (m2, n2, t2) = a, b
    if t1 > t2:
        return False
    return (m1 <= m2 and n1 <= n2) or (m1 <= n2 and n1 <= m2)


def verify_table(table: ZTable) -> TableReport:
    violations: list[str] = []
    recs = list(table)
    for r in recs:
        tag = f"z({r.m},{r.n},{r.t})"
        if r.lb > r.ub:
            violations.append(f"{tag}: lb {r.lb} > ub {r.ub}")
        kst = min(kst_upper_bound(r.m, r.n, r.t), kst_upper_bound(r.n, r.m, r.t))
        if r.ub > kst:
            violations.append(f"{tag}: ub {r.ub} exceeds counting bound {kst}")
        triv = trivial_value(r.m, r.n, r.t)
        if triv is not None and not r.lb <= triv <= r.ub:
            violations.append(f"{tag}: bounds [{r.lb}, {r.ub}] exclude the forced value {triv}")
    for a in recs:
        for b in recs:
            if a is not b and _dominated(a.key, b.key) and a.lb > b.ub:
                violations.append(
                    f"monotonicity: z{a.key} >= {a.lb} but z{b.key} <= {b.ub}"
                )
    return TableReport(len(recs), violations)


def z_lookup(table: ZTable, m: int, n: int, t: int) -> ZRecord:
    """Stored bounds, tightened by symmetry, monotonicity against present records, and counting."""
    mm, nn, _ = normalize_key(m, n, t)
    triv = trivial_value(m, n, t)
    if triv is not None:
        return ZRecord(mm, nn, t, triv, triv, "counting-bound")
    ub = min(m * n, kst_upper_bound(m, n, t), kst_upper_bound(n, m, t))
    lb = 0
    stored = table.get(m, n, t)
    if stored is not None:
        lb, ub = max(lb, stored.lb), min(ub, stored.ub)
    key = (mm, nn, t)
    for r in table:
        if r.key == key:
            continue
        if _dominated(r.key, key):
            lb = max(lb, r.lb)
        if _dominated(key, r.key):
            ub = min(ub, r.ub)
    if stored is not None:
        prov = stored.provenance
    else:
        prov = "counting-bound"
    if lb > ub:
        # an inconsistent table; keep the stored record untouched rather than invent a value
        log.warning("inconsistent bounds for z%s: [%d, %d]", key, lb, ub)
        if stored is not None:
            return stored
        lb = ub
    if prov == "computed-exact" and lb != ub:
        prov = "witness-search"
    return ZRecord(mm, nn, t, lb, ub, prov)


# -- branch and bound -------------------------------------------------------

@dataclass
class ZSearchResult:
    record: ZRecord
    witness: BiGraph | None
    nodes: int
    completed: bool


def _top_bits(mask: int, k: int) -> int:
    out = 0
    while k > 0:
        hb = 1 << (mask.bit_length() - 1)
        out |= hb
        mask ^= hb
        k -= 1
    return out


def _candidates(classes: list[int], d: int) -> list[int]:
    """Rows of degree ``d`` whose ones sit at the top of each column class, largest first.

    Columns in one class agree on every row chosen so far, so packing a row's
    ones to the top of each class loses no graph up to column permutation.
    """
    sizes = [c.bit_count() for c in classes]
    out: list[int] = []

    def rec(k: int, left: int, acc: int) -> None:
        if k == len(classes):
            if left == 0:
                out.append(acc)
            return
        room = sum(sizes[k + 1:])
        for take in range(min(left, sizes[k]), max(0, left - room) - 1, -1):
            rec(k + 1, left - take, acc | _top_bits(classes[k], take))

    rec(0, d, 0)
    out.sort(reverse=True)
    return out


def _split(classes: list[int], vec: int) -> list[int]:
    out = []
    for c in classes:
        a, b = c & vec, c & ~vec
        if a:
            out.append(a)
        if b:
            out.append(b)
    return out


class _RowSearch:
    """Rows in order, degrees non-increasing, equal-degree rows non-increasing as ints."""

    def __init__(self, m: int, n: int, t: int, budget: int, target: int | None) -> None:
        self.m, self.n, self.t = m, n, t
        self.budget = budget
        self.target = target
        self.counters = CoverageCounters(n, t)
        self.global_ub = min(kst_upper_bound(m, n, t), kst_upper_bound(n, m, t))
        self.nodes = 0
        self.best = -1
        self.best_rows: tuple[int, ...] = ()
        self.rows: list[int] = []

    def _bound(self, remaining: int, cap: int) -> int:
        return max_edges_under_budget(remaining, cap, self.counters.capacity, self.t)

    def _degree_order(self, i: int, prev: int) -> list[int]:
        if i > 0:
            return list(range(prev, -1, -1))
        goal = self.target if self.target is not None else self.global_ub
        star = -(-goal // self.m)
        return sorted(range(self.n + 1), key=lambda d: (abs(d - star), -d))

    def _prunes(self, edges: int, extra: int) -> bool:
        total = min(edges + extra, self.global_ub)
        if self.target is not None:
            return total < self.target
        return total <= self.best

    def run(self) -> bool:
        """Explore the tree; False if the budget ran out first."""
        try:
            self._rec(0, 0, self.n, 1 << self.n, [(1 << self.n) - 1] if self.n else [])
        except _Stop:
            return True
        except _OutOfBudget:
            return False
        return True

    def _rec(self, i: int, edges: int, prev_deg: int, prev_vec: int, classes: list[int]) -> None:
        if edges > self.best:
            self.best = edges
            self.best_rows = tuple(self.rows) + (0,) * (self.m - i)
            if self.target is not None and edges >= self.target:
                raise _Stop
        if i == self.m:
            return
        left = self.m - i
        c = self.counters
        for d in self._degree_order(i, prev_deg):
            cost = comb(d, self.t)
            if cost > c.capacity:
                continue
            extra = d + max_edges_under_budget(left - 1, d, c.capacity - cost, self.t)
            if self._prunes(edges, extra):
                continue
            for vec in _candidates(classes, d):
                if d == prev_deg and vec > prev_vec:
                    continue
                if not c.fits(vec):
                    continue
                self.nodes += 1
                if self.nodes > self.budget:
                    raise _OutOfBudget
                c.add(vec)
                self.rows.append(vec)
                self._rec(i + 1, edges + d, d, vec, _split(classes, vec))
                self.rows.pop()
                c.remove(vec)
                if self._prunes(edges, extra):
                    break


class _Stop(Exception):
    pass


class _OutOfBudget(Exception):
    pass


def _check_args(m: int, n: int, t: int, budget: int) -> None:
    if budget <= 0:
        raise ValueError("node budget must be positive")
    if t < 1 or m < 1 or n < 1:
        raise ValueError("m, n, t must be positive")
    if max(m, n) > MAX_WIDTH:
        raise ValueError(f"width cap is {MAX_WIDTH}")


def z_search(m: int, n: int, t: int, budget: int = 10**6, table: ZTable | None = None) -> ZSearchResult:
    """Branch and bound for z(m, n, t), reporting the witness and node count."""
    _check_args(m, n, t, budget)
    triv = trivial_value(m, n, t)
    if triv is not None:
        w = BiGraph.complete(m, n) if triv else BiGraph.empty(m, n)
        return ZSearchResult(ZRecord(*normalize_key(m, n, t), triv, triv, "computed-exact"), w, 0, True)
    flip = m > n
    rm, rn = (n, m) if flip else (m, n)
    s = _RowSearch(rm, rn, t, budget, target=None)
    done = s.run()
    witness = BiGraph(rm, rn, s.best_rows)
    if flip:
        witness = witness.transpose()
    assert not has_biclique(witness, t)
    key = normalize_key(m, n, t)
    if done:
        rec = ZRecord(*key, s.best, s.best, "computed-exact")
    else:
        ub = s.global_ub
        if table is not None and (stored := table.get(m, n, t)) is not None:
            ub = min(ub, stored.ub)
        rec = ZRecord(*key, s.best, max(ub, s.best), "witness-search")
    return ZSearchResult(rec, witness, s.nodes, done)


def z_exact(m: int, n: int, t: int, budget: int = 10**6, table: ZTable | None = None) -> ZRecord:
    return z_search(m, n, t, budget, table).record


def extremal_witness(m: int, n: int, t: int, target: int, budget: int = 10**6) -> BiGraph | None:
    """A K_{t,t}-free subgraph of K_{m,n} with at least ``target`` edges.

    Returns None when the search proves no such graph exists and raises
    :class:`BudgetExhausted` when it gives up first.
    """
    _check_args(m, n, t, budget)
    if not 0 <= target <= m * n:
        raise ValueError(f"target must lie in [0, {m * n}]")
    if target == 0:
        return BiGraph.empty(m, n)
    triv = trivial_value(m, n, t)
    if triv is not None:
        return BiGraph.complete(m, n) if target <= triv else None
    flip = m > n
    rm, rn = (n, m) if flip else (m, n)
    s = _RowSearch(rm, rn, t, budget, target=target)
    done = s.run()
    if s.best >= target:
        g = BiGraph(rm, rn, s.best_rows)
        if flip:
            g = g.transpose()
        if has_biclique(g, t):
            raise AssertionError("search produced a graph containing K_{t,t}")
        return g
    if done:
        return None
    best = BiGraph(rm, rn, s.best_rows) if s.best >= 0 else None
    if best is not None and flip:
        best = best.transpose()
    raise BudgetExhausted(s.nodes, best)
