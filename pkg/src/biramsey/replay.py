"""Mechanical replay of the counting argument that B(2,2,3) <= 17.

Suppose K_{17,17} is coloured red, blue and green with no red or blue K_{2,2}
and no green K_{3,3}.  The argument pins the green edge count, bounds the
green maximum degree, narrows the green degree multiset to a single survivor,
and finally shows that the neighbourhood of a maximum-degree row cannot carry
any admissible column-degree total.  Every numeric step is an
:class:`~biramsey.ledger.ArithStep` written over the z-table and the
structural parameters, so a different table re-validates the whole chain.
Relabelings ("call this row x2") are recorded as assumptions, not checked.

Naming used in the ledgers: x1 is a green row of maximum degree dx and
Y1 = N(x1); Y' is the rest of the columns; A is the set of rows of maximum
degree; B is the set of maximum-degree columns inside Y'.  For a row x other
than x1, N(x) meets Y1 in at most ``cap`` columns; rows attaining the cap are
collected in C (called D when the column-degree total is 72).  Y2, Y3, Y4 are
the cap-sized intersections of such rows with Y1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterator, Sequence

from .ledger import ArithStep, Assumption, CaseLedger, Env, MissingEntry, ceil_div
from .zarankiewicz import ZTable, shipped_table, trivial_value

CONVENTIONS = ("strict", "nonstrict")
INFEASIBLE = "infeasible"
NOT_REFUTED = "feasible-not-refuted"


class MissingEntries(LookupError):
    """Table entries needed by a chain are absent."""

    def __init__(self, keys: Sequence[tuple[int, int, int]]) -> None:
        self.keys = sorted(set(keys))
        super().__init__("missing z-table entries: " + ", ".join(f"z{k}" for k in self.keys))


class _Z:
    """Upper values straight from the table, plus the forced trivial values."""

    def __init__(self, table: ZTable) -> None:
        self.table = table

    def __call__(self, m: int, n: int, t: int) -> int:
        v = trivial_value(m, n, t)
        if v is not None:
            return v
        rec = self.table.get(m, n, t)
        if rec is None:
            raise MissingEntry((m, n, t))
        return rec.ub

    def missing(self, keys: Sequence[tuple[int, int, int]]) -> list[tuple[int, int, int]]:
        return [k for k in keys if trivial_value(*k) is None and k not in self.table]


def _pattern(sizes: Sequence[int]) -> tuple[int, int]:
    sizes = tuple(sizes)
    if len(sizes) != 3 or sizes[0] != sizes[1] or min(sizes) < 1:
        raise ValueError(f"expected colour sizes (s, s, g), got {sizes}")
    return sizes[0], sizes[2]


def _table(table: ZTable | None) -> ZTable:
    return shipped_table() if table is None else table


# -- colour class sizes -------------------------------------------------------

@dataclass
class ColorClassFacts:
    b: int
    sizes: tuple[int, ...]
    green: tuple[int, int]
    others_exact: int | None
    steps: list[ArithStep]

    @property
    def feasible(self) -> bool:
        return self.green[0] <= self.green[1]

    @property
    def point(self) -> bool:
        return self.green[0] == self.green[1]


def fix_color_class_sizes(b: int, sizes: Sequence[int], ztable: ZTable | None = None) -> ColorClassFacts:
    """Interval for the green edge count, and whether red and blue are forced to their maxima."""
    s, g = _pattern(sizes)
    z = _Z(_table(ztable))
    missing = z.missing([(b, b, s), (b, b, g)])
    if missing:
        raise MissingEntries(missing)
    env = Env(z, b=b, s=s, g=g)
    hi = env.let("hi", "z(b, b, g)")
    lo = env.let("lo", "max(0, b*b - 2*z(b, b, s))")
    steps: list[ArithStep] = []
    if lo > hi:
        steps.append(env.step("the three colour classes cannot cover all b*b edges",
                              "2*z(b, b, s) + z(b, b, g)", "<", "b*b"))
        return ColorClassFacts(b, (s, s, g), (lo, hi), None, steps)
    steps.append(env.step("the three colour classes can cover all b*b edges",
                          "2*z(b, b, s) + z(b, b, g)", ">=", "b*b"))
    if lo >= 1:
        steps.append(env.step(f"green below {lo} leaves a K_{{{s},{s}}}-free colour above its maximum",
                              "ceil_div(b*b - (lo - 1), 2)", ">", "z(b, b, s)"))
    others = None
    if lo == hi:
        steps.append(env.step("red and blue together fill exactly their two maxima",
                              "b*b - z(b, b, g)", "=", "2*z(b, b, s)"))
        others = env.eval("z(b, b, s)")
    return ColorClassFacts(b, (s, s, g), (lo, hi), others, steps)


# -- maximum degree -----------------------------------------------------------

@dataclass
class DeltaBound:
    convention: str
    edges: int
    lower: int
    upper: int
    least_strict: int | None
    least_nonstrict: int | None
    steps: list[ArithStep]
    flag: str | None = None

    @property
    def feasible(self) -> bool:
        return self.lower <= self.upper

    @property
    def flagged(self) -> bool:
        return self.flag is not None


def delta_bound_step(b: int, sizes: Sequence[int], ztable: ZTable | None = None,
                     convention: str = "strict", edges: int | None = None) -> DeltaBound:
    """Bound the green maximum degree by deleting a maximum-degree row.

    With that row gone, at most ``edges - d`` green edges remain on the
    (b-1) x b board, so red and blue share the rest and one of them reaches
    half of it.  ``d`` is refuted when that half beats z(b-1, b, s), strictly
    or not according to ``convention``.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    s, g = _pattern(sizes)
    table = _table(ztable)
    z = _Z(table)
    if edges is None:
        cc = fix_color_class_sizes(b, sizes, table)
        if not cc.feasible:
            raise ValueError("colour class sizes are already infeasible")
        edges = cc.green[1]
    missing = z.missing([(b - 1, b, s)])
    if missing:
        raise MissingEntries(missing)
    env = Env(z, b=b, s=s, E=edges)
    lower = ceil_div(edges, b)
    cap = z(b - 1, b, s)
    least = {"strict": None, "nonstrict": None}
    for d in range(lower, b + 1):
        half = ceil_div((b - 1) * b - (edges - d), 2)
        if least["nonstrict"] is None and half >= cap:
            least["nonstrict"] = d
        if least["strict"] is None and half > cap:
            least["strict"] = d
            break
    chosen = least[convention]
    upper = b if chosen is None else chosen - 1
    disagree = least["strict"] != least["nonstrict"]
    steps: list[ArithStep] = []
    if lower >= 1:
        steps.append(env.child(lo=lower).step(f"average green row degree forces a row of degree at least {lower}",
                                              "b*(lo - 1)", "<", "E"))
    if chosen is not None:
        rel = ">" if convention == "strict" else ">="
        steps.append(env.child(d=chosen).step(
            f"a green row of degree {chosen} leaves a red or blue class above z on the remaining board",
            "ceil_div((b - 1)*b - (E - d), 2)", rel, "z(b - 1, b, s)", flag=disagree))
    flag = None
    if disagree:
        ns, st = least["nonstrict"], least["strict"]
        nsv = ceil_div((b - 1) * b - (edges - ns), 2) if ns is not None else None
        flag = (f"maximum-degree step: degree {ns} is excluded only by the non-strict comparison "
                f"{nsv} >= z({b - 1},{b},{s}) = {cap}; the strict comparison first excludes degree {st}")
    return DeltaBound(convention, edges, lower, upper, least["strict"], least["nonstrict"], steps, flag)


# -- degree multisets -----------------------------------------------------------

def enumerate_degree_multisets(b: int, E: int, dmax: int) -> Iterator[tuple[int, ...]]:
    """All non-increasing sequences of ``b`` values in [0, dmax] summing to ``E``."""
    if b < 0 or E < 0 or dmax < 0 or E > b * dmax:
        return
    prefix: list[int] = []

    def rec(k: int, remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        if k == 0:
            if remaining == 0:
                yield tuple(prefix)
            return
        for v in range(min(cap, remaining), ceil_div(remaining, k) - 1, -1):
            prefix.append(v)
            yield from rec(k - 1, remaining - v, v)
            prefix.pop()

    yield from rec(b, E, dmax)


def multiset_label(D: Sequence[int]) -> str:
    parts: list[str] = []
    i = 0
    while i < len(D):
        j = i
        while j < len(D) and D[j] == D[i]:
            j += 1
        parts.append(f"{D[i]}^{j - i}" if j - i > 1 else str(D[i]))
        i = j
    return "(" + ", ".join(parts) + ")"


def _grouped_sum(D: Sequence[int]) -> str:
    terms: list[str] = []
    i = 0
    while i < len(D):
        j = i
        while j < len(D) and D[j] == D[i]:
            j += 1
        terms.append(f"{j - i}*{D[i]}")
        i = j
    return " + ".join(terms) if terms else "0"


def refute_degree_multiset(D: Sequence[int], n_cols: int, t: int, ztable: ZTable | None = None,
                           required: int | None = None) -> list[ArithStep] | None:
    """Chain refuting a row-degree multiset, or None when it survives.

    The k largest degrees span a k x n_cols K_{t,t}-free subgraph, so their sum
    may not exceed z(k, n_cols, t); prefix lengths without a table value are
    skipped.  A total below ``required`` is refuted as a shortfall.
    """
    D = tuple(D)
    if any(D[i] < D[i + 1] for i in range(len(D) - 1)):
        raise ValueError("degree multiset must be non-increasing")
    z = _Z(_table(ztable))
    env = Env(z)
    total = 0
    for k in range(1, len(D) + 1):
        total += D[k - 1]
        try:
            bound = z(k, n_cols, t)
        except MissingEntry:
            continue
        if total > bound:
            return [env.step(f"the {k} largest degrees exceed z({k},{n_cols},{t})",
                             _grouped_sum(D[:k]), ">", f"z({k}, {n_cols}, {t})")]
    if required is not None and total < required:
        return [env.step("degree total falls short of the green edge count",
                         _grouped_sum(D), "<", str(required))]
    return None


UNENUMERATED = "remaining multisets (enumeration limit reached)"


def degree_multiset_ledger(b: int, E: int, dmax: int, t: int, ztable: ZTable | None = None,
                           case_limit: int | None = None) -> CaseLedger:
    """One case per multiset; past ``case_limit`` the rest are lumped into a single open case."""
    table = _table(ztable)
    ledger = CaseLedger(f"green row-degree multisets: {b} values in [0,{dmax}] summing to {E}")
    top = E - b * (dmax - 1)
    if top >= 1:
        env = Env(None, b=b, E=E, dmax=dmax, k=top)
        ledger.facts.append(env.step(f"fewer than {top} rows of degree {dmax} cannot reach {E}",
                                     "(k - 1)*dmax + (b - k + 1)*(dmax - 1)", "<", "E"))
    for i, D in enumerate(enumerate_degree_multisets(b, E, dmax)):
        if case_limit is not None and i >= case_limit:
            ledger.add_case(UNENUMERATED, None)
            break
        ledger.add_case(multiset_label(D), refute_degree_multiset(D, b, t, table, required=E))
    ledger.notes.append("column degrees obey the same ledger, since z(k, n, t) = z(n, k, t)")
    return ledger


# -- neighbourhood of a maximum-degree row ----------------------------------------

@dataclass
class IntersectionCap:
    cap: int
    chain: list[ArithStep]
    boundary: list[ArithStep]


def intersection_cap(deg_x: int, b: int, t: int, degree_floor: int,
                     ztable: ZTable | None = None) -> IntersectionCap:
    """Largest possible |N(x) ∩ N(x')| for two distinct rows.

    On s shared columns every other row has at most t-1 neighbours (else a
    K_{t,t} with x and x'), so their degrees total at most 2s + (b-2)(t-1),
    which must still reach s * degree_floor.
    """
    if not 0 <= deg_x <= b:
        raise ValueError("need 0 <= deg_x <= b")
    env = Env(None, b=b, t=t, f=degree_floor)
    cap = deg_x
    if degree_floor > 0:
        for s in range(deg_x, -1, -1):
            if 2 * s + (b - 2) * (t - 1) >= s * degree_floor:
                cap = s
                break
    chain: list[ArithStep] = []
    boundary: list[ArithStep] = []
    if cap < deg_x:
        chain.append(env.child(s=cap + 1).step(
            f"{cap + 1} shared columns would average degree below {degree_floor}",
            "2*s + (b - 2)*(t - 1)", "<", "s*f"))
    if degree_floor > 0:
        boundary.append(env.child(s=cap).step(
            f"{cap} shared columns are not refuted", "2*s + (b - 2)*(t - 1)", ">=", "s*f"))
    return IntersectionCap(cap, chain, boundary)


@dataclass
class SumBounds:
    lower: int
    upper: int
    lower_chain: list[ArithStep]
    upper_chain: list[ArithStep]
    assumptions: list[Assumption] = field(default_factory=list)

    @property
    def values(self) -> range:
        return range(self.lower, self.upper + 1)


def intersection_sum_bounds(b: int, deg_x: int, dmax: int, dmin: int, cap: int,
                            ztable: ZTable | None = None, t: int = 3) -> SumBounds:
    """Interval for n, the sum of the column degrees over N(x1) for a maximum-degree row x1.

    The lower end is deg_x * dmin.  The upper end replays the argument that
    n >= deg_x * dmin + 2 forces a green K_{3,3}: two maximum-degree columns
    in Y1, a row x2 at the cap, rigidity of the cap columns, no second row at
    the cap, then a pigeonhole over the neighbours of a maximum-degree column.
    """
    if dmin <= 0:
        return SumBounds(0, deg_x * b, [], [])
    env = Env(None, b=b, t=t, dx=deg_x, dmax=dmax, dmin=dmin, cap=cap)
    lower_chain = [env.step(f"a total below {deg_x * dmin} leaves a column of Y1 under degree {dmin}",
                            "floor_div(dx*dmin - 1, dx)", "<", "dmin")]
    upper = deg_x * dmax
    chain: list[ArithStep] = []
    assumptions: list[Assumption] = []
    if dmax == dmin + 1 and deg_x - cap - 1 >= 1:
        e = env.child(n=deg_x * dmin + 2)
        chain = [
            e.step("Y1 holds at least two columns of maximum degree", "n - dx*dmin", ">=", "2"),
            e.step("some row other than x1 meets Y1 at the cap", "(b - 1)*(cap - 1)", "<", "n - dx"),
            e.step("rows outside x1, x2 meet Y2 in t-1 columns; Y2 degrees fill exactly",
                   "2*cap + (b - 2)*(t - 1)", "=", "cap*dmin"),
            e.step("one row meeting Y2 in fewer than t-1 columns breaks the degree floor",
                   "2*cap + (b - 3)*(t - 1) + (t - 2)", "<", "cap*dmin"),
            e.step("a second row at the cap would cover all but one column of Y1 with Y2",
                   "2*cap - (t - 1)", "=", "dx - 1"),
            e.step("and then the column-degree total stays below n", "(dx - 1)*dmin + dmax", "<", "n"),
            e.step("with x2 alone at the cap the total cannot exceed n", "dx + cap + (b - 2)*(cap - 1)", "<", "n + 1"),
            e.step("so every row other than x1, x2 meets Y1 in exactly cap-1 columns",
                   "dx + cap + (b - 2)*(cap - 1)", "=", "n"),
            e.step("each other neighbour of y6 meets y7, y8, y9 at least once",
                   "(cap - 1) - (t - 1) - 1", ">=", "1"),
            e.step("pigeonhole: t neighbours of y6 share one of y7, y8, y9",
                   "ceil_div(dmax - 1, dx - cap - 1)", ">=", "t"),
            e.step("pigeonhole: two of them share a column of Y2", "t*(t - 1)", ">", "cap"),
            e.step("x1 and those two rows span a green K_{t,t}", "min(1 + 2, 1 + 1 + 1)", ">=", "t"),
        ]
        assumptions = [
            Assumption("labels", "x1 has maximum degree, Y1 = N(x1) = {y1..y9}"),
            Assumption("labels", "x2 meets Y1 at the cap in Y2 = {y1..y5}"),
            Assumption("labels", "y6 is a maximum-degree column of Y1 outside Y2; its neighbours x3, x4 share y7 and y1"),
        ]
        if all(s.holds for s in chain):
            upper = deg_x * dmin + 1
    return SumBounds(deg_x * dmin, upper, lower_chain, chain, assumptions)


# -- the two remaining totals ---------------------------------------------------

@dataclass(frozen=True)
class GreenStructure:
    """Parameters the final ledgers are written over."""

    b: int
    t: int
    edges: int
    dmax: int
    dmin: int
    high_rows: int
    cap: int
    n_low: int
    n_high: int

    def env(self, n: int) -> Env:
        return Env(None, b=self.b, t=self.t, E=self.edges, dx=self.dmax, dmax=self.dmax,
                   dmin=self.dmin, a=self.high_rows, cap=self.cap, n=n, nhi=self.n_high,
                   yp=self.b - self.dmax)


def _pigeonhole_tail(e: Env, neighbours: str) -> list[ArithStep]:
    return [
        e.step("each such neighbour meets the three columns outside Y2 and y at least once",
               "(cap - 1) - (t - 1) - 1", ">=", "1"),
        e.step("pigeonhole: t of them share one of those three columns",
               f"ceil_div({neighbours}, dx - cap - 1)", ">=", "t"),
        e.step("pigeonhole: two of them share a column of Y2", "t*(t - 1)", ">", "cap"),
        e.step("x1 and those two rows span a green K_{t,t}", "min(1 + 2, 1 + 1 + 1)", ">=", "t"),
    ]


def _ledger_73(st: GreenStructure, n: int) -> CaseLedger:
    e = st.env(n)
    e.let("nB", "E - n - yp*dmin")
    ledger = CaseLedger(f"column-degree total n = {n} over N(x1)")
    ledger.assumptions = [
        Assumption("labels", "C = rows other than x1 meeting Y1 at the cap; x2, x3, x4 denote members of C"),
        Assumption("labels", "for x2 in C, Y2 = N(x2) ∩ Y1; for x3 in C, Y3 = N(x3) ∩ Y1"),
        Assumption("labels", "y9 is the single maximum-degree column of Y1"),
    ]
    ledger.facts = [
        e.step("Y1 holds exactly one maximum-degree column", "n - dx*dmin", "=", "1"),
        e.step("cap columns of a C-row have degree exactly dmin", "2*cap + (b - 2)*(t - 1)", "=", "cap*dmin"),
        e.step("every row outside x1 and a C-row meets its cap columns in exactly t-1",
               "2*cap + (b - 3)*(t - 1) + (t - 2)", "<", "cap*dmin"),
    ]
    ledger.add_case("|C| >= 3", [
        e.step("Y2 and Y3 cover all but one column of Y1", "2*cap - (t - 1)", "=", "dx - 1"),
        e.step("x4 meets Y2 ∪ Y3 in too few columns, so it contains y9", "2*(t - 1)", "<", "cap"),
        e.step("every column of Y1 then has degree dmin, contradicting n", "dx*dmin", "<", "n"),
    ])
    ledger.add_case("|C| = 0", [
        e.step("every row other than x1 meets Y1 in exactly cap-1 columns", "(b - 1)*(cap - 1)", "=", "n - dx"),
        e.step("Y' holds nB maximum-degree columns, the rest of A's count", "nB", "=", "a - (n - dx*dmin)"),
        e.step("a row of A with at most one column in B covers Y' minus B", "dx - (cap - 1) - 1", ">=", "yp - nB"),
        e.step("the other rows of A would then span a green K_{t,t}", "min(a - 1, yp - nB)", ">=", "t"),
        e.step("a row of A with two columns in B has column-degree total above the upper end",
               "(2*dmax + (dx - (cap - 1) - 2)*dmin) + (cap - 1)*dmin", ">=", "nhi + 1"),
    ])
    ledger.add_case("|C| = 1", [
        e.step("rows other than x1, x2 fall one column short in total",
               "(b - 2)*(cap - 1) - (n - dx - cap)", "=", "1"),
    ] + _pigeonhole_tail(e, "dmax - 2"))
    ledger.add_case("|C| = 2, at most one short row on y9", [
        e.step("Y2 and Y3 cover all of Y1 but y9", "2*cap - (t - 1)", "=", "dx - 1"),
        e.step("rows other than x1, x2, x3 fall two columns short in total",
               "(b - 3)*(cap - 1) - (n - dx - 2*cap)", "=", "2"),
    ] + _pigeonhole_tail(e, "dmax - 2"))
    ledger.add_case("|C| = 2, two short rows on y9", [
        e.step("Y2 and Y3 cover all of Y1 but y9", "2*cap - (t - 1)", "=", "dx - 1"),
        e.step("a short row on y9 keeps its other columns inside Y2", "(cap - 2) - 1", "=", "t - 1"),
        e.step("Y2 ∩ Y3 has exactly t-1 columns, so both short rows contain it", "2*cap - (dx - 1)", "=", "t - 1"),
        e.step("x1 and the two short rows span a green K_{t,t} on Y2 ∩ Y3 and y9",
               "min(1 + 2, (t - 1) + 1)", ">=", "t"),
    ])
    ledger.assumptions.append(Assumption("labels", "the short rows of |C| = 2 on y9 are x and x'"))
    return ledger


def _ledger_72(st: GreenStructure, n: int) -> CaseLedger:
    e = st.env(n)
    e.let("nB", "E - n - yp*dmin")
    ledger = CaseLedger(f"column-degree total n = {n} over N(x1)")
    ledger.assumptions = [
        Assumption("labels", "D = rows other than x1 meeting Y1 at the cap; E = rows meeting Y1 in fewer than cap-1"),
        Assumption("labels", "x2, x3, x4, x5 denote members of D with Y2, Y3, Y4 their intersections with Y1"),
    ]
    ledger.facts = [
        e.step("every column of Y1 has degree dmin", "n - dx*dmin", "=", "0"),
        e.step("cap columns of a D-row have degree exactly dmin", "2*cap + (b - 2)*(t - 1)", "=", "cap*dmin"),
        e.step("every row outside x1 and a D-row meets its cap columns in exactly t-1",
               "2*cap + (b - 3)*(t - 1) + (t - 2)", "<", "cap*dmin"),
    ]
    ledger.add_case("|D| >= 4", [
        e.step("Y2 and Y3 cover all of Y1 but y9", "2*cap - (t - 1)", "=", "dx - 1"),
        e.step("x4 and x5 meet Y2, Y3 in t-1 each, contain y9 and avoid Y2 ∩ Y3",
               "2*(t - 1) + 1", "=", "cap"),
        e.step("pigeonhole: x4 and x5 share a column of Y2 minus Y3 (and likewise of Y3 minus Y2)",
               "2*(t - 1)", ">", "cap - (t - 1)"),
        e.step("x1, x4, x5 span a green K_{t,t} on the shared columns and y9", "min(1 + 2, 1 + 1 + 1)", ">=", "t"),
    ])
    ledger.facts.append(e.step("with at most three D-rows the shortfall, hence |E|, is at most 4",
                               "(b - 1)*(cap - 1) - (n - dx) + 3", "<=", "4"))
    ledger.add_case("|D| = 0", [
        e.step("rows other than x1 fall one column short in total", "(b - 1)*(cap - 1) - (n - dx)", "=", "1"),
        e.step("Y' holds all nB maximum-degree columns", "nB", "=", "a - (n - dx*dmin)"),
        e.step("a full row of A with at most two columns in B covers Y' minus B", "dx - (cap - 1) - 2", ">=", "yp - nB"),
        e.step("the full rows of A would then span a green K_{t,t}", "min(a - 2, yp - nB)", ">=", "t"),
        e.step("a full row of A with three columns in B has column-degree total above the upper end",
               "(3*dmax + (dx - (cap - 1) - 3)*dmin) + (cap - 1)*dmin", ">=", "nhi + 1"),
    ])
    for k in (1, 2):
        e_k = e.child(k=k)
        ledger.add_case(f"|D| = {k}", [
            e_k.step("a short row meets Y1 outside Y2 in at most one column", "(cap - 2) - (t - 1)", "<=", "1"),
            e_k.step("short rows touch fewer columns than Y1 has outside Y2, leaving y untouched",
                     "(b - 1)*(cap - 1) - (n - dx) + k", "<", "dx - cap"),
        ] + _pigeonhole_tail(e_k, "dmin - 1"))
    ledger.add_case("|D| = 3", [
        e.step("rows fall four columns short in total", "(b - 1)*(cap - 1) - (n - dx) + 3", "=", "4"),
        e.step("Y2 and Y3 cover all of Y1 but y9", "2*cap - (t - 1)", "=", "dx - 1"),
        e.step("x4 contains y9 and avoids Y2 ∩ Y3", "2*(t - 1) + 1", "=", "cap"),
        e.step("a short row on y9 must use Y2 ∩ Y3, which has t-1 columns", "2*cap - (dx - 1)", "=", "t - 1"),
        e.step("then it meets Y4 only in y9, below t-1: no short row touches y9", "1", "<", "t - 1"),
    ] + _pigeonhole_tail(e, "dmin - 1"))
    ledger.assumptions.append(Assumption("labels", "y is a column of Y1 outside Y2 with no short neighbour (y9 when |D| = 3)"))
    return ledger


def _intersection_ledger(n_value: int, st: GreenStructure) -> CaseLedger:
    if n_value not in (st.n_low, st.n_high) or st.n_high != st.n_low + 1:
        raise ValueError(f"no scripted ledger for n = {n_value}; admissible totals are "
                         f"[{st.n_low}, {st.n_high}]")
    if n_value == st.n_high:
        return _ledger_73(st, n_value)
    return _ledger_72(st, n_value)


# -- pipeline ---------------------------------------------------------------------

@dataclass
class ReplayVerdict:
    conclusion: str
    ledgers: list[CaseLedger]
    flags: list[str]
    missing: list[tuple[int, int, int]] = field(default_factory=list)
    failure: str | None = None
    reason: str = ""
    facts: dict[str, Any] = field(default_factory=dict)

    @property
    def infeasible(self) -> bool:
        return self.conclusion == INFEASIBLE

    def failed_steps(self) -> list[ArithStep]:
        return [s for led in self.ledgers for s in led.failed_steps()]

    def flagged_steps(self) -> list[ArithStep]:
        return [s for led in self.ledgers for s in led.steps() if s.strictness_flag]

    def to_dict(self) -> dict[str, Any]:
        return {
            "conclusion": self.conclusion,
            "reason": self.reason,
            "failure": self.failure,
            "missing": [list(k) for k in self.missing],
            "flags": list(self.flags),
            "facts": self.facts,
            "ledgers": [led.to_dict() for led in self.ledgers],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def report(self, max_cases: int | None = 200) -> str:
        lines: list[str] = []
        for led in self.ledgers:
            lines += led.lines(max_cases)
        lines += [f"FLAG     {f}" for f in self.flags]
        if self.missing:
            lines.append("missing: " + ", ".join(f"z({m},{n},{t})" for m, n, t in self.missing))
        if self.failure:
            lines.append(f"failed step: {self.failure}")
        lines.append(f"verdict: {self.conclusion} ({self.reason})")
        return "\n".join(lines) + "\n"


def _facts_ledger(description: str, steps: list[ArithStep], notes: Sequence[str] = ()) -> CaseLedger:
    return CaseLedger(description, facts=list(steps), notes=list(notes))


def replay_b223(ztable: ZTable | None = None, convention: str = "strict", b: int = 17,
                sizes: Sequence[int] = (2, 2, 3), case_limit: int | None = 100_000) -> ReplayVerdict:
    """Run the whole argument; ``infeasible`` certifies that no avoiding colouring of K_{b,b} exists.

    ``case_limit`` caps the number of degree multisets examined; reaching it
    leaves an open case, so the limit can only cost a verdict, never fake one.

    Anything short of a complete, fully holding chain (missing entries, a
    failing step, more than one surviving degree multiset, an interval that is
    not the scripted one) ends in ``feasible-not-refuted`` with the reason.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    s, g = _pattern(sizes)
    table = _table(ztable)
    z = _Z(table)
    ledgers: list[CaseLedger] = []
    flags: list[str] = []
    facts: dict[str, Any] = {"b": b, "sizes": [s, s, g], "convention": convention}

    def verdict(conclusion: str, reason: str, missing: Sequence[tuple[int, int, int]] = ()) -> ReplayVerdict:
        failed = [st for led in ledgers for st in led.failed_steps()]
        failure = failed[0].line() if failed else None
        if conclusion == INFEASIBLE and failed:
            conclusion, reason = NOT_REFUTED, "a step of the chain fails"
        return ReplayVerdict(conclusion, ledgers, flags, sorted(missing), failure, reason, facts)

    missing = z.missing([(b, b, s), (b, b, g), (b - 1, b, s)])
    if missing:
        return verdict(NOT_REFUTED, "z-table entries needed by the chain are missing", missing)

    cc = fix_color_class_sizes(b, sizes, table)
    ledgers.append(_facts_ledger(f"colour class sizes on K_{{{b},{b}}}", cc.steps))
    facts["green_interval"] = list(cc.green)
    facts["red_blue_exact"] = cc.others_exact
    if not cc.feasible:
        return verdict(INFEASIBLE, "the colour classes cannot cover every edge")
    if not cc.point:
        return verdict(NOT_REFUTED, f"green edge interval [{cc.green[0]},{cc.green[1]}] is not a single value")
    E = cc.green[0]

    db = delta_bound_step(b, sizes, table, convention, edges=E)
    ledgers.append(_facts_ledger("green maximum degree", db.steps))
    if db.flag:
        flags.append(db.flag)
    facts["delta"] = [db.lower, db.upper]
    if not db.feasible:
        return verdict(INFEASIBLE, "no maximum degree is admissible")

    dl = degree_multiset_ledger(b, E, db.upper, g, table, case_limit)
    ledgers.append(dl)
    survivors = dl.survivors
    facts["degree_survivors"] = survivors
    if UNENUMERATED in dl.cases:
        return verdict(NOT_REFUTED, f"more than {case_limit} green degree multisets; enumeration stopped")
    if not survivors:
        return verdict(INFEASIBLE, "every green degree multiset is refuted")
    if len(survivors) > 1:
        return verdict(NOT_REFUTED, f"{len(survivors)} green degree multisets survive")
    D = next(D for D in enumerate_degree_multisets(b, E, db.upper) if multiset_label(D) == survivors[0])
    values = sorted(set(D), reverse=True)
    if len(values) != 2 or values[0] != values[1] + 1 or values[1] < 1:
        return verdict(NOT_REFUTED, f"surviving multiset {survivors[0]} is outside the scripted argument")
    dmax, dmin = values
    high = D.count(dmax)
    dl.notes.append(f"survivor {survivors[0]} continues: maximum degree {dmax}, minimum {dmin}, "
                    f"{high} rows of maximum degree")
    facts.update(dmax=dmax, dmin=dmin, high_rows=high)
    if (s, g) != (2, 3):
        return verdict(NOT_REFUTED, "the neighbourhood argument is scripted for (2,2,3) only")

    ic = intersection_cap(dmax, b, g, dmin, table)
    ledgers.append(_facts_ledger("common green neighbours of two rows", ic.boundary + ic.chain))
    facts["cap"] = ic.cap
    if dmax - ic.cap - 1 < 1:
        return verdict(NOT_REFUTED, f"intersection cap {ic.cap} is outside the scripted argument")

    sb = intersection_sum_bounds(b, dmax, dmax, dmin, ic.cap, table, t=g)
    led = _facts_ledger("column-degree total over N(x1)", sb.lower_chain + sb.upper_chain)
    led.assumptions = list(sb.assumptions)
    ledgers.append(led)
    facts["n_interval"] = [sb.lower, sb.upper]
    if sb.upper != sb.lower + 1:
        return verdict(NOT_REFUTED, f"column-degree total interval [{sb.lower},{sb.upper}] is not the scripted pair")

    st = GreenStructure(b, g, E, dmax, dmin, high, ic.cap, sb.lower, sb.upper)
    open_cases = []
    for n in (sb.upper, sb.lower):
        led = _intersection_ledger(n, st)
        ledgers.append(led)
        if not led.closed:
            open_cases += [f"n={n}: {c}" for c in led.survivors] or [f"n={n}: setup"]
    facts["open_cases"] = open_cases
    if open_cases:
        return verdict(NOT_REFUTED, "unrefuted cases remain: " + "; ".join(open_cases))
    return verdict(INFEASIBLE, f"every case is refuted, so B({s},{s},{g}) <= {b}")


def green_structure(b: int = 17, ztable: ZTable | None = None, convention: str = "nonstrict",
                    sizes: Sequence[int] = (2, 2, 3)) -> GreenStructure:
    """Parameters established by the earlier stages, as needed for the final ledgers."""
    v = replay_b223(ztable, convention, b, sizes)
    needed = ("dmax", "dmin", "high_rows", "cap", "n_interval")
    if any(k not in v.facts for k in needed) or v.facts["n_interval"][1] != v.facts["n_interval"][0] + 1:
        raise ValueError(f"earlier stages do not establish the scripted structure: {v.reason}")
    f = v.facts
    return GreenStructure(b, sizes[2], f["green_interval"][0], f["dmax"], f["dmin"], f["high_rows"],
                          f["cap"], f["n_interval"][0], f["n_interval"][1])


def refute_intersection_sum(n_value: int, b: int = 17, ztable: ZTable | None = None,
                            convention: str = "nonstrict") -> CaseLedger:
    """Case ledger showing that a column-degree total of ``n_value`` over N(x1) forces a green K_{3,3}."""
    return _intersection_ledger(n_value, green_structure(b, ztable, convention))


def replay_upper18(ztable: ZTable | None = None, b: int = 18, sizes: Sequence[int] = (2, 2, 3)) -> list[ArithStep]:
    """The one-line capacity chain: the colour classes cannot cover K_{b,b}."""
    s, g = _pattern(sizes)
    z = _Z(_table(ztable))
    missing = z.missing([(b, b, s), (b, b, g)])
    if missing:
        raise MissingEntries(missing)
    return [Env(z, b=b, s=s, g=g).step(f"the three colour classes cannot cover K_{{{b},{b}}}",
                                       "2*z(b, b, s) + z(b, b, g)", "<", "b*b")]
