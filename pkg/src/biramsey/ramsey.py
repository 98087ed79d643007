"""Witness search for bipartite Ramsey numbers B(n_1, ..., n_t).

A witness at board size b is a t-coloring of K_{b,b} in which color i has no
K_{n_i,n_i}; it certifies B > b.  An exhausted search certifies B <= b.

Cells are colored in row-major order.  Each color keeps coverage counters over
its column n_i-subsets, updated cell by cell, so a color is rejected as soon as
the current partial row would complete a monochromatic K_{n_i,n_i}.

Symmetry breaking keeps only colorings that are the row-major
lexicographic minimum of some orbit under row, column and interchangeable-color
permutations would satisfy.  Each rule below is a property of that minimum, so
the rules are jointly sound:

* row 0 is non-decreasing: sorting the columns by row 0 never increases the
  row-major word, because row 0 comes first;
* consecutive rows are lexicographically non-decreasing: swapping an
  out-of-order pair of rows lowers the word at the first row that moves;
* among colors with equal forbidden order, color j may appear only after every
  smaller color of its group has appeared: swapping two such labels lowers the
  word at the first cell holding either.
"""

from __future__ import annotations

import math
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Sequence

from .bigraph import EdgeColoring, color_class, has_biclique, naive_has_biclique
from .coverage import CoverageCounters

MAX_BOARD = 18
MAX_COLORS = 4
_SPLIT_TARGET = 256


class OutcomeKind(str, Enum):
    WITNESS = "Witness"
    EXHAUSTED = "Exhausted"
    BUDGET_EXCEEDED = "BudgetExceeded"


class WitnessFormatError(ValueError):
    pass


@dataclass(frozen=True)
class RamseyInstance:
    b: int
    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        if self.b < 1:
            raise ValueError("board size must be positive")
        if not self.sizes or any(s < 1 for s in self.sizes):
            raise ValueError("need at least one color, each with a positive biclique order")

    @property
    def t(self) -> int:
        return len(self.sizes)


@dataclass(frozen=True)
class WitnessVerdict:
    """``monochromatic[i]`` is True when color i contains K_{n_i,n_i}."""

    sizes: tuple[int, ...]
    monochromatic: tuple[bool, ...]

    @property
    def valid(self) -> bool:
        return not any(self.monochromatic)


@dataclass
class SearchOutcome:
    kind: OutcomeKind
    witness: EdgeColoring | None
    nodes: int
    symmetry: str
    branches: int = 0

    def __post_init__(self) -> None:
        if self.kind is OutcomeKind.WITNESS and self.witness is None:
            raise ValueError("a Witness outcome needs a coloring")


def verify_witness(c: EdgeColoring, sizes: Sequence[int], naive: bool = False) -> WitnessVerdict:
    sizes = tuple(sizes)
    if c.t != len(sizes):
        raise ValueError(f"coloring has {c.t} colors but {len(sizes)} sizes were given")
    check = naive_has_biclique if naive else has_biclique
    return WitnessVerdict(sizes, tuple(check(color_class(c, i), s) for i, s in enumerate(sizes)))


# -- search -----------------------------------------------------------------

@dataclass
class _Board:
    b: int
    sizes: tuple[int, ...]
    symmetry: bool
    cells: list[int] = field(default_factory=list)
    counters: list[CoverageCounters] = field(default_factory=list)
    partial: list[int] = field(default_factory=list)
    seen: list[int] = field(default_factory=list)
    group_prev: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        b, t = self.b, len(self.sizes)
        self.cells = [-1] * (b * b)
        self.counters = [CoverageCounters(b, s) for s in self.sizes]
        self.partial = [0] * t
        self.seen = [0] * t
        # previous color with the same forbidden order, or -1
        self.group_prev = [max((j for j in range(i) if self.sizes[j] == s), default=-1)
                           for i, s in enumerate(self.sizes)]

    def allowed(self, p: int, k: int, tight: bool) -> bool:
        b = self.b
        c = p % b
        if self.symmetry:
            if p < b and c > 0 and k < self.cells[p - 1]:
                return False
            if p >= b and tight and k < self.cells[p - b]:
                return False
            if not self.seen[k] and self.group_prev[k] >= 0 and not self.seen[self.group_prev[k]]:
                return False
        return self.counters[k].fits_extending(self.partial[k], c)

    def place(self, p: int, k: int) -> None:
        c = p % self.b
        self.counters[k].add_extending(self.partial[k], c)
        self.partial[k] |= 1 << c
        self.cells[p] = k
        self.seen[k] += 1
        if c == self.b - 1:
            self.partial = [0] * len(self.sizes)

    def unplace(self, p: int) -> None:
        b = self.b
        c = p % b
        k = self.cells[p]
        if c == b - 1:
            r0 = p - c
            self.partial = [0] * len(self.sizes)
            for q in range(r0, p):
                self.partial[self.cells[q]] |= 1 << (q - r0)
        self.partial[k] &= ~(1 << c)
        self.counters[k].remove_extending(self.partial[k], c)
        self.cells[p] = -1
        self.seen[k] -= 1

    def next_tight(self, p: int, tight: bool) -> bool:
        """Tightness (row equal to the previous row so far) after placing cell p."""
        b = self.b
        if (p + 1) % b == 0:
            return True
        if p < b:
            return False
        return tight and self.cells[p] == self.cells[p - b]

    def coloring(self) -> EdgeColoring:
        b = self.b
        return EdgeColoring(b, b, len(self.sizes), tuple(tuple(self.cells[r * b:(r + 1) * b]) for r in range(b)))


class _Budget(Exception):
    pass


class _Found(Exception):
    pass


def _split_depth(b: int, t: int) -> int:
    if t == 1:
        return b * b
    return max(1, min(b * b, int(math.log(_SPLIT_TARGET) / math.log(t))))


def _replay(board: _Board, prefix: Sequence[int]) -> bool:
    tight = True
    for p, k in enumerate(prefix):
        if not board.allowed(p, k, tight):
            return False
        board.place(p, k)
        tight = board.next_tight(p, tight)
    return True


def _prefixes(b: int, sizes: tuple[int, ...], symmetry: bool, depth: int) -> tuple[list[tuple[int, ...]], int]:
    """Feasible colorings of the first ``depth`` cells, in search order, plus nodes spent."""
    board = _Board(b, sizes, symmetry)
    out: list[tuple[int, ...]] = []
    nodes = 0

    def rec(p: int, tight: bool) -> None:
        nonlocal nodes
        if p == depth:
            out.append(tuple(board.cells[:depth]))
            return
        for k in range(len(sizes)):
            if board.allowed(p, k, tight):
                nodes += 1
                board.place(p, k)
                rec(p + 1, board.next_tight(p, tight))
                board.unplace(p)

    rec(0, True)
    return out, nodes


def _run_branch(b: int, sizes: tuple[int, ...], symmetry: bool, prefix: tuple[int, ...],
                cap: int) -> tuple[OutcomeKind, tuple[int, ...] | None, int]:
    board = _Board(b, sizes, symmetry)
    if not _replay(board, prefix):
        return OutcomeKind.EXHAUSTED, None, 0
    total = b * b
    t = len(sizes)
    nodes = 0
    tight_at_start = _tight_after(board, len(prefix))

    def rec(p: int, tight: bool) -> None:
        nonlocal nodes
        if p == total:
            raise _Found
        for k in range(t):
            if board.allowed(p, k, tight):
                nodes += 1
                if nodes > cap:
                    raise _Budget
                board.place(p, k)
                rec(p + 1, board.next_tight(p, tight))
                board.unplace(p)

    try:
        rec(len(prefix), tight_at_start)
    except _Found:
        return OutcomeKind.WITNESS, tuple(board.cells), nodes
    except _Budget:
        return OutcomeKind.BUDGET_EXCEEDED, None, nodes
    return OutcomeKind.EXHAUSTED, None, nodes


def _tight_after(board: _Board, p: int) -> bool:
    """Whether the row containing cell p still equals the previous row on its filled prefix."""
    b = board.b
    r, c = divmod(p, b)
    if r == 0:
        return True
    return all(board.cells[r * b + j] == board.cells[(r - 1) * b + j] for j in range(c))


def _scheme(symmetry: bool) -> str:
    if not symmetry:
        return "none"
    return "row0-sorted; rows lex non-decreasing; first occurrence ordered within equal-order colors"


def search_witness(inst: RamseyInstance, budget: int = 10**7, workers: int = 1,
                   symmetry: bool = True, deterministic: bool = True) -> SearchOutcome:
    """Depth-first search for a witness coloring of K_{b,b}.

    Top-level branches are the feasible colorings of a fixed number of leading
    cells; the split depends only on the instance, so results and node counts
    do not depend on ``workers``.  Branch outcomes are combined in branch
    order: the first branch holding a witness supplies it (the row-major least
    witness under the scheme), and the budget is charged cumulatively.
    """
    b, sizes = inst.b, inst.sizes
    if b > MAX_BOARD:
        raise ValueError(f"board size capped at {MAX_BOARD}")
    if len(sizes) > MAX_COLORS:
        raise ValueError(f"at most {MAX_COLORS} colors")
    if budget <= 0:
        raise ValueError("node budget must be positive")
    if workers < 1:
        raise ValueError("worker count must be at least 1")
    scheme = _scheme(symmetry)
    depth = _split_depth(b, len(sizes))
    prefixes, root_nodes = _prefixes(b, sizes, symmetry, depth)
    nodes = root_nodes + 1
    if nodes > budget:
        return SearchOutcome(OutcomeKind.BUDGET_EXCEEDED, None, budget, scheme, len(prefixes))

    def finish(kind: OutcomeKind, cells: tuple[int, ...] | None, used: int) -> SearchOutcome:
        if kind is OutcomeKind.BUDGET_EXCEEDED:
            return SearchOutcome(kind, None, budget, scheme, len(prefixes))
        witness = None
        if cells is not None:
            witness = EdgeColoring(b, b, len(sizes), tuple(tuple(cells[r * b:(r + 1) * b]) for r in range(b)))
            if not verify_witness(witness, sizes).valid:
                raise AssertionError("search returned an invalid witness")
        return SearchOutcome(kind, witness, used, scheme, len(prefixes))

    if workers == 1 or len(prefixes) <= 1:
        for prefix in prefixes:
            kind, cells, used = _run_branch(b, sizes, symmetry, prefix, budget - nodes)
            nodes += used
            if kind is not OutcomeKind.EXHAUSTED:
                return finish(kind, cells, nodes)
        return finish(OutcomeKind.EXHAUSTED, None, nodes)

    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_branch, b, sizes, symmetry, prefix, budget) for prefix in prefixes]
        try:
            if not deterministic:
                pending = set(futures)
                while pending:
                    done, pending = wait(pending, return_when=FIRST_COMPLETED)
                    for fut in done:
                        kind, cells, used = fut.result()
                        nodes += used
                        if kind is OutcomeKind.WITNESS:
                            return finish(kind, cells, nodes)
                        if kind is OutcomeKind.BUDGET_EXCEEDED or nodes > budget:
                            return finish(OutcomeKind.BUDGET_EXCEEDED, None, nodes)
                return finish(OutcomeKind.EXHAUSTED, None, nodes)
            for fut in futures:
                kind, cells, used = fut.result()
                nodes += used
                if kind is OutcomeKind.BUDGET_EXCEEDED or nodes > budget:
                    return finish(OutcomeKind.BUDGET_EXCEEDED, None, nodes)
                if kind is OutcomeKind.WITNESS:
                    return finish(kind, cells, nodes)
            return finish(OutcomeKind.EXHAUSTED, None, nodes)
        finally:
            for fut in futures:
                fut.cancel()


@dataclass
class RamseyBracket:
    """Result of scanning board sizes: ``lower <= B <= upper`` (upper None when unknown)."""

    sizes: tuple[int, ...]
    lower: int
    upper: int | None
    outcomes: dict[int, SearchOutcome]

    @property
    def value(self) -> int | None:
        return self.lower if self.upper == self.lower else None


def bipartite_ramsey(sizes: Sequence[int], b_max: int = MAX_BOARD, budget: int = 10**7,
                     workers: int = 1, symmetry: bool = True) -> RamseyBracket:
    """Scan b = 1, 2, ... until a search exhausts; budget applies per board size."""
    sizes = tuple(sizes)
    if b_max > MAX_BOARD:
        raise ValueError(f"b_max capped at {MAX_BOARD}")
    outcomes: dict[int, SearchOutcome] = {}
    lower = 1
    upper = None
    for b in range(1, b_max + 1):
        out = search_witness(RamseyInstance(b, sizes), budget, workers, symmetry)
        outcomes[b] = out
        if out.kind is OutcomeKind.WITNESS:
            lower = b + 1
        elif out.kind is OutcomeKind.EXHAUSTED:
            upper = b
            break
    return RamseyBracket(sizes, lower, upper, outcomes)


# -- witness files ----------------------------------------------------------

def format_witness(c: EdgeColoring) -> str:
    if c.t > 10:
        raise ValueError("witness files hold one digit per cell, so at most 10 colors")
    lines = [f"{c.m} {c.n} {c.t}"] + ["".join(str(v) for v in row) for row in c.cells]
    return "\n".join(lines) + "\n"


def parse_witness(text: str) -> EdgeColoring:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise WitnessFormatError("line 1: empty witness file")
    head = lines[0].split()
    if len(head) != 3 or not all(h.isdigit() for h in head):
        raise WitnessFormatError(f"line 1: expected 'm n t', got {lines[0]!r}")
    m, n, t = (int(h) for h in head)
    if t < 1 or t > 10:
        raise WitnessFormatError(f"line 1: color count {t} outside [1, 10]")
    if len(lines) - 1 != m:
        raise WitnessFormatError(f"line {len(lines) + 1 if len(lines) - 1 < m else m + 2}: "
                                 f"expected {m} rows, found {len(lines) - 1}")
    rows = []
    for i, line in enumerate(lines[1:], start=2):
        if len(line) != n or not line.isdigit():
            raise WitnessFormatError(f"line {i}: expected {n} digits, got {line!r}")
        row = tuple(int(ch) for ch in line)
        if max(row, default=0) >= t:
            raise WitnessFormatError(f"line {i}: color {max(row)} outside [0, {t})")
        rows.append(row)
    return EdgeColoring(m, n, t, tuple(rows))


def read_witness(path: str | Path) -> EdgeColoring:
    return parse_witness(Path(path).read_text())


def write_witness(c: EdgeColoring, path: str | Path) -> None:
    Path(path).write_text(format_witness(c))
