"""Bipartite graphs as per-row bit vectors, edge colorings, and biclique detection.

Row ``i`` of a :class:`BiGraph` is a Python int whose bit ``j`` is set iff the
edge ``x_i y_j`` is present.  All values are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

MAX_WIDTH = 64
CANON_MAX = 24


@dataclass(frozen=True)
class BiGraph:
    """Subgraph of K_{m,n}; ``rows[i]`` is the neighbourhood of x_i as a bit vector."""

    m: int
    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not (0 <= self.m <= MAX_WIDTH and 0 <= self.n <= MAX_WIDTH):
            raise ValueError(f"part sizes must lie in [0, {MAX_WIDTH}], got {self.m}x{self.n}")
        rows = tuple(int(r) for r in self.rows)
        if len(rows) != self.m:
            raise ValueError(f"expected {self.m} rows, got {len(rows)}")
        full = (1 << self.n) - 1
        for i, r in enumerate(rows):
            if r < 0 or r & ~full:
                raise ValueError(f"row {i} has bits outside the {self.n} columns")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def empty(cls, m: int, n: int) -> BiGraph:
        return cls(m, n, (0,) * m)

    @classmethod
    def complete(cls, m: int, n: int) -> BiGraph:
        return cls(m, n, ((1 << n) - 1,) * m)

    @classmethod
    def from_edges(cls, m: int, n: int, edges: Iterable[tuple[int, int]]) -> BiGraph:
        rows = [0] * m
        for i, j in edges:
            if not (0 <= i < m and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) outside {m}x{n}")
            rows[i] |= 1 << j
        return cls(m, n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> BiGraph:
        m = len(matrix)
        n = len(matrix[0]) if m else 0
        rows = []
        for i, line in enumerate(matrix):
            if len(line) != n:
                raise ValueError(f"row {i} has length {len(line)}, expected {n}")
            rows.append(sum(1 << j for j, v in enumerate(line) if v))
        return cls(m, n, tuple(rows))

    def to_matrix(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.rows) for j in range(self.n) if (r >> j) & 1]

    def column(self, j: int) -> int:
        """Neighbourhood of y_j as a bit vector over the rows."""
        if not 0 <= j < self.n:
            raise IndexError(f"column {j} out of range for n={self.n}")
        return sum(1 << i for i, r in enumerate(self.rows) if (r >> j) & 1)

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def transpose(self) -> BiGraph:
        return BiGraph(self.n, self.m, tuple(self.column(j) for j in range(self.n)))

    def with_edge(self, i: int, j: int) -> BiGraph:
        rows = list(self.rows)
        rows[i] |= 1 << j
        return BiGraph(self.m, self.n, tuple(rows))

    def without_edge(self, i: int, j: int) -> BiGraph:
        rows = list(self.rows)
        rows[i] &= ~(1 << j)
        return BiGraph(self.m, self.n, tuple(rows))

    def permute(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> BiGraph:
        """Return the graph whose row ``row_perm[i]`` is row ``i`` of this one (same for columns)."""
        rows = [0] * self.m
        for i, r in enumerate(self.rows):
            v = 0
            for j in range(self.n):
                if (r >> j) & 1:
                    v |= 1 << col_perm[j]
            rows[row_perm[i]] = v
        return BiGraph(self.m, self.n, tuple(rows))

    def induced(self, row_ids: Sequence[int], col_ids: Sequence[int]) -> BiGraph:
        rows = []
        for i in row_ids:
            r = self.rows[i]
            rows.append(sum(1 << k for k, j in enumerate(col_ids) if (r >> j) & 1))
        return BiGraph(len(row_ids), len(col_ids), tuple(rows))


@dataclass(frozen=True)
class EdgeColoring:
    """A t-coloring of the edges of K_{m,n}; ``cells[i][j]`` is the color of x_i y_j."""

    m: int
    n: int
    t: int
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.t < 1:
            raise ValueError("color count must be at least 1")
        cells = tuple(tuple(int(c) for c in row) for row in self.cells)
        if len(cells) != self.m or any(len(row) != self.n for row in cells):
            raise ValueError(f"cells must form a {self.m}x{self.n} matrix")
        for i, row in enumerate(cells):
            for j, c in enumerate(row):
                if not 0 <= c < self.t:
                    raise ValueError(f"cell ({i}, {j}) has color {c} outside [0, {self.t})")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def constant(cls, m: int, n: int, t: int = 1, color: int = 0) -> EdgeColoring:
        return cls(m, n, t, tuple((color,) * n for _ in range(m)))


@dataclass(frozen=True)
class DegreeSequence:
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(sorted(self.values, reverse=True)))

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def total(self) -> int:
        return sum(self.values)


def has_biclique(g: BiGraph, s: int) -> bool:
    """True iff K_{s,s} is a subgraph of ``g``.

    Looks for ``s`` rows whose common neighbourhood has at least ``s`` columns,
    scanning rows in ascending degree order and cutting any partial
    intersection that drops below ``s``.
    """
    if s < 1:
        raise ValueError("biclique order must be positive")
    if s > min(g.m, g.n):
        return False
    cand = sorted((r for r in g.rows if r.bit_count() >= s), key=int.bit_count)
    if len(cand) < s:
        return False

    def extend(start: int, acc: int, need: int) -> bool:
        if need == 0:
            return True
        for k in range(start, len(cand) - need + 1):
            nxt = acc & cand[k]
            if nxt.bit_count() >= s and extend(k + 1, nxt, need - 1):
                return True
        return False

    return extend(0, (1 << g.n) - 1, s)


def common_neighbors(g: BiGraph, i: int, j: int) -> int:
    if not (0 <= i < g.m and 0 <= j < g.m):
        raise IndexError(f"row index out of range for m={g.m}: {i}, {j}")
    if i == j:
        raise ValueError("common_neighbors needs two distinct rows")
    return g.rows[i] & g.rows[j]


def degree_sequence(g: BiGraph, side: str = "X") -> DegreeSequence:
    if side == "X":
        return DegreeSequence(tuple(r.bit_count() for r in g.rows))
    if side == "Y":
        return DegreeSequence(tuple(sum((r >> j) & 1 for r in g.rows) for j in range(g.n)))
    raise ValueError(f"side must be 'X' or 'Y', got {side!r}")


def complement(g: BiGraph) -> BiGraph:
    full = (1 << g.n) - 1
    return BiGraph(g.m, g.n, tuple(full & ~r for r in g.rows))


def color_class(c: EdgeColoring, color: int) -> BiGraph:
    if not 0 <= color < c.t:
        raise ValueError(f"color {color} outside [0, {c.t})")
    rows = tuple(sum(1 << j for j, v in enumerate(row) if v == color) for row in c.cells)
    return BiGraph(c.m, c.n, rows)


def naive_has_biclique(g: BiGraph, s: int) -> bool:
    """Reference check: try every s-subset of rows against every s-subset of columns."""
    if s > min(g.m, g.n):
        return False
    for rs in combinations(range(g.m), s):
        for cs in combinations(range(g.n), s):
            if all(g.has_edge(i, j) for i in rs for j in cs):
                return True
    return False
