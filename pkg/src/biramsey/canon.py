"""Exact canonical form of a bipartite graph under independent row and column permutations.

The form is the lexicographically least row-major bit matrix over the leaves
of an individualization-refinement tree.  Refinement is iterated degree
refinement against the cells of the opposite side; cells are split and ordered
by their count signatures, so every choice made is isomorphism-invariant.
Subtrees that an already-found automorphism maps onto explored ones are
skipped, which keeps highly symmetric graphs (empty, complete, matchings)
cheap.
"""

from __future__ import annotations

from .bigraph import CANON_MAX, BiGraph

Cell = tuple[int, ...]


class _Canonizer:
    def __init__(self, g: BiGraph) -> None:
        self.g = g
        self.m, self.n = g.m, g.n
        # vertex v < m is row v; vertex m + j is column j
        self.nbr = list(g.rows) + [g.column(j) for j in range(g.n)]
        self.best: tuple[int, ...] | None = None
        self.best_path: list[int] = []
        self.first: tuple[int, ...] | None = None
        self.first_order: list[int] = []
        self.best_order: list[int] = []
        self.first_path: list[int] = []
        self.gens: list[list[int]] = []

    def _mask(self, cell: Cell) -> int:
        if cell[0] < self.m:
            return sum(1 << v for v in cell)
        return sum(1 << (v - self.m) for v in cell)

    def refine(self, cells: list[Cell]) -> list[Cell]:
        while True:
            masks = [(c[0] < self.m, self._mask(c)) for c in cells]
            out: list[Cell] = []
            changed = False
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                is_row = cell[0] < self.m
                sig: dict[tuple[int, ...], list[int]] = {}
                for v in cell:
                    nb = self.nbr[v]
                    key = tuple((nb & mk).bit_count() for side, mk in masks if side != is_row)
                    sig.setdefault(key, []).append(v)
                if len(sig) > 1:
                    changed = True
                    out.extend(tuple(sig[k]) for k in sorted(sig))
                else:
                    out.append(cell)
            cells = out
            if not changed:
                return cells

    def leaf(self, cells: list[Cell]) -> tuple[tuple[int, ...], list[int]]:
        order = [c[0] for c in cells]
        rows = order[: self.m]
        cols = [v - self.m for v in order[self.m:]]
        mat = []
        for r in rows:
            nb = self.nbr[r]
            val = 0
            for j in cols:
                val = (val << 1) | ((nb >> j) & 1)
            mat.append(val)
        return tuple(mat), order

    def _orbit_rep(self, fixed: list[int]) -> list[int]:
        parent = list(range(self.m + self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gen in self.gens:
            if all(gen[p] == p for p in fixed):
                for v, w in enumerate(gen):
                    a, b = find(v), find(w)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return [find(v) for v in range(self.m + self.n)]

    @staticmethod
    def _common(a: list[int], b: list[int]) -> int:
        k = 0
        while k < len(a) and k < len(b) and a[k] == b[k]:
            k += 1
        return k

    def _record_aut(self, src: list[int], dst: list[int]) -> None:
        perm = [0] * (self.m + self.n)
        for a, b in zip(src, dst):
            perm[a] = b
        if any(p != v for v, p in enumerate(perm)):
            self.gens.append(perm)

    def search(self, cells: list[Cell], path: list[int]) -> int | None:
        cells = self.refine(cells)
        depth = len(path)
        target = next((k for k, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            mat, order = self.leaf(cells)
            if self.first is None:
                self.first, self.first_order, self.first_path = mat, order, list(path)
                self.best, self.best_order, self.best_path = mat, order, list(path)
                return None
            if mat == self.first:
                self._record_aut(self.first_order, order)
                return self._common(self.first_path, path)
            if mat == self.best:
                self._record_aut(self.best_order, order)
                return self._common(self.best_path, path)
            if mat < self.best:
                self.best, self.best_order, self.best_path = mat, order, list(path)
            return None

        cell = cells[target]
        explored: list[int] = []
        for v in cell:
            if any(self.nbr[v] == self.nbr[u] for u in explored):
                # twins: the transposition (u v) is an automorphism fixing the path
                continue
            if explored:
                rep = self._orbit_rep(path)
                if any(rep[v] == rep[u] for u in explored):
                    continue
            rest = tuple(w for w in cell if w != v)
            child = cells[:target] + [(v,), rest] + cells[target + 1:]
            res = self.search(child, path + [v])
            if res is not None and res < depth:
                return res
            explored.append(v)
        return None


def canonical_form(g: BiGraph) -> tuple[tuple[int, ...], list[int], list[int]]:
    """Canonical matrix (rows as ints, column 0 most significant) plus row and column orders."""
    if g.m > CANON_MAX or g.n > CANON_MAX:
        raise ValueError(f"canonical form limited to {CANON_MAX}x{CANON_MAX}, got {g.m}x{g.n}")
    cz = _Canonizer(g)
    cells: list[Cell] = []
    if g.m:
        cells.append(tuple(range(g.m)))
    if g.n:
        cells.append(tuple(range(g.m, g.m + g.n)))
    if not cells:
        return (), [], []
    cz.search(cells, [])
    assert cz.best is not None
    order = cz.best_order
    return cz.best, order[: g.m], [v - g.m for v in order[g.m:]]


def canonical_key(g: BiGraph) -> bytes:
    """Opaque key, equal for two graphs iff they differ by row and column permutations."""
    mat, _, _ = canonical_form(g)
    width = (g.n + 7) // 8
    return bytes([g.m, g.n]) + b"".join(r.to_bytes(width, "big") for r in mat)


def canonical_graph(g: BiGraph) -> BiGraph:
    mat, _, _ = canonical_form(g)
    n = g.n
    rows = tuple(sum(1 << j for j in range(n) if (r >> (n - 1 - j)) & 1) for r in mat)
    return BiGraph(g.m, n, rows)
