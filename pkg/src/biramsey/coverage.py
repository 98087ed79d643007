"""Coverage counters: how many chosen rows contain each t-subset of columns.

A graph is K_{t,t}-free iff no t-subset of columns lies in t of its rows, i.e.
every counter stays at most t - 1.  Counters live in a flat list indexed by the
colex rank of the subset.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb


@lru_cache(maxsize=None)
def _binom_table(n: int, t: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(comb(c, k) for k in range(t + 1)) for c in range(n + 1))


@lru_cache(maxsize=4096)
def _bits(vec: int) -> tuple[int, ...]:
    out = []
    j = 0
    while vec:
        if vec & 1:
            out.append(j)
        vec >>= 1
        j += 1
    return tuple(out)


class CoverageCounters:
    """Per-subset row counts for one forbidden biclique order ``t`` over ``n`` columns."""

    def __init__(self, n: int, t: int) -> None:
        if t < 1:
            raise ValueError("t must be positive")
        self.n = n
        self.t = t
        self.limit = t - 1
        self.counts = [0] * comb(n, t)
        self._binom = _binom_table(n, t)
        self.used = 0

    @property
    def capacity(self) -> int:
        """Total increments still allowed before every counter is saturated."""
        return self.limit * len(self.counts) - self.used

    def rank(self, cols: tuple[int, ...]) -> int:
        b = self._binom
        return sum(b[c][k + 1] for k, c in enumerate(cols))

    def _ranks(self, vec: int) -> list[int]:
        b = self._binom
        return [sum(b[c][k + 1] for k, c in enumerate(sub)) for sub in combinations(_bits(vec), self.t)]

    def fits(self, vec: int) -> bool:
        limit = self.limit
        counts = self.counts
        return all(counts[r] < limit for r in self._ranks(vec))

    def add(self, vec: int) -> None:
        ranks = self._ranks(vec)
        for r in ranks:
            self.counts[r] += 1
        self.used += len(ranks)

    def remove(self, vec: int) -> None:
        ranks = self._ranks(vec)
        for r in ranks:
            self.counts[r] -= 1
        self.used -= len(ranks)

    def fits_extending(self, partial: int, col: int) -> bool:
        """Whether ``col`` can join a row already holding ``partial`` without a saturated subset.

        Only subsets containing ``col`` are new; they are ``col`` plus a
        (t-1)-subset of ``partial``.
        """
        limit = self.limit
        counts = self.counts
        b = self._binom
        for sub in combinations(_bits(partial), self.t - 1):
            cols = tuple(sorted(sub + (col,)))
            if counts[sum(b[c][k + 1] for k, c in enumerate(cols))] >= limit:
                return False
        return True

    def add_extending(self, partial: int, col: int) -> None:
        b = self._binom
        k = 0
        for sub in combinations(_bits(partial), self.t - 1):
            cols = tuple(sorted(sub + (col,)))
            self.counts[sum(b[c][i + 1] for i, c in enumerate(cols))] += 1
            k += 1
        self.used += k

    def remove_extending(self, partial: int, col: int) -> None:
        b = self._binom
        k = 0
        for sub in combinations(_bits(partial), self.t - 1):
            cols = tuple(sorted(sub + (col,)))
            self.counts[sum(b[c][i + 1] for i, c in enumerate(cols))] -= 1
            k += 1
        self.used -= k
