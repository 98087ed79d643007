from itertools import combinations
from math import comb

from biramsey.coverage import CoverageCounters


def test_rank_is_a_bijection():
    cc = CoverageCounters(7, 3)
    ranks = sorted(cc.rank(c) for c in combinations(range(7), 3))
    assert ranks == list(range(comb(7, 3)))


def test_add_remove_and_capacity():
    cc = CoverageCounters(5, 2)
    assert cc.capacity == comb(5, 2)
    row = 0b00111
    assert cc.fits(row)
    cc.add(row)
    assert cc.capacity == comb(5, 2) - 3
    assert not cc.fits(0b00011)
    assert cc.fits(0b11001)
    cc.remove(row)
    assert cc.used == 0 and all(v == 0 for v in cc.counts)


def test_extending_matches_whole_row_updates():
    cc = CoverageCounters(6, 3)
    cc.add(0b000111)
    cc.add(0b011001)
    partial = 0b000001
    for col in range(1, 6):
        whole = CoverageCounters(6, 3)
        whole.counts = list(cc.counts)
        expect = whole.fits(partial | (1 << col)) if (partial | (1 << col)).bit_count() >= 3 else True
        assert cc.fits_extending(partial, col) == expect
    cc.add_extending(0b000110, 3)
    assert cc.counts[cc.rank((1, 2, 3))] == 1
    cc.remove_extending(0b000110, 3)
    assert cc.counts[cc.rank((1, 2, 3))] == 0
