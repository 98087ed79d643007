import random
from itertools import permutations, product

import pytest

from biramsey.bigraph import BiGraph
from biramsey.canon import canonical_form, canonical_graph, canonical_key


def _random_perm(rng, k):
    p = list(range(k))
    rng.shuffle(p)
    return p


def _brute_classes(m, n):
    """Isomorphism classes by exhaustive permutation: the orbit minimum of each edge set."""
    seen = set()
    for bits in range(1 << (m * n)):
        g = BiGraph(m, n, tuple((bits >> (i * n)) & ((1 << n) - 1) for i in range(m)))
        rep = min(g.permute(rp, cp).rows for rp in permutations(range(m)) for cp in permutations(range(n)))
        seen.add(rep)
    return len(seen)


def test_swapped_rows_share_a_key():
    g = BiGraph.from_matrix([[1, 1, 0], [0, 1, 1], [1, 0, 0]])
    h = BiGraph(3, 3, (g.rows[1], g.rows[0], g.rows[2]))
    assert canonical_key(g) == canonical_key(h)


def test_toggled_edge_changes_key():
    g = BiGraph.from_matrix([[1, 1, 0], [0, 1, 1], [1, 0, 0]])
    assert canonical_key(g) != canonical_key(g.with_edge(2, 2))


def test_matching_vs_short_path():
    matching = BiGraph.from_edges(3, 3, [(0, 0), (1, 1), (2, 2)])
    path = BiGraph.from_edges(3, 3, [(0, 0), (0, 1)])
    assert canonical_key(matching) != canonical_key(path)


@pytest.mark.parametrize("m,n,expected", [(3, 3, 36), (2, 4, 22)])
def test_key_counts_match_exhaustive_classes(m, n, expected):
    keys = set()
    for bits in range(1 << (m * n)):
        g = BiGraph(m, n, tuple((bits >> (i * n)) & ((1 << n) - 1) for i in range(m)))
        keys.add(canonical_key(g))
    assert len(keys) == expected == _brute_classes(m, n)


def test_permutation_invariance_100x50():
    rng = random.Random(2024)
    for _ in range(50):
        m, n = rng.randint(1, 10), rng.randint(1, 10)
        density = rng.random()
        g = BiGraph.from_edges(m, n, [(i, j) for i, j in product(range(m), range(n)) if rng.random() < density])
        key = canonical_key(g)
        for _ in range(100):
            h = g.permute(_random_perm(rng, m), _random_perm(rng, n))
            assert canonical_key(h) == key


def test_canonical_graph_is_isomorphic_and_fixed():
    rng = random.Random(5)
    g = BiGraph.from_edges(6, 7, [(i, j) for i in range(6) for j in range(7) if rng.random() < 0.4])
    c = canonical_graph(g)
    assert c.edge_count == g.edge_count
    assert canonical_graph(c) == c
    mat, rows, cols = canonical_form(g)
    assert sorted(rows) == list(range(6)) and sorted(cols) == list(range(7))


def test_highly_symmetric_graphs_are_fast():
    n = 24
    cases = [
        BiGraph.empty(n, n),
        BiGraph.complete(n, n),
        BiGraph.from_edges(n, n, [(i, i) for i in range(n)]),
        BiGraph.from_edges(n, n, [(i, j) for i in range(n) for j in (i, (i + 1) % n)]),
        BiGraph.from_edges(n, n, [(i, j) for i in range(n) for j in range(n) if i // 4 == j // 4]),
    ]
    for g in cases:
        key = canonical_key(g)
        rng = random.Random(1)
        assert canonical_key(g.permute(_random_perm(rng, n), _random_perm(rng, n))) == key


def test_size_cap():
    with pytest.raises(ValueError):
        canonical_key(BiGraph.empty(25, 3))
