import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biramsey.bigraph import (
    BiGraph,
    EdgeColoring,
    color_class,
    common_neighbors,
    complement,
    degree_sequence,
    has_biclique,
    naive_has_biclique,
)

from oracles import matrix_has_biclique


@st.composite
def graphs(draw, max_m=6, max_n=6, min_side=0):
    m = draw(st.integers(min_side, max_m))
    n = draw(st.integers(min_side, max_n))
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=m, max_size=m))
    return BiGraph(m, n, tuple(rows))


def test_construction_rejects_stray_bits():
    with pytest.raises(ValueError):
        BiGraph(1, 2, (0b100,))
    with pytest.raises(ValueError):
        BiGraph(2, 2, (0,))
    with pytest.raises(ValueError):
        BiGraph(65, 1, (0,) * 65)


def test_matrix_round_trip_and_edges():
    mat = [[1, 0, 1], [0, 1, 1]]
    g = BiGraph.from_matrix(mat)
    assert g.to_matrix() == mat
    assert g.edge_count == 4
    assert BiGraph.from_edges(2, 3, g.edges()) == g
    assert g.transpose().transpose() == g
    assert g.with_edge(0, 1).edge_count == 5
    assert g.without_edge(0, 0).edge_count == 3


def test_has_biclique_examples():
    assert has_biclique(BiGraph.complete(2, 2), 2)
    assert not has_biclique(BiGraph.empty(3, 3), 1)
    assert not has_biclique(BiGraph.complete(2, 3), 3)
    with pytest.raises(ValueError):
        has_biclique(BiGraph.empty(2, 2), 0)


def test_degenerate_sides_are_biclique_free():
    for g in (BiGraph.empty(0, 4), BiGraph.empty(3, 0), BiGraph(0, 0, ())):
        assert not has_biclique(g, 1)
        assert g.edge_count == 0


def test_142_green_edges_on_17x17_contain_k33():
    rng = random.Random(7)
    cells = rng.sample(range(289), 142)
    g = BiGraph.from_edges(17, 17, [divmod(c, 17) for c in cells])
    assert g.edge_count == 142
    assert has_biclique(g, 3)


@settings(max_examples=1000, deadline=None)
@given(graphs(max_m=8, max_n=8, min_side=8), st.integers(1, 4), st.integers(0, 63))
def test_monotone_under_edge_addition(g, s, cell):
    i, j = divmod(cell, 8)
    if has_biclique(g, s):
        assert has_biclique(g.with_edge(i, j), s)


@settings(max_examples=400, deadline=None)
@given(graphs(), st.integers(1, 4))
def test_agrees_with_naive_oracles(g, s):
    expected = matrix_has_biclique(g.to_matrix(), s)
    assert has_biclique(g, s) == expected
    assert naive_has_biclique(g, s) == expected


def test_common_neighbors():
    g = BiGraph.from_edges(3, 5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (1, 4), (2, 0)])
    assert common_neighbors(g, 0, 1) == 0b01100
    assert common_neighbors(g, 0, 2) == 0
    same = BiGraph(2, 4, (0b1011, 0b1011))
    assert common_neighbors(same, 0, 1).bit_count() == 3
    with pytest.raises(IndexError):
        common_neighbors(g, 0, 3)
    with pytest.raises(ValueError):
        common_neighbors(g, 1, 1)


def test_degree_sequence_examples():
    assert tuple(degree_sequence(BiGraph.empty(2, 3), "X")) == (0, 0)
    k = BiGraph.complete(3, 4)
    assert tuple(degree_sequence(k, "X")) == (4, 4, 4)
    assert tuple(degree_sequence(k, "Y")) == (3, 3, 3, 3)
    with pytest.raises(ValueError):
        degree_sequence(k, "Z")


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_double_counting_and_complement(g):
    assert degree_sequence(g, "X").total == degree_sequence(g, "Y").total == g.edge_count
    c = complement(g)
    assert complement(c) == g
    assert g.edge_count + c.edge_count == g.m * g.n


def test_complement_examples():
    assert complement(BiGraph.empty(3, 4)) == BiGraph.complete(3, 4)
    minus_matching = BiGraph(17, 17, tuple(((1 << 17) - 1) & ~(1 << i) for i in range(17)))
    assert complement(minus_matching).edge_count == 17


def test_color_classes_partition_the_grid():
    c = EdgeColoring(2, 2, 2, ((0, 1), (1, 0)))
    assert color_class(c, 0) == BiGraph(2, 2, (0b01, 0b10))
    assert color_class(EdgeColoring.constant(3, 3), 0) == BiGraph.complete(3, 3)
    rng = random.Random(3)
    for _ in range(50):
        m, n, t = rng.randint(1, 6), rng.randint(1, 6), rng.randint(1, 4)
        cells = tuple(tuple(rng.randrange(t) for _ in range(n)) for _ in range(m))
        col = EdgeColoring(m, n, t, cells)
        classes = [color_class(col, i) for i in range(t)]
        assert sum(g.edge_count for g in classes) == m * n
        for a in range(t):
            for b in range(a + 1, t):
                assert all(x & y == 0 for x, y in zip(classes[a].rows, classes[b].rows))
    with pytest.raises(ValueError):
        color_class(c, 2)
    with pytest.raises(ValueError):
        EdgeColoring(1, 1, 2, ((2,),))
