"""Bit-row bipartite graphs: biclique detection, colourings and canonical keys.

    $ python demos/bigraph_basics.py
"""

import random

from biramsey.bigraph import BiGraph, EdgeColoring, color_class, complement, degree_sequence, has_biclique
from biramsey.canon import canonical_key

# A 4-cycle is the smallest graph containing K_{2,2}.
c4 = BiGraph.from_matrix([[1, 1], [1, 1]])
path = c4.without_edge(1, 1)
print("K_{2,2} in C4:", has_biclique(c4, 2))
print("K_{2,2} after deleting one edge:", has_biclique(path, 2))

# Rows are stored as integers, so complement and transpose are cheap.
g = BiGraph.from_edges(3, 4, [(0, 0), (0, 1), (1, 1), (2, 3)])
print("rows as bits:", [bin(r) for r in g.rows])
print("row degrees:", list(degree_sequence(g)), " column degrees:", list(degree_sequence(g, "Y")))
print("complement has", complement(g).edge_count, "edges of", 3 * 4)

# Relabelling rows and columns leaves the canonical key unchanged.
rng = random.Random(5)
rp, cp = [2, 0, 1], [3, 1, 0, 2]
print("same key after relabelling:", canonical_key(g) == canonical_key(g.permute(rp, cp)))

# A 2-colouring splits the grid into two colour classes.
cells = tuple(tuple(rng.randrange(2) for _ in range(5)) for _ in range(5))
coloring = EdgeColoring(5, 5, 2, cells)
red, blue = color_class(coloring, 0), color_class(coloring, 1)
print(f"colour classes: {red.edge_count} + {blue.edge_count} = 25 cells")
