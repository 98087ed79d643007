"""Bipartite Ramsey search at desk scale.

The search fills K_{b,b} row by row, keeps only lexicographically leading
row orders, and either returns an avoiding colouring or exhausts the tree.

    $ python demos/ramsey_search.py
"""

from biramsey.ramsey import RamseyInstance, bipartite_ramsey, format_witness, search_witness, verify_witness

bracket = bipartite_ramsey((2, 2))
print("B(2,2) =", bracket.value)
for b, out in sorted(bracket.outcomes.items()):
    print(f"  b={b}: {out.kind.value:<10} nodes {out.nodes}")

# The witness at b=4 is a 2-colouring with no monochromatic 4-cycle.
w = bracket.outcomes[4].witness
print("\nwitness on K_{4,4}:")
print(format_witness(w), end="")
print("valid:", verify_witness(w, (2, 2)).valid)

# Symmetry breaking prunes the tree without changing the answer.
sym = search_witness(RamseyInstance(5, (2, 2)))
plain = search_witness(RamseyInstance(5, (2, 2)), symmetry=False)
print(f"\nb=5 exhausted with {sym.nodes} nodes (symmetry) vs {plain.nodes} (plain)")

# Splitting the tree across workers gives the same node count.
counts = [search_witness(RamseyInstance(5, (2, 2)), workers=w).nodes for w in (1, 2, 4)]
print("nodes with 1, 2, 4 workers:", counts)

# A budget that runs out is reported as such, never as exhaustion.
print("tiny budget:", search_witness(RamseyInstance(5, (2, 2)), budget=50).kind.value)
