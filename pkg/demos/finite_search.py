"""Exact search on the finite graphs D_n(1, t), the source of the small lower bounds.

    python demos/finite_search.py

The search is a depth-first search with forward checking.  A satisfiable
instance comes back with a certificate coloring of the n vertices.
"""

from packdist import DistanceSet
from packdist.search import SearchInstance, exact_search, greedy, smallest_unsat_n

ds = DistanceSet((1, 2))
for n in (26, 27):
    res = exact_search(SearchInstance(ds, n, 7))
    print(f"D_{n}(1,2), 7 colors: {res.verdict} after {res.nodes_explored} nodes")
    if res.sat:
        print("  certificate:", ",".join(map(str, res.certificate)))

n6, _ = smallest_unsat_n(ds, 6, 40)
print("smallest n with D_n(1,2) not 6-colorable:", n6)

res = exact_search(SearchInstance(DistanceSet((1, 3)), 100, 8))
print(f"D_100(1,3), 8 colors: {res.verdict} ({res.nodes_explored} nodes, {res.wall_time:.1f}s)")

used, _ = greedy(DistanceSet((1, 300)), 1_000_000)
print("first-fit greedy on the first million vertices of D(1,300) uses", used, "colors")
