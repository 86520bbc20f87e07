"""Build colorings of D(1, t) for a few t and show how many colors each family needs.

    python demos/constructions.py
"""

import time

from packdist import verify
from packdist.construct import aux_path_coloring, construct, verify_lift

for t in (95, 101, 143, 191, 447, 448, 480):
    t0 = time.perf_counter()
    built = construct(t)
    ok = verify(built.coloring).valid
    print(
        f"t={t:4d} family={built.family:>4} block={built.s:4d} "
        f"period={built.coloring.period:7d} colors={built.coloring.max_color:3d} "
        f"valid={ok} ({time.perf_counter() - t0:.1f}s)"
    )

# an odd-t coloring with blocks of t+1 also works two steps further up
col = construct(95).coloring
print("D(1,95) coloring still valid on D(1,97):", verify_lift(col).valid)

# even t appends one column colored by a path coloring with colors k1, k1+1, ...
for strategy in ("doubling", "greedy", "split"):
    aux = aux_path_coloring(41, strategy)
    print(f"aux {strategy:8s} k1=41 -> k2={aux.k2} (period {aux.period})")
