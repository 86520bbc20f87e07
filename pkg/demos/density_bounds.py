"""Lower bounds on the packing chromatic number from maximum color-class densities.

    python demos/density_bounds.py
"""

from packdist import DistanceSet
from packdist.bounds import (
    D3_JOINT,
    check_joint_constraint,
    density_closed_form,
    density_oracle,
    harmonic_lower_bound,
    joint_density_oracle,
    lower_bound_from_densities,
    stock_table,
)

for d in ((1, 2, 3), (1, 4), (2, 3), (2, 5)):
    ds = DistanceSet(d)
    pairs = []
    i = 1
    while i * ds.max <= 18:
        pairs.append((i, density_closed_form(ds, i), density_oracle(ds, i)))
        i += 1
    shown = ", ".join(f"{i}:{cf}" + ("" if cf == o else f"(exact {o})") for i, cf, o in pairs)
    print(f"D={d}: bound {lower_bound_from_densities(stock_table(ds))}; densities {shown}")

d3 = DistanceSet((1, 2, 3))
holds, best = check_joint_constraint(d3, D3_JOINT)
print(f"joint {D3_JOINT}: holds={holds}, largest count in the window is {best}")
print("exact joint density of colors 1,2 on D(1,2,3):", joint_density_oracle(d3, (1, 2)))

print("harmonic bounds for D(1,t):", {t: harmonic_lower_bound(t) for t in range(1, 9)})
