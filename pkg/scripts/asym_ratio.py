"""Share of asymmetric polyominoes among convex polyominoes of area n."""

import argparse
from fractions import Fraction

from polysym import orbits

p = argparse.ArgumentParser(description=__doc__)
p.add_argument("--max", type=int, default=14)
a = p.parse_args()

prev = None
for r in orbits.census("area", a.max):
    if r.size < 5:
        continue
    ratio = Fraction(r.asym, r.id)
    flag = "" if prev is None or ratio >= prev else "  (decreased)"
    print(f"{r.size:3d} {r.asym:10d} / {r.id:10d} = {float(ratio):.6f}{flag}")
    prev = ratio
