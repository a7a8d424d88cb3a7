"""Print both census tables from the formulas and mark cells that differ
from the printed reference values."""

import argparse

from polysym import orbits
from polysym.oracle import census_csv
from polysym.reference import TABLE_AREA, TABLE_PERIMETER


def show(by, max, printed):
    rows = orbits.census(by, max)
    print(census_csv(rows), end="")
    ref = {r[0]: r for r in printed}
    for r in rows:
        got = r.as_tuple()
        for i, (a, b) in enumerate(zip(got, ref[r.size])):
            if a != b:
                print(f"  {by} {r.size}, column {i}: printed {b}, computed {a}")
    print()


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--by", choices=("area", "perimeter", "both"), default="both")
    a = p.parse_args()
    if a.by in ("perimeter", "both"):
        show("perimeter", 20, TABLE_PERIMETER)
    if a.by in ("area", "both"):
        show("area", 10, TABLE_AREA)
