"""Print the two-state vertex tables for a few lengths with their classification."""

import argparse

from vitpoly import hull
from vitpoly.classify import classify_catalog
from vitpoly.propagate import enumerate_catalog


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("lengths", nargs="*", type=int, default=[6, 7])
    args = ap.parse_args()
    for n in args.lengths:
        cat = classify_catalog(enumerate_catalog(2, n, 0))
        fv = hull.f_vector(hull.PointSet(4, tuple(cat.points())))
        print(f"n = {n}  f-vector {' '.join(map(str, fv))}")
        print("  a00 a01 a10 a11  status           tag       representative")
        for e in cat.entries:
            a = "".join(f"{x:4d}" for x in e.counts)
            print(f" {a}  {e.status:<16} {e.tag or '-':<9} {e.representative}")
        print()


if __name__ == "__main__":
    main()
