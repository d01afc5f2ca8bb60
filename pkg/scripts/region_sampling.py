"""Sample the optimal path of length 3 over the two-state parameter square."""

import argparse
from fractions import Fraction
from pathlib import Path

from vitpoly import regions
from vitpoly.classify import classify_catalog
from vitpoly.propagate import enumerate_catalog, relabel


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--step", type=Fraction, default=Fraction(1, 100))
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    cat0 = classify_catalog(enumerate_catalog(2, 3, 0))
    for sub, cat in (("pi0", cat0), ("pi1", relabel(cat0, 1))):
        sample = regions.sample_regions(3, sub, args.step)
        (out / f"regions_{sub}.csv").write_text(sample.to_csv())
        b = regions.boundary_check(sample)
        print(f"{sub}: {len(sample.cells)} cells, {len(sample.ties())} ties, "
              f"{len(regions.outside_catalog(sample, cat))} outside the certified catalog")
        for counts, m in sorted(sample.class_counts().items()):
            print(f"    {counts}: {m} cells")
        print(f"    boundary {b.a} | {b.b}: {b.a_cells}/{b.b_cells} cells, "
              f"{len(b.misplaced)} on the wrong side, {b.adjacent_pairs} adjacent switches")


if __name__ == "__main__":
    main()
