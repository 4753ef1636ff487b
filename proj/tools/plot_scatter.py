#!/usr/bin/env python3
"""Plot a solver scatter CSV (density/pressure/energy vs radius) against an
optional analytic reference curve."""
import argparse
import csv

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_rows(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("scatter", help="scatter CSV produced by the solver")
    ap.add_argument("--reference", help="radius,rho reference CSV")
    ap.add_argument("--field", default="rho", choices=["rho", "p", "e"])
    ap.add_argument("--out", default="scatter.png")
    args = ap.parse_args()

    rows = read_rows(args.scatter)
    radius = [float(r["radius"]) for r in rows]
    value = [float(r[args.field]) for r in rows]

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    ax.plot(radius, value, ".", markersize=2.5, label="solver")
    if args.reference:
        ref = read_rows(args.reference)
        ax.plot(
            [float(r["radius"]) for r in ref],
            [float(r["rho"]) for r in ref],
            "r-",
            linewidth=1.0,
            label="reference",
        )
    ax.set_xlabel("radius")
    ax.set_ylabel(args.field)
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
