"""Lowest-level degeneracy against box size.

For each half-width L the lowest level is counted two ways: every eigenvalue
in the level window (loses states to the walls), and the bulk density times
the area. Both are compared with the flux count (2L)^2 / 2pi.

    python scripts/degeneracy_scan.py --Ls 4,5,6,8 --h 0.25
"""
import argparse

from aclandau import fields, pipeline, report
from aclandau.analysis.levels import degeneracy_estimate
from aclandau.grid import Grid2D


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--Ls", default="4,5,6,8")
    ap.add_argument("--h", type=float, default=0.25)
    ap.add_argument("--sigma", type=int, default=-1, choices=(-1, 1))
    ap.add_argument("--out", default="out/degeneracy_scan.json")
    args = ap.parse_args()

    cfg = fields.symmetric(args.sigma)
    rows = []
    print(f"{'L':>5} {'flux':>6} {'window':>7} {'bulk':>8}")
    for L in (float(v) for v in args.Ls.split(",")):
        grid = Grid2D.from_spacing(L, args.h)
        run = pipeline.run_spectrum(cfg, grid, levels=2)
        rep = degeneracy_estimate(grid, run.spectrum, run.offset)
        rows.append({"L": L, **rep.to_dict()})
        print(f"{L:5.1f} {rep.predicted:6d} {rep.window_count:7d} {rep.measured:8.2f}")
    report.write_json(args.out, {"h": args.h, "sigma": args.sigma, "rows": rows})


if __name__ == "__main__":
    main()
