"""Ladder-operator matrix elements and orbit-center residuals on one spectrum.

    python scripts/ladder_spectroscopy.py --h 0.25
"""
import argparse

from aclandau import fields, pipeline, report
from aclandau.analysis.ladder import ladder_check, orbit_center_check
from aclandau.grid import Grid2D


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--L", type=float, default=8.0)
    ap.add_argument("--h", type=float, default=0.25)
    ap.add_argument("--sigma", type=int, default=-1, choices=(-1, 1))
    ap.add_argument("--out", default="out/ladder.json")
    args = ap.parse_args()

    cfg = fields.symmetric(args.sigma)
    grid = Grid2D.from_spacing(args.L, args.h)
    run = pipeline.run_spectrum(cfg, grid, levels=3)
    lad = ladder_check(run.spectrum, cfg, grid)
    orb = orbit_center_check(run.spectrum, cfg, grid)
    for b in lad.blocks:
        sv = " ".join(f"{s:.4f}" for s in b.singular_values)
        print(f"nu={b.nu}->{b.nu + 1}: singular values {sv}  (expected {b.expected:.4f})")
    print(f"max ||a psi|| on the lowest level: {lad.max_annihilation:.3e}")
    print(f"orbit-center commutator rms: {orb.rms:.3e}")
    report.write_json(args.out, {"grid": grid.describe(), "ladder": lad.to_dict(), "orbit_center": orb.to_dict()})


if __name__ == "__main__":
    main()
