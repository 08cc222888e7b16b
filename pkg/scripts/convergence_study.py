"""Refinement study: ground energy, commutator residual, gauge gap and box level.

Fits the slope of log(error) against log(h) for each quantity; a second-order
stencil should give slopes near 2.

    python scripts/convergence_study.py --L 8 --hs 0.5,0.25,0.125
"""
import argparse

from aclandau import fields, pipeline, report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--L", type=float, default=8.0)
    ap.add_argument("--hs", default="0.5,0.25,0.125")
    ap.add_argument("--sigma", type=int, default=-1, choices=(-1, 1))
    ap.add_argument("--out", default="out/convergence_study.json")
    args = ap.parse_args()
    hs = [float(v) for v in args.hs.split(",")]

    cfg = fields.symmetric(args.sigma)
    studies = {
        "ground_energy": pipeline.ground_energy_study(cfg, args.L, hs),
        "commutator": pipeline.commutator_study(cfg, args.L, hs),
        "gauge_gap": pipeline.gauge_gap_study(cfg, fields.plate(args.sigma), args.L, hs),
        "free_box": pipeline.free_box_study(args.L, hs),
    }
    for name, fit in studies.items():
        errs = " ".join(f"{e:.3e}" for e in fit.errors)
        print(f"{name:14s} slope={fit.slope:5.2f}  R^2={fit.r2:.4f}  errors: {errs}")
    report.write_json(args.out, {"L": args.L, "hs": hs, "sigma": args.sigma,
                                 "studies": {k: v.to_dict() for k, v in studies.items()}})


if __name__ == "__main__":
    main()
