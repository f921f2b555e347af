"""Trotter convergence of the 1-D Poisson evolution.

For each register size, sweeps the inner Trotter number and reports the
phase-quotiented distance to the exact evolution together with gate counts.
Writes one CSV per size into ``--outdir``.

    python scripts/poisson_sweep.py --sizes 3 4 5 --t 0.1
"""
import argparse
from pathlib import Path

from toeplitz_synth import ToeplitzSpec
from toeplitz_synth.verify import trotter_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--dx", type=float, default=1.0)
    ap.add_argument("--t", type=float, default=0.1)
    ap.add_argument("--values", type=int, nargs="+", default=[4, 8, 16, 32, 64])
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    args = ap.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    for n in args.sizes:
        res = trotter_sweep(ToeplitzSpec.poisson(n, args.dx), args.t, args.values, "v")
        print(f"n={n} dx={args.dx} t={args.t}")
        print(res.to_table())
        (args.outdir / f"poisson_n{n}.csv").write_text(res.to_csv())


if __name__ == "__main__":
    main()
