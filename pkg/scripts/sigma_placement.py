"""Compare the placements of the congruence-class factors in the product formula.

With a power-of-two band present the class terms do not commute with it, so
applying them once outside the repetition loop leaves an error that does not
shrink with the outer Trotter number.  Keeping them inside the loop recovers
first-order convergence.

    python scripts/sigma_placement.py --t 0.2
"""
import argparse

from toeplitz_synth import ToeplitzSpec
from toeplitz_synth.verify import trotter_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--t", type=float, default=0.2)
    ap.add_argument("--v", type=int, default=32)
    ap.add_argument("--values", type=int, nargs="+", default=[4, 8, 16, 32, 64])
    args = ap.parse_args()

    # a_1 = 1 is a lone band of C_1; a_2 = a_6 = 1 fills C_2 with a constant
    spec = ToeplitzSpec.from_bands(3, {1: 1.0, 2: 1.0, 6: 1.0})
    for placement in ("inside", "hoisted"):
        res = trotter_sweep(spec, args.t, args.values, "u", fixed=args.v, sigma_placement=placement)
        print(f"placement={placement}")
        print(res.to_table())


if __name__ == "__main__":
    main()
