"""Check the band and congruence-class identities on random coefficients.

Prints the worst max-entry deviation per register size.

    python scripts/check_identities.py --max-n 7 --draws 20
"""
import argparse

import numpy as np

from toeplitz_synth.verify import check_theorem1, check_theorem2


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--draws", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'n':>3} {'band (T_k + shifted E_k)':>26} {'class (sum/factored/diag)':>27}")
    for n in range(2, args.max_n + 1):
        draws = rng.uniform(-1, 1, size=args.draws)
        band = max(check_theorem1(n, m, a).deviation for m in range(n) for a in draws)
        cls = max(check_theorem2(n, j, a).deviation for j in range(1, n + 1) for a in draws)
        print(f"{n:>3} {band:>26.2e} {cls:>27.2e}")


if __name__ == "__main__":
    main()
