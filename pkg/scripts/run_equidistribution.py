"""Exact TV(f(U), U) for random indecomposable f, next to the d^2/sqrt(q) shape."""

import argparse
import math
import random

from polyprg.fields import PrimeField
from polyprg.oracles import equidistribution_check, random_poly


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--qs", type=int, nargs="+", default=[13, 29, 53, 101])
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--polys", type=int, default=20)
    ap.add_argument("--rng-seed", type=int, default=8)
    args = ap.parse_args()

    print("   q   max TV     mean TV    d^2/sqrt(q)")
    for q in args.qs:
        F = PrimeField(q)
        rng = random.Random(args.rng_seed)
        tvs = [float(equidistribution_check(random_poly(args.n, args.d, F, rng, "indecomposable"),
                                            verify=False).tv)
               for _ in range(args.polys)]
        print(f"{q:4d}   {max(tvs):.5f}   {sum(tvs) / len(tvs):.5f}    {args.d ** 2 / math.sqrt(q):.4f}")


if __name__ == "__main__":
    main()
