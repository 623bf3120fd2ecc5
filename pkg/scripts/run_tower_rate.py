"""Empirical all-levels-irreducible rate of random tower tuples, against 1/2^ell."""

import argparse
import random

from polyprg.fields import PrimeField
from polyprg.oracles import tower_success_rate
from polyprg.tower import extension_field


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, nargs="+", default=[3, 7, 13])
    ap.add_argument("--ext", type=int, default=0, help="base field F_{p^(2^ext)}")
    ap.add_argument("--ell", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--trials", type=int, default=10_000)
    ap.add_argument("--rng-seed", type=int, default=3)
    args = ap.parse_args()

    rng = random.Random(args.rng_seed)
    print(" p  ell   rate     expected  z")
    for p in args.p:
        base = extension_field(p, args.ext) if args.ext else PrimeField(p)
        for ell in args.ell:
            res = tower_success_rate(base, ell, args.trials, rng)
            expected = 2.0 ** -ell
            z = (res.rate - expected) / res.sigma(expected)
            print(f"{p:2d}  {ell:3d}   {res.rate:.4f}   {expected:.4f}    {z:+.2f}")


if __name__ == "__main__":
    main()
