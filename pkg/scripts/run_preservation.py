"""Fraction of (r, s) for which the restriction of an indecomposable f stays indecomposable."""

import argparse
import json
import warnings

from polyprg.fields import PrimeField
from polyprg.oracles import restriction_preservation_stats, to_jsonable
from polyprg.prg import PRG, choose_params


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=13)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--rng-seed", type=int, default=9)
    ap.add_argument("--out")
    args = ap.parse_args()

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        prg = PRG(choose_params(args.n, args.d, PrimeField(args.p), k=args.k))
    res = restriction_preservation_stats(prg, args.trials, args.rng_seed)
    lo, hi = res.interval
    print(f"preserved {res.preserved}/{res.trials} = {res.fraction:.3f}  Wilson95 [{lo:.3f}, {hi:.3f}]")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(to_jsonable({"preserved": res.preserved, "trials": res.trials,
                                   "interval": res.interval, "rng_seed": res.rng_seed,
                                   "rows": res.rows}), fh, indent=2)


if __name__ == "__main__":
    main()
