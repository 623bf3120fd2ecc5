"""Median TV of f(G(U_S)) vs f(U) for random degree-d polys as q grows.

    python3 scripts/run_fooling_trend.py --qs 29 53 101 --polys 50 --out trend.json
"""

import argparse
import json
import random
import statistics
import time
import warnings

from polyprg.fields import PrimeField
from polyprg.oracles import prg_tv, random_poly, to_jsonable
from polyprg.prg import PRG, choose_params


def run(qs, n, d, polys, pairs, rng_seed):
    rows = []
    for q in qs:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            prg = PRG(choose_params(n, d, PrimeField(q)))
        rng = random.Random(rng_seed)  # same draw sequence at every q
        start = time.time()
        tvs = []
        for _ in range(polys):
            f = random_poly(n + 1, d, prg.field, rng, "exact_degree")
            tvs.append(prg_tv(prg, f, pairs=pairs, rng=random.Random(rng.randrange(2**32))).tv)
        floats = [float(t) for t in tvs]
        rows.append({"q": q, "median": statistics.median(floats), "max": max(floats),
                     "tvs": tvs, "regime": prg.params.regime, "seconds": round(time.time() - start, 2)})
        print(f"q={q:4d}  median={rows[-1]['median']:.5f}  max={rows[-1]['max']:.5f}")
    return {"n": n, "d": d, "pairs": pairs, "rng_seed": rng_seed, "rows": rows}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--qs", type=int, nargs="+", default=[29, 53, 101])
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--polys", type=int, default=50)
    ap.add_argument("--pairs", type=int, default=8)
    ap.add_argument("--rng-seed", type=int, default=7)
    ap.add_argument("--out")
    args = ap.parse_args()
    report = run(args.qs, args.n, args.d, args.polys, args.pairs, args.rng_seed)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(to_jsonable(report), fh, indent=2)


if __name__ == "__main__":
    main()
