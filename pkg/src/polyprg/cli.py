"""Command-line interface.

Exit codes: 0 success, 2 invalid parameters, 3 budget exceeded,
4 oracle inconsistency.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import statistics
import sys
import time
import warnings
from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import BudgetExceeded, InvalidParams, OracleInconsistency
from .hitting import HsgSpec
from .oracles import (
    DEFAULT_BUDGET,
    PhsgCounter,
    equidistribution_check,
    hsg_empirical_density,
    prg_tv,
    random_poly,
    render_report,
    restriction_preservation_stats,
    tower_success_rate,
)
from .prg import PRG, choose_params
from .tower import TowerFailure, build_tower, extension_field


@dataclass
class RunConfig:
    command: str
    p: int
    ext: int = 0
    n: int = 2
    d: int = 2
    eps: float = 0.1
    c: float = 4
    C: float = 1
    budget: int = DEFAULT_BUDGET
    rng_seed: int = 0
    out: str | None = None
    format: str = "json"
    kind: str | None = None
    k: int | None = None
    ell: int | None = None
    tower_samples: int | None = None
    count: int = 1
    seed_mode: str = "sequential"
    start: int = 0
    polys: int = 50
    pairs: int = 8
    trials: int = 200

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        known = set(cls.__dataclass_fields__)
        return cls(**{k: v for k, v in vars(args).items() if k in known})

    def field(self):
        try:
            return extension_field(self.p, self.ext)
        except ValueError as exc:
            raise InvalidParams(str(exc)) from None

    def prg(self):
        k = self.k if self.k is not None else (1 << self.ell if self.ell is not None else None)
        return PRG(choose_params(self.n, self.d, self.field(), self.eps, self.c, self.C,
                                 k=k, tower_samples=self.tower_samples))


def _emit(text: str, cfg: RunConfig):
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(cfg: RunConfig, body: dict, started: float) -> dict:
    return {"kind": cfg.kind, "rng_seed": cfg.rng_seed, "config": asdict(cfg),
            "wall_clock_s": round(time.time() - started, 3), **body}


# --- commands --------------------------------------------------------------------

def cmd_params(cfg: RunConfig) -> int:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        prg = cfg.prg()
    out = prg.params.to_dict()
    out["seed_length"] = prg.seed_length().to_dict()
    out["warnings"] = [str(w.message) for w in caught]
    _emit(json.dumps(out, indent=2) + "\n", cfg)
    return 0


def cmd_gen(cfg: RunConfig) -> int:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        prg = cfg.prg()
    if cfg.count > cfg.budget:
        raise BudgetExceeded(f"count {cfg.count} exceeds budget {cfg.budget}")
    F = prg.field
    rng = random.Random(cfg.rng_seed)
    lines = []
    cached = (None, None)
    if cfg.seed_mode == "sequential":
        stop = min(cfg.start + cfg.count, prg.seed_space)
        seeds = (prg.seed_from_index(i) for i in range(cfg.start, stop))
    else:
        seeds = (prg.random_seed(rng) for _ in range(cfg.count))
    for seed in seeds:
        key = (seed.tower_seed, seed.hsg_seed)
        if cached[0] != key:
            cached = (key, prg.h1_point(*key))
        out = prg.generate_raw(seed, cached[1])
        lines.append(json.dumps({"seed": seed.to_dict(F), "out": [F.format(x) for x in out]}))
    _emit("".join(line + "\n" for line in lines), cfg)
    return 0


def cmd_tower(cfg: RunConfig) -> int:
    base = cfg.field()
    ell = cfg.ell if cfg.ell is not None else 1
    result = build_tower(base, ell, random.Random(cfg.rng_seed), strategy="rejection")
    if isinstance(result, TowerFailure):
        out = {"failure": True, "samples_tried": result.samples_tried}
    else:
        out = {"failure": False, "tower": result.to_dict(), "order": str(result.order)}
    _emit(json.dumps(out) + "\n", cfg)
    return 0


def report_tv(cfg, rng):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        prg = cfg.prg()
    F = prg.field
    rows = []
    for i in range(cfg.polys):
        f = random_poly(cfg.n + 1, cfg.d, F, rng, "exact_degree")
        res = prg_tv(prg, f, pairs=cfg.pairs, rng=random.Random(rng.randrange(2**32)), budget=cfg.budget)
        rows.append({"index": i, "f": f.to_text(), "tv": res.tv, "tv_float": float(res.tv)})
    tvs = [r["tv_float"] for r in rows]
    return {"q": F.order, "pairs_per_poly": cfg.pairs, "median_tv": statistics.median(tvs),
            "max_tv": max(tvs), "regime": prg.params.regime, "rows": rows}


def report_density(cfg, rng):
    F = cfg.field()
    spec = HsgSpec(F, cfg.n, cfg.d, None)
    rows = []
    for i in range(cfg.polys):
        f = random_poly(cfg.n, cfg.d, F, rng, "nonzero")
        frac = hsg_empirical_density(spec, f, cfg.budget)
        rows.append({"index": i, "f": f.to_text(), "vanishing": frac, "vanishing_float": float(frac)})
    worst = max(r["vanishing"] for r in rows)
    if worst > spec.density_defect:
        raise OracleInconsistency(f"vanishing fraction {worst} exceeds d/|S|")
    return {"bound": spec.density_defect, "max_vanishing": worst, "rows": rows}


def report_equidist(cfg, rng):
    F = cfg.field()
    rows = []
    for i in range(cfg.polys):
        f = random_poly(cfg.n, cfg.d, F, rng, "indecomposable")
        res = equidistribution_check(f, verify=False, budget=cfg.budget)
        rows.append({"index": i, "f": f.to_text(), "tv": res.tv, "tv_float": float(res.tv),
                     "bound_shape": res.bound_shape})
    return {"q": F.order, "max_tv": max(r["tv_float"] for r in rows),
            "bound_shape_d2_over_sqrt_q": cfg.d ** 2 / math.sqrt(F.order), "rows": rows}


def report_preserve(cfg, rng):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        prg = cfg.prg()
    res = restriction_preservation_stats(prg, cfg.trials, rng.randrange(2**32))
    p = prg.params
    floor = 1 - p.delta2 - (2 ** (p.d - 1) - 1) * p.delta1
    return {"preserved": res.preserved, "trials": res.trials, "fraction": res.fraction,
            "wilson95": list(res.interval), "analytic_floor": floor, "rows": res.rows}


def report_tower(cfg, rng):
    base = cfg.field()
    ell = cfg.ell if cfg.ell is not None else 2
    res = tower_success_rate(base, ell, cfg.trials, rng)
    expected = 1 / 2 ** ell
    sigma = res.sigma(expected)
    return {"ell": ell, "successes": res.successes, "trials": res.trials, "rate": res.rate,
            "expected": Fraction(1, 2 ** ell), "sigma": sigma,
            "z_score": (res.rate - expected) / sigma if sigma else 0.0}


REPORTS = {
    "tv": report_tv,
    "density": report_density,
    "equidist": report_equidist,
    "preserve": report_preserve,
    "tower": report_tower,
}


def cmd_report(cfg: RunConfig) -> int:
    started = time.time()
    rng = random.Random(cfg.rng_seed)
    body = REPORTS[cfg.kind](cfg, rng)
    _emit(render_report(_report(cfg, body, started), cfg.format), cfg)
    return 0


def cmd_phsg(cfg: RunConfig) -> int:
    """Exhaustive PHSG vanishing fractions (n, d) over all seeds."""
    from .hitting import PHSG

    started = time.time()
    rng = random.Random(cfg.rng_seed)
    F = cfg.field()
    ell = cfg.ell if cfg.ell is not None else 1
    phsg = PHSG(F, cfg.n, cfg.d, ell, c=cfg.c, samples=cfg.tower_samples)
    if phsg.seed_space > cfg.budget * 64:
        raise BudgetExceeded(f"PHSG seed space {phsg.seed_space} too large")
    counter = PhsgCounter(phsg)
    rows = []
    for i in range(cfg.polys):
        f = random_poly(cfg.n, cfg.d, F, rng, "nonzero")
        d = counter.density(f)
        rows.append({"index": i, "f": f.to_text(), "vanishing": d.vanishing,
                     "vanishing_float": float(d.vanishing)})
    body = {"failure_rate": counter.failure_rate, "samples": phsg.samples,
            "bound": 2 * Fraction(cfg.d, F.order ** phsg.k) + counter.failure_rate, "rows": rows}
    cfg.kind = "phsg"
    _emit(render_report(_report(cfg, body, started), cfg.format), cfg)
    return 0


# --- argument parsing -------------------------------------------------------------

def _common(parser: argparse.ArgumentParser):
    parser.add_argument("--p", type=int, required=True, help="field characteristic")
    parser.add_argument("--ext", type=int, default=0, help="q = p^(2^ext)")
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--d", type=int, default=2)
    parser.add_argument("--eps", type=float, default=0.1)
    parser.add_argument("--c", type=float, default=4)
    parser.add_argument("--C", type=float, default=1)
    parser.add_argument("--k", type=int, default=None, help="override the extension degree")
    parser.add_argument("--ell", type=int, default=None, help="tower levels (k = 2^ell)")
    parser.add_argument("--tower-samples", type=int, default=None)
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    parser.add_argument("--rng-seed", type=int, default=0)
    parser.add_argument("--out", default=None)
    parser.add_argument("--format", choices=["json", "csv"], default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyprg", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    _common(sub.add_parser("params", help="print parameters and seed-length breakdown"))

    gen = sub.add_parser("gen", help="emit generator outputs as JSON lines")
    _common(gen)
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--seed-mode", choices=["sequential", "random"], default="sequential")
    gen.add_argument("--start", type=int, default=0, help="first index in sequential mode")

    _common(sub.add_parser("tower", help="build one tower by rejection sampling"))

    rep = sub.add_parser("report", help="oracle reports")
    rep.add_argument("kind", choices=sorted(REPORTS))
    _common(rep)
    rep.add_argument("--polys", type=int, default=50)
    rep.add_argument("--pairs", type=int, default=8, help="(r, s) pairs per polynomial for tv")
    rep.add_argument("--trials", type=int, default=200)

    ph = sub.add_parser("phsg", help="exhaustive PHSG vanishing fractions")
    _common(ph)
    ph.add_argument("--polys", type=int, default=20)
    return parser


COMMANDS = {"params": cmd_params, "gen": cmd_gen, "tower": cmd_tower, "report": cmd_report,
            "phsg": cmd_phsg}


def _fail(code: int, reason: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": reason, "message": message}) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig.from_args(args)
    try:
        return COMMANDS[cfg.command](cfg)
    except InvalidParams as exc:
        return _fail(2, exc.reason, str(exc))
    except BudgetExceeded as exc:
        return _fail(3, "BudgetExceeded", str(exc))
    except OracleInconsistency as exc:
        return _fail(4, "OracleInconsistency", str(exc))


if __name__ == "__main__":
    sys.exit(main())
