"""Brute-force verification oracles.

Everything here counts exactly: distributions are integer histograms over
field indices and every probability is a ``Fraction``.  numpy is used only
to evaluate polynomials over prime fields on whole grids at once.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import random
import statistics
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .algebra import restrict
from .errors import BudgetExceeded, OracleInconsistency, RejectionTimeout
from .fields import Field, PrimeField
from .hitting import PHSG, HsgSpec, PolyPoint, polypoint_vanishes
from .poly import MultiPoly, UniPoly, grlex_key
from .tower import build_tower, candidate_is_field, candidate_space_size, decode_candidate

DEFAULT_BUDGET = 2**26


# --- distributions -----------------------------------------------------------

@dataclass(frozen=True)
class Distribution:
    """Histogram over the elements of ``field`` (indexed by ``field.index``)."""

    field: Field
    counts: tuple

    def __post_init__(self):
        if len(self.counts) != self.field.order:
            raise ValueError("one count per field element expected")
        if self.total <= 0:
            raise ValueError("empty distribution")

    @property
    def total(self) -> int:
        return sum(self.counts)

    @classmethod
    def from_indices(cls, field: Field, indices, weight: int = 1) -> "Distribution":
        counts = np.bincount(np.asarray(indices, dtype=np.int64), minlength=field.order)
        return cls(field, tuple(int(c) * weight for c in counts))

    @classmethod
    def from_counts(cls, field: Field, counts) -> "Distribution":
        return cls(field, tuple(int(c) for c in counts))

    @classmethod
    def uniform(cls, field: Field) -> "Distribution":
        return cls(field, (1,) * field.order)

    def prob(self, index: int) -> Fraction:
        return Fraction(self.counts[index], self.total)

    def __add__(self, other: "Distribution") -> "Distribution":
        return Distribution(self.field, tuple(a + b for a, b in zip(self.counts, other.counts)))


def tv_distance(P: Distribution, Q: Distribution) -> Fraction:
    """Half the L1 distance, exactly."""
    if P.field != Q.field:
        raise ValueError("distributions over different fields")
    N, M = P.total, Q.total
    return Fraction(sum(abs(a * M - b * N) for a, b in zip(P.counts, Q.counts)), 2 * N * M)


def fraction_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


# --- vectorized evaluation over prime fields ----------------------------------

def eval_prime_grid(f: MultiPoly, columns: Sequence[np.ndarray]) -> np.ndarray:
    """Evaluate f over a prime field at many points; columns[i] holds x_i values."""
    p = f.field.p
    if f.field.degree != 1:
        raise TypeError("vectorized evaluation needs a prime field")
    if len(columns) != f.nvars:
        raise ValueError("one column per variable expected")
    size = len(columns[0]) if columns else 1
    cols = [np.asarray(c, dtype=np.int64) % p for c in columns]
    powers = [{1: c} for c in cols]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            half = power(i, e // 2)
            sq = half * half % p
            cache[e] = sq * cols[i] % p if e % 2 else sq
        return cache[e]

    out = np.zeros(size, dtype=np.int64)
    for exps, c in f.terms.items():
        term = np.full(size, c, dtype=np.int64)
        for i, e in enumerate(exps):
            if e:
                term = term * power(i, e) % p
        out = (out + term) % p
    return out


def full_grid(q: int, nvars: int) -> list[np.ndarray]:
    return list(np.indices((q,) * nvars).reshape(nvars, -1)) if nvars else []


def _value_indices(f: MultiPoly, points: Iterable) -> list[int]:
    F = f.field
    return [F.index(f.eval_raw(pt)) for pt in points]


def uniform_distribution(f: MultiPoly, budget: int = DEFAULT_BUDGET) -> Distribution:
    """Distribution of f(x) for x uniform on F^nvars."""
    F = f.field
    size = F.order ** f.nvars
    if size > budget:
        raise BudgetExceeded(f"{size} evaluations exceed budget {budget}")
    if F.degree == 1:
        return Distribution.from_indices(F, eval_prime_grid(f, full_grid(F.order, f.nvars)))
    return Distribution.from_indices(F, _value_indices(f, itertools.product(list(F.elements()), repeat=f.nvars)))


def image_distribution(f: MultiPoly, gen: Callable[[int], Sequence], seed_space,
                       budget: int = DEFAULT_BUDGET) -> Distribution:
    """Distribution of f(gen(seed)) over a uniform seed from ``seed_space``."""
    seeds = range(seed_space) if isinstance(seed_space, int) else seed_space
    if len(seeds) > budget:
        raise BudgetExceeded(f"{len(seeds)} seeds exceed budget {budget}")
    F = f.field
    points = [tuple(F.coerce(x) for x in gen(s)) for s in seeds]
    if F.degree == 1 and f.nvars:
        cols = np.array(points, dtype=np.int64).reshape(len(points), f.nvars).T
        return Distribution.from_indices(F, eval_prime_grid(f, list(cols)))
    return Distribution.from_indices(F, _value_indices(f, points))


def tv_distance_exact(f: MultiPoly, gen: Callable[[int], Sequence], seed_space,
                      budget: int = DEFAULT_BUDGET) -> Fraction:
    """TV between f on the uniform cube and f on the generator's output."""
    n_seeds = seed_space if isinstance(seed_space, int) else len(seed_space)
    if f.field.order ** f.nvars + n_seeds > budget:
        raise BudgetExceeded("enumeration exceeds budget")
    return tv_distance(uniform_distribution(f, budget), image_distribution(f, gen, seed_space, budget))


# --- the generator's output distribution --------------------------------------

def _inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = [pow(a, -1, p) for a in range(1, p)]
    return inv


def prg_conditional_distribution(prg, f: MultiPoly, tower_seed: int, hsg_seed: int, s: int,
                                 h1_point: PolyPoint | None = None) -> Distribution:
    """Exact distribution of f(G(r, s, t, u, v)) over uniform (t, u, v), r and s fixed.

    For fixed t the output ranges over the plane {v*b + u*(a, 1)}, b = H1(r)(t),
    and the plane only depends on the projective class of b.  So one q x q
    grid evaluation per distinct class suffices.
    """
    F = prg.field
    if F.degree != 1:
        return _conditional_generic(prg, f, tower_seed, hsg_seed, s, h1_point)
    p = F.p
    n, ell = prg.params.n, prg.params.ell
    if f.nvars != n + 1:
        raise ValueError(f"f must have {n + 1} variables")
    point = h1_point if h1_point is not None else prg.h1_point(tower_seed, hsg_seed)
    a = np.array(prg.h2.point(s), dtype=np.int64)
    # b(t) for every t
    tgrid = full_grid(p, ell)
    B = np.stack([eval_prime_grid(e, tgrid) for e in point.entries], axis=1) if ell else \
        np.array([[e.eval_raw(()) for e in point.entries]], dtype=np.int64)
    nonzero = B != 0
    has = nonzero.any(axis=1)
    first = np.argmax(nonzero, axis=1)
    scale = _inverse_table(p)[B[np.arange(len(B)), first]]
    B = np.where(has[:, None], B * scale[:, None] % p, 0)
    classes, mult = np.unique(B, axis=0, return_counts=True)
    u, v = full_grid(p, 2)
    # all classes in one evaluation: rows are classes, columns the (u, v) grid
    cols = [(classes[:, i, None] * v[None, :] + a[i] * u[None, :]) % p for i in range(n)]
    cols = [c.ravel() for c in cols] + [np.tile(u, len(classes))]
    weights = np.repeat(mult, p * p)
    counts = np.bincount(eval_prime_grid(f, cols), weights=weights, minlength=p)
    return Distribution.from_counts(F, np.rint(counts).astype(np.int64))


def _conditional_generic(prg, f, tower_seed, hsg_seed, s, h1_point=None) -> Distribution:
    F = prg.field
    point = h1_point if h1_point is not None else prg.h1_point(tower_seed, hsg_seed)
    a = prg.h2.point(s)
    elems = list(F.elements())
    counts = [0] * F.order
    for t in itertools.product(elems, repeat=prg.params.ell):
        b = point.evaluate_raw(t)
        for u in elems:
            for v in elems:
                counts[F.index(f.eval_raw(prg.combine(b, a, u, v)))] += 1
    return Distribution.from_counts(F, counts)


@dataclass
class PRGDistanceReport:
    tv: Fraction
    pairs: int
    exhaustive: bool
    generated: Distribution
    uniform: Distribution


def prg_tv(prg, f: MultiPoly, pairs: int | None = None, rng: random.Random | None = None,
           budget: int = DEFAULT_BUDGET) -> PRGDistanceReport:
    """TV(f(G(U_S)), f(U)).

    (t, u, v) is always enumerated exactly.  If ``pairs`` is None the (r, s)
    space is enumerated too (it must fit the budget); otherwise ``pairs``
    (r, s) are drawn with ``rng`` and the mixture of their exact conditional
    distributions is compared.
    """
    h1, h2 = prg.h1, prg.h2
    rs_space = h1.tower_seed_space * h1.hsg_seed_space * h2.seed_space
    uniform = uniform_distribution(f, budget)
    total = None
    if pairs is None:
        if rs_space * prg.field.order ** 2 > budget:
            raise BudgetExceeded(f"(r, s) space of size {rs_space} exceeds budget")
        for ts in range(h1.tower_seed_space):
            tower = h1.tower(ts)
            for hs in range(h1.hsg_seed_space):
                pt = h1.sample_with_tower(tower, hs)
                for s in range(h2.seed_space):
                    d = prg_conditional_distribution(prg, f, ts, hs, s, pt)
                    total = d if total is None else total + d
        count = rs_space
    else:
        rng = rng or random.Random(0)
        for _ in range(pairs):
            ts = rng.randrange(h1.tower_seed_space)
            hs = rng.randrange(h1.hsg_seed_space)
            s = rng.randrange(h2.seed_space)
            d = prg_conditional_distribution(prg, f, ts, hs, s)
            total = d if total is None else total + d
        count = pairs
    return PRGDistanceReport(tv_distance(total, uniform), count, pairs is None, total, uniform)


# --- decomposability --------------------------------------------------------------

def compose_univariate(g: UniPoly, h: MultiPoly) -> MultiPoly:
    """g(h) by Horner's rule."""
    F = h.field
    out = MultiPoly.zero(F, h.nvars)
    for c in reversed(g.coeffs):
        out = out * h + MultiPoly.constant(F, h.nvars, c)
    return out


@dataclass(frozen=True)
class DecompositionWitness:
    """f = g(h) with deg g >= 2; the composition is re-checked on construction."""

    f: MultiPoly
    g: UniPoly
    h: MultiPoly

    def __post_init__(self):
        if self.g.degree < 2 or self.h.degree() < 1:
            raise OracleInconsistency("witness with deg g < 2 or constant h")
        if self.g.degree * self.h.degree() != self.f.degree():
            raise OracleInconsistency("degree mismatch in witness")
        if compose_univariate(self.g, self.h) != self.f:
            raise OracleInconsistency("g(h) does not reproduce f")

    def to_dict(self) -> dict:
        return {"g": [self.g.field.format(c) for c in self.g.coeffs], "h": self.h.to_text()}


def span_coefficients(f: MultiPoly, h: MultiPoly, m: int) -> UniPoly | None:
    """g with deg g <= m and g(h) = f, if f lies in span{1, h, ..., h^m}."""
    F = f.field
    lead, lc = h.leading()
    inv_lc = F.inv(lc)
    powers = [MultiPoly.constant(F, f.nvars, F.one)]
    for _ in range(m):
        powers.append(powers[-1] * h)
    coeffs = [F.zero] * (m + 1)
    rest = f
    for j in range(m, -1, -1):
        mono = tuple(x * j for x in lead)
        c = F.mul(rest.coeff(mono).value, F.pow(inv_lc, j))
        if not F.is_zero(c):
            coeffs[j] = c
            rest = rest - powers[j].scale(c)
    if not rest.is_zero():
        return None
    return UniPoly(F, coeffs)


def _monomials(nvars: int, lo: int, hi: int) -> list[tuple]:
    out = []
    for deg in range(lo, hi + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), deg):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return sorted(out, key=grlex_key, reverse=True)


def count_normalized(q: int, nvars: int, e: int) -> int:
    """Number of normalized h of degree exactly e (zero constant, grlex-monic)."""
    monos = _monomials(nvars, 1, e)
    total = 0
    for pos, mono in enumerate(monos):
        if sum(mono) == e:
            total += q ** (len(monos) - pos - 1)
    return total


def normalized_candidates(field: Field, nvars: int, e: int, budget: int = DEFAULT_BUDGET):
    """Every h of degree exactly e with zero constant term and leading coefficient 1."""
    if count_normalized(field.order, nvars, e) > budget:
        raise BudgetExceeded(f"more than {budget} candidate inner polynomials")
    monos = _monomials(nvars, 1, e)
    elems = list(field.elements())
    for pos, mono in enumerate(monos):
        if sum(mono) != e:
            continue
        below = monos[pos + 1:]
        for coeffs in itertools.product(elems, repeat=len(below)):
            terms = {mono: field.one}
            terms.update(zip(below, coeffs))
            yield MultiPoly(field, nvars, terms)


def approximate_root(f: MultiPoly, m: int) -> MultiPoly | None:
    """The unique normalized h that could satisfy f = g(h) with deg g = m.

    If f = c*h^m + (lower powers of h) then f/c - h^m has degree at most
    (m-1)*deg h, and the terms of h are forced one at a time, from the grlex
    leading term down.  Needs m invertible in the field.
    """
    F = f.field
    D = f.degree()
    e = D // m
    lead, c = f.leading()
    if any(x % m for x in lead):
        return None
    fn = f.scale(F.inv(c))
    h_lead = tuple(x // m for x in lead)
    h = MultiPoly._raw(F, f.nvars, {h_lead: F.one})
    top = tuple(x * (m - 1) for x in h_lead)
    inv_m = F.inv(F.from_int(m))
    while True:
        rest = fn - h ** m
        if rest.is_zero():
            break
        exps, coef = rest.leading()
        if sum(exps) <= (m - 1) * e:
            break
        shift = tuple(x - y for x, y in zip(exps, top))
        if any(s < 0 for s in shift) or grlex_key(shift) >= grlex_key(h_lead):
            return None
        h = h + MultiPoly._raw(F, f.nvars, {shift: F.mul(coef, inv_m)})
    return h


def is_decomposable_bruteforce(f: MultiPoly, method: str = "auto",
                               budget: int = DEFAULT_BUDGET) -> DecompositionWitness | None:
    """A witness f = g(h) with deg g >= 2, or None if f is indecomposable over F.

    method="enumerate" tries every normalized h of each admissible degree;
    method="root" computes the single candidate h per outer degree m (needs
    p not dividing m); "auto" uses the root method when it applies;
    "both" runs both and raises OracleInconsistency on disagreement.
    """
    if f.is_zero():
        return None
    D = f.degree()
    if method == "both":
        a = is_decomposable_bruteforce(f, "enumerate", budget)
        b = is_decomposable_bruteforce(f, "auto", budget)
        if (a is None) != (b is None):
            raise OracleInconsistency(f"decomposability methods disagree on {f}")
        return a
    p = f.field.p
    for m in range(2, D + 1):
        if D % m:
            continue
        e = D // m
        use_root = method == "root" or (method == "auto" and m % p)
        if use_root:
            if m % p == 0:
                raise ValueError(f"root method needs p not dividing {m}")
            cands = [] if (h := approximate_root(f, m)) is None else [h]
        else:
            cands = normalized_candidates(f.field, f.nvars, e, budget)
        for h in cands:
            g = span_coefficients(f, h, m)
            if g is not None and g.degree >= 2:
                return DecompositionWitness(f, g, h)
    return None


# --- random instances --------------------------------------------------------------

def random_poly(nvars: int, d: int, field: Field, rng: random.Random,
                constraint: str = "nonzero", max_tries: int = 10_000,
                monomials: Sequence[tuple] | None = None) -> MultiPoly:
    """Uniform over polynomials of degree <= d (or over ``monomials``) subject to
    ``constraint`` in {"none", "nonzero", "exact_degree", "indecomposable"}."""
    monos = list(monomials) if monomials is not None else _monomials(nvars, 0, d)
    for _ in range(max_tries):
        f = MultiPoly(field, nvars, {m: field.random(rng) for m in monos})
        if constraint == "none":
            return f
        if f.is_zero():
            continue
        if constraint == "nonzero":
            return f
        if f.degree() != d:
            continue
        if constraint == "exact_degree":
            return f
        if constraint == "indecomposable":
            if is_decomposable_bruteforce(f) is None:
                return f
            continue
        raise ValueError(f"unknown constraint {constraint!r}")
    raise RejectionTimeout(f"no {constraint} polynomial after {max_tries} draws")


# --- equidistribution ----------------------------------------------------------------

@dataclass
class EquidistributionResult:
    tv: Fraction
    q: int
    d: int
    bound_shape: float  # d^2 / sqrt(q)


def equidistribution_check(f: MultiPoly, verify: bool = True,
                           budget: int = DEFAULT_BUDGET) -> EquidistributionResult:
    """Exact TV(f(U), U_F) for an indecomposable f."""
    if verify and is_decomposable_bruteforce(f, budget=budget) is not None:
        raise ValueError("f is decomposable")
    F = f.field
    tv = tv_distance(uniform_distribution(f, budget), Distribution.uniform(F))
    d = f.degree()
    return EquidistributionResult(tv, F.order, d, d * d / math.sqrt(F.order))


# --- hitting densities -----------------------------------------------------------------

def hsg_empirical_density(spec: HsgSpec, f: MultiPoly, budget: int = DEFAULT_BUDGET) -> Fraction:
    """Exact fraction of seeds s with f(H(s)) = 0."""
    if f.nvars != spec.n:
        raise ValueError("arity mismatch")
    if spec.seed_space > budget:
        raise BudgetExceeded(f"{spec.seed_space} seeds exceed budget {budget}")
    F = spec.field
    if F.degree == 1 and spec.n:
        S = np.array(spec.S if spec.S is not None else range(F.order), dtype=np.int64)
        idx = full_grid(len(S), spec.n)
        vals = eval_prime_grid(f, [S[i] for i in idx])
        return Fraction(int(np.count_nonzero(vals == 0)), spec.seed_space)
    zero = sum(1 for s in range(spec.seed_space) if F.is_zero(f.eval_raw(spec.point(s))))
    return Fraction(zero, spec.seed_space)


@dataclass
class PhsgDensity:
    vanishing: Fraction
    failure_rate: Fraction
    seed_space: int


class PhsgCounter:
    """Exhaustive vanishing counts for a PHSG, reusing one image count for many f."""

    def __init__(self, phsg: PHSG):
        self.phsg = phsg
        self.counts, failed = phsg.image_counts()
        self.failure_rate = Fraction(failed, phsg.tower_seed_space)

    def density(self, f: MultiPoly) -> PhsgDensity:
        zero = sum(m for pt, m in self.counts.items() if polypoint_vanishes(f, pt))
        return PhsgDensity(Fraction(zero, self.phsg.seed_space), self.failure_rate, self.phsg.seed_space)


# --- tower statistics ------------------------------------------------------------------

@dataclass
class RateResult:
    successes: int
    trials: int

    @property
    def rate(self) -> float:
        return self.successes / self.trials

    def sigma(self, p: float) -> float:
        return math.sqrt(p * (1 - p) / self.trials)


def tower_success_rate(base: Field, ell: int, trials: int, rng: random.Random) -> RateResult:
    """Fraction of uniformly random defining tuples whose every level is irreducible."""
    size = candidate_space_size(base, ell)
    ok = sum(candidate_is_field(base, decode_candidate(base, ell, rng.randrange(size)))
             for _ in range(trials))
    return RateResult(ok, trials)


def tower_failure_rate(base: Field, ell: int, samples: int, trials: int, rng: random.Random) -> RateResult:
    size = candidate_space_size(base, ell) ** samples
    failed = sum(not hasattr(build_tower(base, ell, rng.randrange(size), samples=samples), "h")
                 for _ in range(trials))
    return RateResult(failed, trials)


# --- restriction preservation ------------------------------------------------------------

def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    z = statistics.NormalDist().inv_cdf(0.5 + confidence / 2)
    phat = successes / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return centre - half, centre + half


@dataclass
class PreservationResult:
    preserved: int
    trials: int
    interval: tuple
    rng_seed: int
    rows: list = dc_field(default_factory=list)

    @property
    def fraction(self) -> float:
        return self.preserved / self.trials


def restriction_preserved(prg, f: MultiPoly, tower_seed: int, hsg_seed: int, s: int) -> tuple[bool, MultiPoly]:
    """Is F = f(b(w) x + a y, y) indecomposable for r = (tower_seed, hsg_seed)?"""
    b = prg.h1_point(tower_seed, hsg_seed)
    a = prg.h2.point(s)
    F = restrict(f, a, list(b.entries))
    return is_decomposable_bruteforce(F) is None, F


def restriction_preservation_stats(prg, trials: int, rng_seed: int = 0) -> PreservationResult:
    """Sample indecomposable f and (r, s); count indecomposable restrictions."""
    rng = random.Random(rng_seed)
    params = prg.params
    F = params.field
    h1, h2 = prg.h1, prg.h2
    preserved = 0
    rows = []
    for trial in range(trials):
        f = random_poly(params.n + 1, params.d, F, rng, "indecomposable")
        ts = rng.randrange(h1.tower_seed_space)
        hs = rng.randrange(h1.hsg_seed_space)
        s = rng.randrange(h2.seed_space)
        ok, restricted = restriction_preserved(prg, f, ts, hs, s)
        preserved += ok
        rows.append({"trial": trial, "f": f.to_text(), "tower": ts, "hsg": hs, "s": s,
                     "deg_F": restricted.degree(), "preserved": ok})
    return PreservationResult(preserved, trials, wilson_interval(preserved, trials), rng_seed, rows)


# --- trace degree ---------------------------------------------------------------------------

def interpolate_function(field: Field, values: Sequence) -> UniPoly:
    """The unique polynomial of degree < Q agreeing with ``values`` (indexed by
    ``field.index``): c_0 = g(0), c_j = -sum_a g(a) a^(Q-1-j) for 1 <= j <= Q-1."""
    Q = field.order
    elems = list(field.elements())
    coeffs = [field.zero] * Q
    coeffs[0] = values[field.index(field.zero)]
    acc = [field.zero] * Q  # acc[k] = sum_a g(a) a^k over a != 0
    for a in elems:
        if field.is_zero(a):
            continue
        ga = values[field.index(a)]
        if field.is_zero(ga):
            continue
        pw = ga
        for k in range(Q):
            acc[k] = field.add(acc[k], pw)
            pw = field.mul(pw, a)
    for j in range(1, Q):
        c = field.neg(acc[Q - 1 - j])
        if j == Q - 1:
            c = field.sub(c, values[field.index(field.zero)])
        coeffs[j] = c
    return UniPoly(field, coeffs)


def trace_polynomial(field: Field) -> UniPoly:
    """Tr(x) = sum_i x^(p^i) as a polynomial over ``field``."""
    coeffs = [field.zero] * (field.order // field.p + 1)
    pw = 1
    for _ in range(field.degree):
        coeffs[pw] = field.one
        pw *= field.p
    return UniPoly(field, coeffs)


def trace_composition_degree(f_univariate: UniPoly, field: Field) -> int:
    """Degree over ``field`` of x -> f(Tr(x)) for f over the prime field, by interpolation."""
    from .fields import absolute_trace

    prime = PrimeField(field.p)
    values = []
    for a in field.elements():
        t = absolute_trace(field.wrap(a)).value
        values.append(field.from_int(prime.to_prime_int(f_univariate.eval_raw(t))))
    return interpolate_function(field, values).degree


# --- reports ---------------------------------------------------------------------------------

def to_jsonable(obj):
    if isinstance(obj, Fraction):
        return fraction_json(obj)
    if isinstance(obj, dict):
        return {k: to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    return obj


def render_report(report: dict, fmt: str = "json") -> str:
    """JSON (exact rationals as {"num", "den"}) or CSV of ``report["rows"]``.

    The CSV starts with ``# key=value`` header lines for the scalar fields,
    which always include the RNG seed.
    """
    if fmt == "json":
        return json.dumps(to_jsonable(report), indent=2, sort_keys=True) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    for key, value in report.items():
        if key == "rows":
            continue
        if isinstance(value, Fraction):
            value = f"{value.numerator}/{value.denominator}"
        elif isinstance(value, (dict, list)):
            value = json.dumps(to_jsonable(value), sort_keys=True)
        buf.write(f"# {key}={value}\n")
    rows = report.get("rows", [])
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: (f"{v.numerator}/{v.denominator}" if isinstance(v, Fraction) else v)
                             for k, v in row.items()})
    return buf.getvalue()


__all__ = [
    "DEFAULT_BUDGET",
    "Distribution",
    "tv_distance",
    "fraction_json",
    "eval_prime_grid",
    "full_grid",
    "uniform_distribution",
    "image_distribution",
    "tv_distance_exact",
    "prg_conditional_distribution",
    "prg_tv",
    "PRGDistanceReport",
    "compose_univariate",
    "DecompositionWitness",
    "span_coefficients",
    "count_normalized",
    "normalized_candidates",
    "approximate_root",
    "is_decomposable_bruteforce",
    "random_poly",
    "equidistribution_check",
    "EquidistributionResult",
    "hsg_empirical_density",
    "PhsgCounter",
    "PhsgDensity",
    "tower_success_rate",
    "tower_failure_rate",
    "RateResult",
    "wilson_interval",
    "restriction_preserved",
    "restriction_preservation_stats",
    "PreservationResult",
    "interpolate_function",
    "trace_polynomial",
    "trace_composition_degree",
    "render_report",
    "to_jsonable",
]
