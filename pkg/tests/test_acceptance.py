"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` to see the lines as they
happen; they are also collected in the terminal summary.
"""

import itertools
import math
import random
import statistics
import sys
import warnings
from fractions import Fraction

import numpy as np
import pytest

from polyprg.algebra import check_hypothesis_H, resultant
from polyprg.fields import PrimeField
from polyprg.hitting import PHSG, HsgSpec
from polyprg.oracles import (
    PhsgCounter,
    equidistribution_check,
    hsg_empirical_density,
    prg_tv,
    random_poly,
    restriction_preservation_stats,
    trace_composition_degree,
    trace_polynomial,
    tower_success_rate,
)
from polyprg.poly import MultiPoly, UniPoly, parse_poly
from polyprg.prg import PRG, OutsideGuarantee, choose_params, seed_length, trace_prg
from polyprg.tower import (
    extension_field,
    is_irreducible_univariate,
    quadratic_irreducible_fast,
    tower_lift,
    tower_reduce,
)


def params(*args, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OutsideGuarantee)
        return choose_params(*args, **kw)


# --- 1 ----------------------------------------------------------------------------------

def cayley_tables(F):
    elems = list(F.elements())
    idx = {e: i for i, e in enumerate(elems)}
    add = np.array([[idx[F.add(a, b)] for b in elems] for a in elems])
    mul = np.array([[idx[F.mul(a, b)] for b in elems] for a in elems])
    return elems, idx, add, mul


def check_field_axioms(F):
    elems, idx, add, mul = cayley_tables(F)
    n = len(elems)
    zero, one = idx[F.zero], idx[F.one]
    r = np.arange(n)
    a, b, c = r[:, None, None], r[None, :, None], r[None, None, :]
    for T in (add, mul):
        assert (T == T.T).all()
        assert (T[T[a, b], c] == T[a, T[b, c]]).all()
    assert (mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]).all()
    assert (add[zero] == r).all() and (mul[one] == r).all()
    for i, e in enumerate(elems):
        assert add[i, idx[F.neg(e)]] == zero
        if i != zero:
            assert mul[i, idx[F.inv(e)]] == one
    return n


def test_01_algebra_exactness(criterion):
    with criterion(1, "algebra exactness", 10) as cr:
        orders = []
        for p in (3, 7, 13, 31):
            orders.append(check_field_axioms(PrimeField(p)))
        for p, j in ((3, 1), (3, 2), (5, 1), (7, 1)):
            F = extension_field(p, j)
            orders.append(check_field_axioms(F))
            for e in F.elements():
                assert tower_reduce(tower_lift(F.wrap(e)), F.spec).value == e
        cr.detail = f"fields of order {orders}"


# --- 2 ----------------------------------------------------------------------------------

def monic_polys(F, deg):
    for cs in itertools.product(range(F.p), repeat=deg):
        yield UniPoly(F, list(cs) + [1])


def reducible_by_search(f):
    F = f.field
    for e in range(1, f.degree // 2 + 1):
        for g in monic_polys(F, e):
            if (f % g).is_zero():
                return True
    return False


def test_02_irreducibility_testers(criterion):
    with criterion(2, "irreducibility testers", 30) as cr:
        checked = mismatches = 0
        for p in (7, 13):
            F = PrimeField(p)
            for deg in (1, 2, 3):
                for f in monic_polys(F, deg):
                    checked += 1
                    mismatches += is_irreducible_univariate(f) == reducible_by_search(f)
        F = extension_field(13, 1)
        four = F.from_int(4)
        elems = list(F.elements())
        for b in elems:
            for c in elems:
                disc = F.sub(F.mul(b, b), F.mul(four, c))
                fast = quadratic_irreducible_fast(F.wrap(disc))
                checked += 1
                mismatches += fast != is_irreducible_univariate(UniPoly(F, [c, b, F.one]))
        cr.detail = f"{checked} polynomials, {mismatches} mismatches"
        assert mismatches == 0


# --- 3 ----------------------------------------------------------------------------------

def test_03_tower_success_rate(criterion):
    with criterion(3, "tower success rate", 60) as cr:
        res = tower_success_rate(PrimeField(13), 2, 10_000, random.Random(3))
        sigma = res.sigma(0.25)
        cr.detail = f"rate {res.rate:.4f}, |z| = {abs(res.rate - 0.25) / sigma:.2f}"
        assert abs(res.rate - 0.25) <= 3 * sigma


# --- 4 ----------------------------------------------------------------------------------

def test_04_hsg_density(criterion):
    with criterion(4, "HSG density", 60) as cr:
        rng = random.Random(4)
        worst = []
        for q in (7, 13):
            F = PrimeField(q)
            for d in (2, 3):
                spec = HsgSpec(F, 2, d)
                fracs = [hsg_empirical_density(spec, random_poly(2, d, F, rng, "nonzero"))
                         for _ in range(100)]
                worst.append((q, d, max(fracs)))
                assert max(fracs) <= Fraction(d, q)
        cr.detail = "max " + ", ".join(f"q={q} d={d}: {m}" for q, d, m in worst)


# --- 5 ----------------------------------------------------------------------------------

def test_05_phsg_density_gain(criterion):
    with criterion(5, "PHSG density gain", 300) as cr:
        F = PrimeField(13)
        counter = PhsgCounter(PHSG(F, 1, 3, 1, samples=5))
        fail = counter.failure_rate
        rng = random.Random(5)
        monos = [(e,) for e in range(4)]
        worst_margin = None
        for i in range(50):
            deg = 1 + i % 3
            f = random_poly(1, deg, F, rng, "exact_degree", monomials=monos[:deg + 1])
            frac = counter.density(f).vanishing
            bound = 2 * Fraction(deg, 169) + fail
            assert frac <= bound < Fraction(deg, 13)
            margin = bound - frac
            worst_margin = margin if worst_margin is None else min(worst_margin, margin)
        cr.detail = f"failure rate {fail}, smallest slack {float(worst_margin):.4f}"


# --- 6 ----------------------------------------------------------------------------------

def test_06_prg_structural_identities(criterion):
    with criterion(6, "PRG structural identities", 10) as cr:
        total = 0
        for n in (1, 2):
            prg = PRG(params(n, 1, PrimeField(3), k=2, tower_samples=1))
            F = prg.field
            count = 0
            for seed, out in prg.enumerate():
                count += 1
                assert out[-1] == seed.u
                if seed.u == 0 and seed.v == 0:
                    assert not any(out)
                if seed.v == 0:
                    a = prg.h2.point(seed.s)
                    assert out[:-1] == tuple(F.mul(seed.u, x) for x in a)
            assert count == prg.seed_space
            total += count
        cr.detail = f"{total} seeds"


# --- 7 ----------------------------------------------------------------------------------

@pytest.mark.slow
def test_07_fooling_trend(criterion):
    with criterion(7, "fooling trend", 900) as cr:
        medians = {}
        last = None
        for q in (29, 53, 101):
            F = PrimeField(q)
            prg = PRG(params(2, 2, F))
            rng = random.Random(7)
            tvs = []
            for _ in range(50):
                f = random_poly(3, 2, F, rng, "exact_degree")
                rep = prg_tv(prg, f, pairs=8, rng=random.Random(rng.randrange(2**32)))
                tvs.append(float(rep.tv))
            medians[q] = statistics.median(tvs)
            last = tvs
        good = sum(t <= 0.35 for t in last)
        cr.detail = f"q=101: {good}/50 <= 0.35; medians " + ", ".join(
            f"{q}: {m:.5f}" for q, m in medians.items())
        assert good >= 48
        assert medians[29] >= medians[53] >= medians[101]


# --- 8 ----------------------------------------------------------------------------------

def test_08_equidistribution(criterion):
    with criterion(8, "equidistribution", 300) as cr:
        shapes = ["x1^2 + x1*x2 + x2^2", "x1^2 + 3*x2^2 + x2"]
        trend = {s: [] for s in shapes}
        worst = []
        for q in (29, 53, 101):
            F = PrimeField(q)
            bound = 4 * 4 / math.sqrt(q)
            for s in shapes:
                res = equidistribution_check(parse_poly(s, F, 2))
                assert res.tv <= bound
                trend[s].append(res.tv)
            rng = random.Random(8)
            tvs = []
            for _ in range(20):
                f = random_poly(2, 2, F, rng, "indecomposable")
                tvs.append(equidistribution_check(f).tv)
            assert max(tvs) <= bound
            worst.append(float(max(tvs)))
        for s in shapes:
            assert trend[s][0] > trend[s][1] > trend[s][2]
        cr.detail = "max TV " + ", ".join(f"{w:.5f}" for w in worst)


# --- 9 ----------------------------------------------------------------------------------

@pytest.mark.slow
def test_09_indecomposability_preservation(criterion):
    with criterion(9, "indecomposability preservation", 1200) as cr:
        prg = PRG(params(2, 2, PrimeField(13), k=2))
        assert prg.params.ell == 1
        res = restriction_preservation_stats(prg, 200, rng_seed=9)
        lo, hi = res.interval
        cr.detail = f"{res.preserved}/{res.trials} preserved, Wilson 95% [{lo:.3f}, {hi:.3f}]"
        assert res.fraction >= 0.9 and lo > 0.8


# --- 10 ---------------------------------------------------------------------------------

def test_10_trace_reduction(criterion):
    with criterion(10, "trace reduction", 60) as cr:
        F = extension_field(13, 1)
        p = params(2, 2, F)
        prg = PRG(p)
        rng = random.Random(10)
        for _ in range(200):
            out = trace_prg(p, prg.random_seed(rng), prg)
            assert all(x.field.order == 13 and isinstance(x.value, int) and 0 <= x.value < 13
                       for x in out)
        deg = trace_composition_degree(UniPoly(PrimeField(13), [0, 1]), F)
        assert deg == trace_polynomial(F).degree == 13
        cr.detail = f"200 seeds in F_13, deg(x1 o Tr) = {deg}"


# --- 11 ---------------------------------------------------------------------------------

def test_11_seed_length_accounting(criterion):
    with criterion(11, "seed-length accounting", 1) as cr:
        for n, d, F in ((3, 4, PrimeField(13)), (2, 2, PrimeField(101)), (5, 2, extension_field(13, 1))):
            sl = seed_length(params(n, d, F))
            assert sl.total == sl.log_T1 + sl.log_T2 + sl.t_bits + sl.uv_bits
            assert sl.log_T1 == sl.tower_bits + sl.hsg1_bits
            assert math.isclose(sl.log_T2, n * math.log2(F.order))
            assert math.isclose(sl.t_bits + sl.uv_bits, (params(n, d, F).ell + 2) * math.log2(F.order))
            report = sl.to_dict()
            assert report["inflation"] > 1 and len(report["notes"]) == 3
        cr.detail = f"last total {sl.total:.2f} bits, inflation {report['inflation']:.1f}x"


# --- 12 ---------------------------------------------------------------------------------

def hypothesis_H_by_roots(f, E):
    """Monic in y of full degree, and f(0, y) has no repeated root in E."""
    D = f.degree()
    top = {e: c for e, c in f.terms.items() if e[-1] == D}
    if top != {(0,) * (f.nvars - 1) + (D,): 1}:
        return False
    f0 = [0] * (D + 1)
    for e, c in f.terms.items():
        if not any(e[:-1]):
            f0[e[-1]] = c
    g = UniPoly(E, [E.from_int(c) for c in f0])
    dg = g.derivative()
    return not any(E.is_zero(g.eval_raw(a)) and E.is_zero(dg.eval_raw(a)) for a in E.elements())


def random_case(rng, F):
    D = rng.choice((2, 3, 4))
    kind = rng.random()
    terms = {}
    for i in range(D + 1):
        for j in range(D + 1 - i):
            if rng.random() < 0.5:
                terms[(i, j)] = rng.randrange(13)
    terms = {e: c for e, c in terms.items() if e[1] < D}
    terms[(0, D)] = 1
    f = MultiPoly(F, 2, terms)
    if kind < 0.35:
        # force a repeated root of f(0, y): replace it by (y - r)^2 (y - s)^(D-2)
        y = UniPoly(F, [0, 1])
        r, s = rng.randrange(13), rng.randrange(13)
        g = (y - UniPoly(F, [r])) * (y - UniPoly(F, [r]))
        for _ in range(D - 2):
            g = g * (y - UniPoly(F, [s]))
        terms = {e: c for e, c in f.terms.items() if e[0] > 0}
        terms.update({(0, j): c for j, c in enumerate(g.coeffs) if c})
        f = MultiPoly(F, 2, terms)
    elif kind < 0.45:
        f = f + MultiPoly(F, 2, {(D, 0): 1, (D - 1, 1): rng.randrange(1, 13)}) * MultiPoly.var(F, 2, 0)
    elif kind < 0.55:
        f = f.scale(rng.randrange(2, 13))
    return f


def test_12_hypothesis_H_checker(criterion):
    with criterion(12, "hypothesis (H) checker", 60) as cr:
        F7 = PrimeField(7)
        names = ["x1", "y"]
        assert not check_hypothesis_H(parse_poly("y^2 + x1", F7, 2, names))
        assert check_hypothesis_H(parse_poly("y^2 + x1*y + 1", F7, 2, names))
        assert not check_hypothesis_H(parse_poly("x1*y", F7, 2, names))
        assert resultant(UniPoly(F7, [6, 0, 1]), UniPoly(F7, [6, 1])).is_zero()
        assert resultant(UniPoly(PrimeField(3), [1, 0, 1]), UniPoly(PrimeField(3), [2, 1])).value == 2

        F = PrimeField(13)
        E = extension_field(13, 1)
        rng = random.Random(12)
        true_count = mismatches = 0
        for _ in range(100):
            f = random_case(rng, F)
            truth = hypothesis_H_by_roots(f, E)
            true_count += truth
            mismatches += truth != check_hypothesis_H(f)
        cr.detail = f"100 random f ({true_count} satisfy H), {mismatches} mismatches"
        assert mismatches == 0 and 0 < true_count < 100


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
