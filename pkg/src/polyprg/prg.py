"""The generator G(r, s, t, u, v) and its parameters.

Output coordinate i < n is H1(r)_i(t) * v + H2(s)_i * u and the last
coordinate is u, where H1 is a PHSG for degree 2d - 1 over a tower of
degree k and H2 is a grid HSG for degree d over F_q.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterator

from .errors import CharTooSmall, InvalidParams, NoValidK, PrimeFieldParams, SeedOutOfRange
from .fields import Field, FieldElem, absolute_trace
from .hitting import PHSG, HsgSpec, PolyPoint
from .tower import TowerFailure


class OutsideGuarantee(UserWarning):
    """q is below the C (d log d)^4 / eps^2 threshold."""


def choose_k(d: int, q: int) -> int:
    """Smallest power of two k with ceil(d/log2 q) + 1 < k <= 2 ceil(d/log2 q) + 2."""
    base = math.ceil(d / math.log2(q))
    k = 1
    while k <= base + 1:
        k *= 2
    if k > 2 * base + 2:
        raise NoValidK(f"no power of two in ({base + 1}, {2 * base + 2}]")
    return k


@dataclass(frozen=True)
class PRGParams:
    n: int
    d: int
    field: Field
    eps: float
    k: int
    c: float = 4
    C: float = 1
    tower_samples: int | None = None
    k_override: bool = False

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def ell(self) -> int:
        return self.k.bit_length() - 1

    @property
    def delta1(self) -> Fraction:
        return _frac(self.c) * self.d / Fraction(self.q) ** self.k

    @property
    def delta2(self) -> Fraction:
        return _frac(self.c) * self.d / self.q

    @property
    def threshold(self) -> float:
        """C (d log2 d)^4 / eps^2; zero for d = 1."""
        return self.C * (self.d * math.log2(self.d)) ** 4 / self.eps ** 2

    @property
    def regime(self) -> str:
        return "guaranteed" if self.q >= self.threshold else "outside guarantee"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "p": self.p,
            "q": self.q,
            "field_degree": self.field.degree,
            "eps": self.eps,
            "k": self.k,
            "ell": self.ell,
            "k_override": self.k_override,
            "delta1": _frac_json(self.delta1),
            "delta2": _frac_json(self.delta2),
            "c": self.c,
            "C": self.C,
            "tower_samples": PRG(self).h1.samples,
            "threshold": self.threshold,
            "regime": self.regime,
        }


def _frac(x) -> Fraction:
    return Fraction(x).limit_denominator(10**6) if isinstance(x, float) else Fraction(x)


def _frac_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator, "float": float(x)}


def choose_params(n: int, d: int, field: Field, eps: float = 0.1, c: float = 4, C: float = 1,
                  k: int | None = None, tower_samples: int | None = None) -> PRGParams:
    """Validate (n, d, q, eps) and pick k.

    ``k`` overrides the interval rule (any power of two); ``tower_samples``
    overrides the number of tower candidates.  Both exist for desk-scale
    experiments and are recorded in the params.
    """
    if n < 1 or d < 1:
        raise InvalidParams("need n >= 1 and d >= 1")
    if not 0 < eps < 1:
        raise InvalidParams("eps must lie in (0, 1)")
    if field.p < d * (d - 1) + 1:
        raise CharTooSmall(f"characteristic {field.p} < d(d-1)+1 = {d * (d - 1) + 1}")
    override = k is not None
    if k is None:
        k = choose_k(d, field.order)
    elif k < 1 or k & (k - 1):
        raise InvalidParams(f"k = {k} is not a power of two")
    params = PRGParams(n, d, field, eps, k, c, C, tower_samples, override)
    if params.regime != "guaranteed":
        warnings.warn(f"q = {params.q} is below C(d log d)^4/eps^2 = {params.threshold:.4g}",
                      OutsideGuarantee, stacklevel=2)
    return params


@dataclass(frozen=True)
class Seed:
    """Structured seed; r = (tower_seed, hsg_seed).  Field parts are raw values."""

    tower_seed: int
    hsg_seed: int
    s: int
    t: tuple
    u: object
    v: object

    def to_dict(self, field: Field) -> dict:
        return {
            "tower": self.tower_seed,
            "hsg": self.hsg_seed,
            "s": self.s,
            "t": [field.format(x) for x in self.t],
            "u": field.format(self.u),
            "v": field.format(self.v),
        }


@dataclass
class SeedLength:
    tower_bits: float
    hsg1_bits: float
    log_T1: float
    log_T2: float
    t_bits: float
    uv_bits: float
    total: float
    seed_space: int
    asymptotic: float
    notes: list = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "log_T1": self.log_T1,
            "log_T1_tower": self.tower_bits,
            "log_T1_hsg": self.hsg1_bits,
            "log_T2": self.log_T2,
            "ell_log_q": self.t_bits,
            "two_log_q": self.uv_bits,
            "total": self.total,
            "seed_space": str(self.seed_space),
            "asymptotic_d_log_n_plus_log_q": self.asymptotic,
            "inflation": self.total / self.asymptotic if self.asymptotic else None,
            "notes": self.notes,
        }


class PRG:
    """The generator for fixed parameters."""

    def __init__(self, params: PRGParams):
        self.params = params
        F = params.field
        self.field = F
        self.h1 = PHSG(F, params.n, 2 * params.d - 1, params.ell, delta=params.delta1,
                       c=params.c, samples=params.tower_samples)
        self.h2 = HsgSpec(F, params.n, params.d, None)

    # seed space ----------------------------------------------------------
    @property
    def radices(self) -> list[int]:
        """Mixed-radix digits of the sequential order (tower, hsg, s, t_1..t_l, u, v)."""
        q = self.field.order
        return ([self.h1.tower_seed_space, self.h1.hsg_seed_space, self.h2.seed_space]
                + [q] * self.params.ell + [q, q])

    @property
    def seed_space(self) -> int:
        return math.prod(self.radices)

    def seed_from_index(self, index: int) -> Seed:
        """Sequential decoding; v is the fastest-moving digit."""
        if not 0 <= index < self.seed_space:
            raise SeedOutOfRange(f"seed index {index} outside [0, {self.seed_space})")
        digits = []
        for r in reversed(self.radices):
            index, x = divmod(index, r)
            digits.append(x)
        digits.reverse()
        el = self.field.element
        ell = self.params.ell
        return Seed(digits[0], digits[1], digits[2],
                    tuple(el(x) for x in digits[3:3 + ell]), el(digits[-2]), el(digits[-1]))

    def seed_index(self, seed: Seed) -> int:
        idx = self.field.index
        digits = [seed.tower_seed, seed.hsg_seed, seed.s] + [idx(x) for x in seed.t] + [idx(seed.u), idx(seed.v)]
        out = 0
        for x, r in zip(digits, self.radices):
            if not 0 <= x < r:
                raise SeedOutOfRange("seed component out of range")
            out = out * r + x
        return out

    def random_seed(self, rng: random.Random) -> Seed:
        F = self.field
        return Seed(rng.randrange(self.h1.tower_seed_space), rng.randrange(self.h1.hsg_seed_space),
                    rng.randrange(self.h2.seed_space),
                    tuple(F.random(rng) for _ in range(self.params.ell)), F.random(rng), F.random(rng))

    # generation ---------------------------------------------------------------
    def h1_point(self, tower_seed: int, hsg_seed: int) -> PolyPoint:
        return self.h1.sample(tower_seed, hsg_seed)

    def combine(self, b: tuple, a: tuple, u, v) -> tuple:
        """(b_i v + a_i u for each i, u) on raw values."""
        F = self.field
        return tuple(F.add(F.mul(bi, v), F.mul(ai, u)) for bi, ai in zip(b, a)) + (u,)

    def generate_raw(self, seed: Seed, h1_point: PolyPoint | None = None) -> tuple:
        if len(seed.t) != self.params.ell:
            raise SeedOutOfRange(f"t must have {self.params.ell} coordinates")
        F = self.field
        for x in seed.t + (seed.u, seed.v):
            if not F.is_canonical(x):
                raise SeedOutOfRange(f"{x!r} is not an element of {F}")
        if h1_point is None:
            h1_point = self.h1_point(seed.tower_seed, seed.hsg_seed)
        b = h1_point.evaluate_raw(seed.t)
        a = self.h2.point(seed.s)
        return self.combine(b, a, seed.u, seed.v)

    def generate(self, seed: Seed) -> tuple[FieldElem, ...]:
        return tuple(self.field.wrap(x) for x in self.generate_raw(seed))

    def enumerate(self) -> Iterator[tuple[Seed, tuple]]:
        """Every (seed, raw output) in sequential order, building each tower once."""
        F = self.field
        ell = self.params.ell
        q = F.order
        for ts in range(self.h1.tower_seed_space):
            tower = self.h1.tower(ts)
            for hs in range(self.h1.hsg_seed_space):
                point = self.h1.sample_with_tower(tower, hs)
                for s in range(self.h2.seed_space):
                    a = self.h2.point(s)
                    for t_idx in range(q ** ell):
                        t = tuple(F.element(x) for x in _digits(t_idx, q, ell))
                        b = point.evaluate_raw(t)
                        for u in F.elements():
                            for v in F.elements():
                                yield Seed(ts, hs, s, t, u, v), self.combine(b, a, u, v)

    # accounting --------------------------------------------------------------
    def seed_length(self) -> SeedLength:
        q = self.field.order
        n, d, ell = self.params.n, self.params.d, self.params.ell
        tower_bits = self.h1.tower_bits
        hsg1_bits = math.log2(self.h1.hsg_seed_space)
        log_T1 = tower_bits + hsg1_bits
        log_T2 = math.log2(self.h2.seed_space)
        t_bits = ell * math.log2(q)
        uv_bits = 2 * math.log2(q)
        total = log_T1 + log_T2 + t_bits + uv_bits
        asymptotic = d * math.log2(n) + math.log2(q)
        notes = [
            f"log|T1| uses independent tower sampling: {self.h1.samples} candidates x "
            f"{math.log2(self.h1.candidates):.3f} bits",
            f"log|T1| uses a full E-grid HSG: n*k*log2 q = {hsg1_bits:.3f} bits",
            f"log|T2| uses a full F_q-grid HSG: n*log2 q = {log_T2:.3f} bits",
        ]
        return SeedLength(tower_bits, hsg1_bits, log_T1, log_T2, t_bits, uv_bits, total,
                          self.seed_space, asymptotic, notes)


def _digits(x: int, base: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        x, r = divmod(x, base)
        out.append(r)
    out.reverse()
    return out


def prg_generate(params: PRGParams, seed: Seed) -> tuple[FieldElem, ...]:
    return PRG(params).generate(seed)


def seed_length(params: PRGParams) -> SeedLength:
    return PRG(params).seed_length()


def trace_prg(params: PRGParams, seed: Seed, prg: PRG | None = None) -> tuple[FieldElem, ...]:
    """Coordinate-wise absolute trace of G(seed) into F_p."""
    if params.field.degree == 1:
        raise PrimeFieldParams("trace_prg needs an extension field F_{p^a}")
    prg = prg or PRG(params)
    return tuple(absolute_trace(x, strict=True) for x in prg.generate(seed))


__all__ = [
    "OutsideGuarantee",
    "choose_k",
    "PRGParams",
    "choose_params",
    "Seed",
    "SeedLength",
    "PRG",
    "prg_generate",
    "seed_length",
    "trace_prg",
    "TowerFailure",
]
