"""Samplers, grid hitting-set generators and polynomial HSGs.

The hitting-set generators here are Schwartz-Zippel grids: a seed is the
big-endian base-|S| encoding of a point of S^n, and a nonzero polynomial of
degree <= d vanishes on at most a d/|S| fraction of the seeds.  A PHSG is
obtained from a grid HSG over a randomly sampled tower E by writing each
coordinate in the multilinear basis (phi).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InsufficientRandomness, SeedOutOfRange
from .fields import Field, FieldElem
from .poly import MultiPoly
from .tower import (
    TowerFailure,
    TowerField,
    TowerSpec,
    build_tower,
    candidate_space_size,
    default_samples,
    tower_lift,
)


# --- sampler -----------------------------------------------------------------

@dataclass(frozen=True)
class SamplerParams:
    """Independent-samples averaging sampler over a domain of ``domain_size`` points.

    A seed is an integer in [0, domain_size^t); each base-``domain_size``
    digit is one sample, so exactly t * log2(domain_size) bits are consumed.
    """

    domain_size: int
    t: int
    eps: float | None = None
    delta: float | None = None

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("need at least one sample")
        if self.domain_size < 1:
            raise ValueError("empty domain")
        if self.eps is not None and self.delta is not None:
            if not 0 < self.delta <= self.eps < 1:
                raise ValueError("need 0 < delta <= eps < 1")

    @classmethod
    def for_accuracy(cls, domain_size: int, eps: float, delta: float) -> "SamplerParams":
        """Chernoff-Hoeffding sample count t = ceil(ln(2/delta) / (2 eps^2))."""
        t = math.ceil(math.log(2 / delta) / (2 * eps * eps))
        return cls(domain_size, t, eps, delta)

    @property
    def domain_bits(self) -> float:
        return math.log2(self.domain_size)

    @property
    def randomness_bits(self) -> float:
        return self.t * self.domain_bits

    @property
    def seed_space(self) -> int:
        return self.domain_size ** self.t


def sampler_draw(params: SamplerParams, seed: int) -> list[int]:
    """Decode ``seed`` into t independent uniform points of the domain."""
    if not 0 <= seed < params.seed_space:
        raise InsufficientRandomness(
            f"sampler needs a seed in [0, {params.domain_size}^{params.t})")
    out = []
    for _ in range(params.t):
        seed, r = divmod(seed, params.domain_size)
        out.append(r)
    out.reverse()
    return out


# --- grid HSGs -----------------------------------------------------------------

@dataclass(frozen=True)
class HsgSpec:
    """Grid HSG: seed -> point of S^n.  ``S=None`` means the whole field."""

    field: Field
    n: int
    d: int
    S: tuple | None = None

    def __post_init__(self):
        if self.S is not None:
            S = tuple(self.field.coerce(s) for s in self.S)
            if not S:
                raise ValueError("evaluation set must be nonempty")
            if len(set(S)) != len(S):
                raise ValueError("evaluation set has repeated elements")
            object.__setattr__(self, "S", S)

    @property
    def kind(self) -> str:
        return "uniform" if self.S is None else "grid"

    @property
    def set_size(self) -> int:
        return self.field.order if self.S is None else len(self.S)

    @property
    def density_defect(self) -> Fraction:
        return Fraction(self.d, self.set_size)

    @property
    def seed_space(self) -> int:
        return self.set_size ** self.n

    @property
    def seed_bits(self) -> float:
        return self.n * math.log2(self.set_size)

    def point(self, seed: int) -> tuple:
        """Raw coordinates for ``seed``; first coordinate is the top digit."""
        if not 0 <= seed < self.seed_space:
            raise SeedOutOfRange(f"seed {seed} outside [0, {self.seed_space})")
        m = self.set_size
        coords = []
        for _ in range(self.n):
            seed, r = divmod(seed, m)
            coords.append(self.field.element(r) if self.S is None else self.S[r])
        coords.reverse()
        return tuple(coords)


def hsg_sample(spec: HsgSpec, seed: int) -> tuple[FieldElem, ...]:
    return tuple(spec.field.wrap(c) for c in spec.point(seed))


def hsg_over_extension(spec: HsgSpec, tower: TowerSpec | TowerField,
                       keep_base_grid: bool = False) -> HsgSpec:
    """The same grid read over E.

    By default S becomes all of E (defect d/|E|).  With ``keep_base_grid``
    the base-field grid is embedded into E and keeps its defect d/|S|.
    """
    E = tower.field() if isinstance(tower, TowerSpec) else tower
    if E.base != spec.field:
        raise ValueError("tower is not built over the HSG's field")
    if not keep_base_grid:
        return HsgSpec(E, spec.n, spec.d, None)
    base_set = spec.S if spec.S is not None else tuple(spec.field.elements())
    return HsgSpec(E, spec.n, spec.d, tuple(E.embed((s,), 0) for s in base_set))


# --- polynomial HSGs -----------------------------------------------------------

@dataclass(frozen=True)
class PolyPoint:
    """A vector of multilinear polynomials in w_1..w_ell."""

    entries: tuple
    ell: int

    def __post_init__(self):
        for e in self.entries:
            if e.nvars != self.ell:
                raise ValueError("entry in the wrong number of variables")
            if not e.is_multilinear():
                raise ValueError("PolyPoint entries must be multilinear")

    @property
    def n(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def degree(self) -> int:
        return max((e.degree() for e in self.entries), default=-1)

    def evaluate_raw(self, t: Sequence) -> tuple:
        return tuple(e.eval_raw(t) for e in self.entries)

    def to_text(self) -> list[str]:
        names = [f"w{j + 1}" for j in range(self.ell)]
        return [e.to_text(names) for e in self.entries]


class PHSG:
    """PHSG H(t1, t2) = phi(H_hat_E(t2)) over a tower E sampled from t1.

    ``delta`` defaults to c*d/q^k and must be at least 2*d/q^k so that the
    grid defect fits in delta / 2.  ``samples`` sets the number of tower
    candidates t; by default the tower fails with probability <= delta / 2.  On tower failure
    the output is the all-zero PolyPoint.
    """

    def __init__(self, field: Field, n: int, d: int, ell: int, delta=None,
                 c: float = 4, samples: int | None = None):
        self.field = field
        self.n = n
        self.d = d
        self.ell = ell
        self.k = 1 << ell
        qk = Fraction(field.order) ** self.k
        if delta is None:
            delta = Fraction(c).limit_denominator(10**6) * d / qk
        delta = Fraction(delta)
        # half of delta goes to the E-grid defect d/q^k
        if delta < 2 * d / qk:
            raise ValueError(f"delta must be at least 2*d/q^k = {float(2 * d / qk):.3g}")
        self.delta = delta
        self.samples = samples if samples is not None else (
            default_samples(self.k, float(delta) / 2) if ell > 0 else 1)
        self.candidates = candidate_space_size(field, ell)
        self.E_order = field.order ** self.k

    @property
    def tower_seed_space(self) -> int:
        return 1 if self.ell == 0 else self.candidates ** self.samples

    @property
    def hsg_seed_space(self) -> int:
        return self.E_order ** self.n

    @property
    def seed_space(self) -> int:
        return self.tower_seed_space * self.hsg_seed_space

    @property
    def tower_bits(self) -> float:
        return 0.0 if self.ell == 0 else self.samples * math.log2(self.candidates)

    @property
    def hsg_bits(self) -> float:
        return self.n * self.k * math.log2(self.field.order)

    @property
    def hsg_defect(self) -> Fraction:
        return Fraction(self.d, self.E_order)

    def tower(self, tower_seed: int):
        if self.ell == 0:
            return TowerSpec(self.field, (), check=False)
        return build_tower(self.field, self.ell, tower_seed, samples=self.samples)

    def hsg(self, tower: TowerSpec) -> HsgSpec:
        return HsgSpec(tower.field(), self.n, self.d, None)

    def zero_point(self) -> PolyPoint:
        return PolyPoint(tuple(MultiPoly.zero(self.field, self.ell) for _ in range(self.n)), self.ell)

    def sample_with_tower(self, tower, hsg_seed: int) -> PolyPoint:
        if not 0 <= hsg_seed < self.hsg_seed_space:
            raise SeedOutOfRange(f"HSG seed {hsg_seed} outside [0, {self.hsg_seed_space})")
        if isinstance(tower, TowerFailure):
            return self.zero_point()
        E = tower.field()
        point = HsgSpec(E, self.n, self.d, None).point(hsg_seed)
        return PolyPoint(tuple(tower_lift(E.wrap(x)) for x in point), self.ell)

    def sample(self, tower_seed: int, hsg_seed: int) -> PolyPoint:
        if not 0 <= tower_seed < self.tower_seed_space:
            raise SeedOutOfRange(f"tower seed {tower_seed} outside [0, {self.tower_seed_space})")
        return self.sample_with_tower(self.tower(tower_seed), hsg_seed)

    def tower_outcomes(self) -> Counter:
        """Exhaustive count of build outcomes over all tower seeds."""
        return Counter(self.tower(s) for s in range(self.tower_seed_space))

    def image_counts(self) -> tuple[Counter, int]:
        """Multiplicity of every PolyPoint over the full seed product.

        Returns (counts, failed_tower_seeds).  Enumerates every tower seed
        and, once per distinct tower, every HSG seed.
        """
        outcomes = self.tower_outcomes()
        counts = Counter()
        failed = 0
        for tower, mult in outcomes.items():
            if isinstance(tower, TowerFailure):
                failed += mult
            for s in range(self.hsg_seed_space):
                counts[self.sample_with_tower(tower, s)] += mult
        return counts, failed


def phsg_sample(field: Field, n: int, d: int, ell: int, tower_randomness: int,
                hsg_seed: int, delta=None, c: float = 4, samples: int | None = None) -> PolyPoint:
    return PHSG(field, n, d, ell, delta, c, samples).sample(tower_randomness, hsg_seed)


def polypoint_vanishes(f: MultiPoly, point: PolyPoint) -> bool:
    """True iff f(point) is the zero polynomial in F[w_1..w_ell]."""
    if f.nvars != point.n:
        raise ValueError("arity mismatch")
    return f.compose(list(point.entries)).is_zero() if point.n else f.is_zero()
