"""Towers of quadratic extensions  F = F_0 < F_1 < ... < F_l = E.

Level i adjoins w_i with w_i^2 = h_i, where h_i is a nonzero multilinear
polynomial in w_1..w_{i-1}.  Elements of E are flat tuples of length 2^l over
the base field; position S (a bitmask) holds the coefficient of the monomial
prod_{j in S} w_{j+1}.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import BudgetExceeded, CharacteristicTwo, DescriptorMismatch, DivisionByZero, NonMonic
from .fields import DEFAULT_ENUM_BUDGET, Field, FieldElem, PrimeField
from .poly import MultiPoly, UniPoly


def _vector_from_index(base: Field, length: int, idx: int) -> tuple:
    digits = []
    for _ in range(length):
        idx, r = divmod(idx, base.order)
        digits.append(base.element(r))
    return tuple(reversed(digits))


def _vector_index(base: Field, vec: Sequence) -> int:
    idx = 0
    for c in vec:
        idx = idx * base.order + base.index(c)
    return idx


@dataclass(frozen=True, eq=False)
class TowerSpec:
    """Validated tower: ``h[i]`` is a flat tuple of length 2^i over ``base``."""

    base: Field
    h: tuple
    check: bool = True

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(tuple(hi) for hi in self.h))
        if self.check and self.base.p == 2 and self.h:
            raise CharacteristicTwo("quadratic towers need odd characteristic")
        for i, hi in enumerate(self.h):
            if len(hi) != 1 << i:
                raise ValueError(f"h_{i + 1} must have {1 << i} coefficients")
            if all(self.base.is_zero(c) for c in hi):
                raise ValueError(f"h_{i + 1} must be nonzero")
        if self.check:
            for i in range(len(self.h)):
                if not _level_nonsquare(self.base, self.h, i):
                    raise ValueError(f"w_{i + 1}^2 - h_{i + 1} is reducible over level {i}")

    @property
    def ell(self) -> int:
        return len(self.h)

    @property
    def k(self) -> int:
        return 1 << len(self.h)

    @property
    def order(self) -> int:
        return self.base.order ** self.k

    def __eq__(self, other):
        return isinstance(other, TowerSpec) and self.base == other.base and self.h == other.h

    def __hash__(self):
        return hash((self.base, self.h))

    def truncate(self, levels: int) -> "TowerSpec":
        return TowerSpec(self.base, self.h[:levels], check=False)

    def field(self) -> "TowerField":
        return TowerField(self)

    def defining_polys(self) -> list[MultiPoly]:
        """h_1..h_l as multilinear polynomials in w_1..w_l."""
        return [_flat_to_poly(self.base, self.ell, hi) for hi in self.h]

    # serialization ----------------------------------------------------
    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def to_dict(self) -> dict:
        out = {"p": self.base.p, "ell": self.ell, "h": [list(hi) for hi in self.h]}
        if isinstance(self.base, TowerField):
            out["base"] = self.base.spec.to_dict()
            out["h"] = [[list(c) for c in hi] for hi in self.h]
        return out

    @classmethod
    def from_dict(cls, data: dict, check: bool = True) -> "TowerSpec":
        if "base" in data:
            base = cls.from_dict(data["base"], check).field()
            h = [tuple(base.coerce(c) for c in hi) for hi in data["h"]]
        else:
            base = PrimeField(data["p"])
            h = [tuple(hi) for hi in data["h"]]
        if len(h) != data["ell"]:
            raise ValueError("ell does not match the number of defining elements")
        return cls(base, tuple(h), check)

    @classmethod
    def from_json(cls, text: str, check: bool = True) -> "TowerSpec":
        return cls.from_dict(json.loads(text), check)


class TowerField(Field):
    """Arithmetic in the top level of a :class:`TowerSpec`."""

    kind = "tower"

    def __init__(self, spec: TowerSpec):
        self.spec = spec
        self.base = spec.base
        self.ell = spec.ell
        self.size = spec.k
        self.p = spec.base.p
        self.degree = spec.base.degree * spec.k
        self.order = spec.order
        B = spec.base
        self.zero = (B.zero,) * self.size
        self.one = (B.one,) + (B.zero,) * (self.size - 1)
        self._h = spec.h
        self._prime = isinstance(B, PrimeField)
        if self._prime:
            p = B.p
            self._badd = lambda x, y: (x + y) % p
            self._bsub = lambda x, y: (x - y) % p
            self._bmul = lambda x, y: x * y % p
        else:
            self._badd, self._bsub, self._bmul = B.add, B.sub, B.mul

    def __eq__(self, other):
        return isinstance(other, TowerField) and other.spec == self.spec

    def __hash__(self):
        return hash(("tower", self.spec))

    def __repr__(self):
        return f"TowerField(p={self.p}, degree={self.degree}, h={self.spec.h})"

    # vector helpers ---------------------------------------------------------
    def _vadd(self, a, b):
        f = self._badd
        return tuple(f(x, y) for x, y in zip(a, b))

    def _vsub(self, a, b):
        f = self._bsub
        return tuple(f(x, y) for x, y in zip(a, b))

    def _mul(self, a, b, lvl):
        if lvl == 0:
            return (self._bmul(a[0], b[0]),)
        if lvl == 1 and self._prime:
            p = self.p
            a0, a1 = a
            b0, b1 = b
            return ((a0 * b0 + a1 * b1 * self._h[0][0]) % p, (a0 * b1 + a1 * b0) % p)
        half = 1 << (lvl - 1)
        a0, a1, b0, b1 = a[:half], a[half:], b[:half], b[half:]
        t0 = self._mul(a0, b0, lvl - 1)
        t1 = self._mul(a1, b1, lvl - 1)
        mid = self._mul(self._vadd(a0, a1), self._vadd(b0, b1), lvl - 1)
        cross = self._vsub(self._vsub(mid, t0), t1)
        low = self._vadd(t0, self._mul(t1, self._h[lvl - 1], lvl - 1))
        return low + cross

    def _inv(self, a, lvl):
        if lvl == 0:
            return (self.base.inv(a[0]),)
        half = 1 << (lvl - 1)
        a0, a1 = a[:half], a[half:]
        # (a0 + a1 w)^-1 = (a0 - a1 w) / (a0^2 - a1^2 h)
        norm = self._vsub(self._mul(a0, a0, lvl - 1),
                          self._mul(self._mul(a1, a1, lvl - 1), self._h[lvl - 1], lvl - 1))
        ninv = self._inv(norm, lvl - 1)
        c0 = self._mul(a0, ninv, lvl - 1)
        c1 = self._mul(a1, ninv, lvl - 1)
        return c0 + tuple(self.base.neg(c) for c in c1)

    # Field interface ---------------------------------------------------------
    def add(self, a, b):
        return self._vadd(a, b)

    def sub(self, a, b):
        return self._vsub(a, b)

    def neg(self, a):
        return tuple(self.base.neg(c) for c in a)

    def mul(self, a, b):
        return self._mul(a, b, self.ell)

    def inv(self, a):
        if a == self.zero:
            raise DivisionByZero("inverse of zero")
        try:
            return self._inv(a, self.ell)
        except DivisionByZero:
            raise DivisionByZero("element has no inverse; tower level is not a field") from None

    def from_int(self, n):
        return (self.base.from_int(n),) + (self.base.zero,) * (self.size - 1)

    def index(self, a):
        return _vector_index(self.base, a)

    def element(self, i):
        return _vector_from_index(self.base, self.size, i)

    def elements(self, budget=DEFAULT_ENUM_BUDGET):
        if self.order > budget:
            raise BudgetExceeded(f"field of order {self.order} exceeds budget {budget}")
        return itertools.product(self.base.elements(budget), repeat=self.size)

    def in_prime_subfield(self, a):
        B = self.base
        return all(B.is_zero(c) for c in a[1:]) and B.in_prime_subfield(a[0])

    def to_prime_int(self, a):
        return self.base.to_prime_int(a[0])

    def format(self, a):
        return "(" + ",".join(self.base.format(c) for c in a) + ")"

    def _coerce_raw(self, value):
        value = tuple(value)
        if len(value) != self.size:
            raise ValueError(f"expected {self.size} coordinates")
        return tuple(self.base.coerce(c) for c in value)

    def is_canonical(self, a):
        return isinstance(a, tuple) and len(a) == self.size and all(self.base.is_canonical(c) for c in a)

    def embed(self, a, from_level: int):
        """Image of a level-``from_level`` element in the top level."""
        return tuple(a) + (self.base.zero,) * (self.size - len(a))

    def generator(self, i: int):
        """The class of w_i (1-based)."""
        v = [self.base.zero] * self.size
        v[1 << (i - 1)] = self.base.one
        return tuple(v)


# --- phi and pi -----------------------------------------------------------------

def _flat_to_poly(base: Field, ell: int, vec: Sequence) -> MultiPoly:
    terms = {}
    for mask, c in enumerate(vec):
        terms[tuple((mask >> j) & 1 for j in range(ell))] = c
    return MultiPoly(base, ell, terms)


def tower_lift(a: FieldElem) -> MultiPoly:
    """phi: the multilinear polynomial in w_1..w_l with a's coefficient vector."""
    F = a.field
    if not isinstance(F, TowerField):
        return MultiPoly.constant(F, 0, a.value)
    return _flat_to_poly(F.base, F.ell, a.value)


def tower_reduce(g: MultiPoly, spec: TowerSpec) -> FieldElem:
    """pi: reduce g in F[w_1..w_l] modulo (w_i^2 - h_i) by rewriting.

    Works top-down: every w_i^e is rewritten as h_i^(e//2) * w_i^(e%2), which
    can only raise the degrees of lower variables, until g is multilinear.
    """
    ell = spec.ell
    if g.nvars != ell:
        raise ValueError(f"expected a polynomial in {ell} variables")
    if g.field != spec.base:
        raise DescriptorMismatch(f"{g.field} vs {spec.base}")
    hs = spec.defining_polys()
    cur = g
    for i in reversed(range(ell)):
        hpow = {}
        out = MultiPoly.zero(spec.base, ell)
        for exps, c in cur.terms.items():
            e = exps[i]
            if e < 2:
                out = out + MultiPoly._raw(spec.base, ell, {exps: c})
                continue
            q, r = divmod(e, 2)
            if q not in hpow:
                hpow[q] = hs[i] ** q
            mono = list(exps)
            mono[i] = r
            out = out + MultiPoly._raw(spec.base, ell, {tuple(mono): c}) * hpow[q]
        cur = out
    F = spec.field()
    vec = [spec.base.zero] * spec.k
    for exps, c in cur.terms.items():
        vec[sum(bit << j for j, bit in enumerate(exps))] = c
    return F.wrap(tuple(vec))


# --- irreducibility -------------------------------------------------------------

def is_irreducible_univariate(f: UniPoly) -> bool:
    """Irreducibility over F_Q via gcd(f, x^(Q^i) - x) = 1 for i = 1..a-1."""
    if not f.is_monic():
        raise NonMonic("irreducibility test expects a monic polynomial")
    a = f.degree
    if a < 1:
        raise ValueError("degree must be at least 1")
    F = f.field
    Q = F.order
    x = UniPoly.x(F)
    xq = x % f
    for _ in range(1, a):
        xq = xq.powmod(Q, f)
        if (xq - x).gcd(f).degree > 0:
            return False
    # sanity: f | x^(Q^a) - x
    xq = xq.powmod(Q, f)
    if not (xq - x % f).is_zero():
        return False
    return True


def quadratic_irreducible_fast(h: FieldElem) -> bool:
    """w^2 - h irreducible over h's field iff h is a nonzero non-square (Euler)."""
    F = h.field
    if F.p == 2:
        raise CharacteristicTwo("Euler criterion needs odd characteristic")
    if h.is_zero():
        return False
    return F.pow(h.value, (F.order - 1) // 2) != F.one


# --- randomized construction -------------------------------------------------

@dataclass(frozen=True)
class TowerFailure:
    """Returned (not raised) when no sampled tuple defines a field."""

    samples_tried: int


def candidate_space_size(base: Field, ell: int) -> int:
    """|D| = prod_i (|R_{i-1}| - 1), the number of tuples of nonzero h_i."""
    size = 1
    for i in range(ell):
        size *= base.order ** (1 << i) - 1
    return size


def decode_candidate(base: Field, ell: int, index: int) -> tuple:
    """Bijection [0, |D|) -> tuples (h_1..h_l) of nonzero multilinear vectors."""
    hs = []
    for i in reversed(range(ell)):
        n = base.order ** (1 << i) - 1
        index, r = divmod(index, n)
        hs.append(_vector_from_index(base, 1 << i, r + 1))
    return tuple(reversed(hs))


def _level_nonsquare(base: Field, hs: Sequence, i: int) -> bool:
    # is h_{i+1} a non-square in the level-i field?
    if i == 0:
        return quadratic_irreducible_fast(base.wrap(hs[0][0]))
    lower = TowerSpec(base, tuple(hs[:i]), check=False).field()
    return quadratic_irreducible_fast(lower.wrap(tuple(hs[i])))


def candidate_is_field(base: Field, hs: Sequence) -> bool:
    return all(_level_nonsquare(base, hs, i) for i in range(len(hs)))


def default_samples(k: int, delta: float) -> int:
    """t with (1 - 1/k)^t <= exp(-t/k) <= delta."""
    if k == 1:
        return 1
    return max(1, math.ceil(k * math.log(1 / delta)))


def build_tower(base: Field, ell: int, randomness=None, strategy: str = "sampler",
                samples: int | None = None, delta: float = 0.01,
                max_retries: int = 64):
    """Sample a tower of ``ell`` quadratic extensions of ``base``.

    strategy="sampler": ``randomness`` is an integer seed in [0, |D|^t)
    decoded into t candidate tuples; the first tuple whose every level is
    irreducible wins, otherwise a :class:`TowerFailure` is returned.
    strategy="rejection": ``randomness`` is a ``random.Random`` (or int seed);
    each level is redrawn until irreducible, at most ``max_retries`` times.
    """
    if base.p == 2:
        raise CharacteristicTwo("quadratic towers need odd characteristic")
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    if ell == 0:
        return TowerSpec(base, (), check=False)
    if strategy == "sampler":
        from .hitting import SamplerParams, sampler_draw

        t = samples if samples is not None else default_samples(1 << ell, delta)
        params = SamplerParams(domain_size=candidate_space_size(base, ell), t=t)
        if randomness is None:
            randomness = random.Random().randrange(params.seed_space)
        for z in sampler_draw(params, randomness):
            hs = decode_candidate(base, ell, z)
            if candidate_is_field(base, hs):
                return TowerSpec(base, hs, check=False)
        return TowerFailure(t)
    if strategy == "rejection":
        rng = randomness if isinstance(randomness, random.Random) else random.Random(randomness)
        hs = []
        for i in range(ell):
            for _ in range(max_retries):
                cand = _vector_from_index(base, 1 << i, rng.randrange(1, base.order ** (1 << i)))
                if _level_nonsquare(base, hs + [cand], i):
                    hs.append(cand)
                    break
            else:
                return TowerFailure(max_retries)
        return TowerSpec(base, tuple(hs), check=False)
    raise ValueError(f"unknown strategy {strategy!r}")


def canonical_tower(base: Field, ell: int) -> TowerSpec:
    """Deterministic tower: at each level the first non-square in index order."""
    hs = []
    for i in range(ell):
        for idx in range(1, base.order ** (1 << i)):
            cand = _vector_from_index(base, 1 << i, idx)
            if _level_nonsquare(base, hs + [cand], i):
                hs.append(cand)
                break
    return TowerSpec(base, tuple(hs), check=False)


def extension_field(p: int, ext: int) -> Field:
    """F_q with q = p^(2^ext): the prime field for ext = 0, else a canonical tower."""
    base = PrimeField(p)
    if ext == 0:
        return base
    return canonical_tower(base, ext).field()


def field_from_header(line: str) -> Field:
    """Inverse of ``Field.header``: "F p" or "F p^k" (k a power of two, canonical tower)."""
    tag, _, spec = line.strip().partition(" ")
    if tag != "F" or not spec:
        raise ValueError(f"bad field header {line!r}")
    p_text, _, k_text = spec.partition("^")
    p = int(p_text)
    k = int(k_text) if k_text else 1
    if k < 1 or k & (k - 1):
        raise ValueError("extension degree must be a power of two")
    return extension_field(p, k.bit_length() - 1)


def parse_with_header(text: str, nvars: int, names=None) -> MultiPoly:
    from .poly import parse_poly

    header, _, body = text.strip().partition("\n")
    return parse_poly(body, field_from_header(header), nvars, names)
