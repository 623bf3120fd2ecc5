"""Sparse multivariate and dense univariate polynomials over a ``Field``.

Coefficients are stored as raw field values.  ``MultiPoly`` maps exponent
tuples to nonzero coefficients; ``UniPoly`` is a dense ascending list with no
trailing zeros (``[]`` is the zero polynomial).
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .errors import ArityMismatch, DescriptorMismatch, DivisionByZero
from .fields import Field, FieldElem


def grlex_key(exps):
    return (sum(exps), exps)


def _check_field(a, b):
    if a.field != b.field:
        raise DescriptorMismatch(f"{a.field} vs {b.field}")


class MultiPoly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise ArityMismatch(f"exponent {exps} has length != {nvars}")
                c = field.coerce(c)
                if not field.is_zero(c):
                    clean[exps] = c
        self.terms = clean

    @classmethod
    def _raw(cls, field, nvars, terms):
        # terms already canonical with no zero coefficients
        obj = cls.__new__(cls)
        obj.field = field
        obj.nvars = nvars
        obj.terms = terms
        return obj

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, field, nvars):
        return cls._raw(field, nvars, {})

    @classmethod
    def constant(cls, field, nvars, c):
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, field, nvars, i, power=1):
        exps = [0] * nvars
        exps[i] = power
        return cls._raw(field, nvars, {tuple(exps): field.one})

    @classmethod
    def gens(cls, field, nvars):
        return [cls.var(field, nvars, i) for i in range(nvars)]

    # basic properties -----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def degree(self, skip: Iterable[int] = ()) -> int:
        """Total degree (``-1`` for the zero polynomial), ignoring ``skip`` vars."""
        if not self.terms:
            return -1
        skip = set(skip)
        if not skip:
            return max(sum(e) for e in self.terms)
        return max(sum(x for i, x in enumerate(e) if i not in skip) for e in self.terms)

    def deg_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def variables(self):
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return sorted(used)

    def is_multilinear(self):
        return all(x <= 1 for e in self.terms for x in e)

    def coeff(self, exps) -> FieldElem:
        return FieldElem(self.field, self.terms.get(tuple(exps), self.field.zero))

    def leading(self):
        """(exponents, raw coefficient) of the grlex-largest term."""
        exps = max(self.terms, key=grlex_key)
        return exps, self.terms[exps]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    # arithmetic ---------------------------------------------------------
    def _same(self, other):
        _check_field(self, other)
        if self.nvars != other.nvars:
            raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            self._same(other)
            return other
        return MultiPoly.constant(self.field, self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = F.add(out[e], c)
                if F.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return MultiPoly._raw(F, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return MultiPoly._raw(F, self.nvars, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c):
        F = self.field
        c = F.coerce(c)
        if F.is_zero(c):
            return MultiPoly.zero(F, self.nvars)
        return MultiPoly._raw(F, self.nvars, {e: F.mul(x, c) for e, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._same(other)
        F = self.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = F.mul(c1, c2)
                if e in out:
                    out[e] = F.add(out[e], prod)
                else:
                    out[e] = prod
        return MultiPoly._raw(F, self.nvars, {e: c for e, c in out.items() if not F.is_zero(c)})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.field, self.nvars, self.field.one)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, FieldElem)):
            return self.terms == MultiPoly.constant(self.field, self.nvars, other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # evaluation and substitution ---------------------------------------
    def eval_raw(self, point: Sequence):
        if len(point) != self.nvars:
            raise ArityMismatch(f"point of length {len(point)} for {self.nvars} variables")
        F = self.field
        acc = F.zero
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(point, exps):
                if e:
                    term = F.mul(term, F.pow(x, e) if e > 1 else x)
            acc = F.add(acc, term)
        return acc

    def __call__(self, *point) -> FieldElem:
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        raw = [self.field.coerce(x) for x in point]
        return FieldElem(self.field, self.eval_raw(raw))

    def compose(self, subs: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute ``subs[i]`` for variable i; all subs share a ring."""
        if len(subs) != self.nvars:
            raise ArityMismatch(f"{len(subs)} substitutions for {self.nvars} variables")
        if not subs:
            return self
        target = subs[0]
        for s in subs:
            _check_field(self, s)
            if s.nvars != target.nvars:
                raise ArityMismatch("substituted polynomials live in different rings")
        F = self.field
        m = target.nvars
        powers = [[MultiPoly.constant(F, m, F.one)] for _ in subs]
        result = MultiPoly.zero(F, m)
        for exps, c in self.terms.items():
            term = MultiPoly.constant(F, m, c)
            for i, e in enumerate(exps):
                if e:
                    cache = powers[i]
                    while len(cache) <= e:
                        cache.append(cache[-1] * subs[i])
                    term = term * cache[e]
            result = result + term
        return result

    def compose_linear(self, matrix, constants=None) -> "MultiPoly":
        """Substitute x_i -> sum_j matrix[i][j] * x_j (+ constants[i])."""
        F = self.field
        m = len(matrix[0]) if matrix else 0
        subs = []
        for i, row in enumerate(matrix):
            terms = {}
            for j, a in enumerate(row):
                exps = [0] * m
                exps[j] = 1
                terms[tuple(exps)] = a
            if constants is not None:
                terms[(0,) * m] = constants[i]
            subs.append(MultiPoly(F, m, terms))
        return self.compose(subs)

    def embed(self, nvars: int, mapping: Sequence[int]) -> "MultiPoly":
        """Re-index variables: old variable i becomes new variable mapping[i]."""
        out = {}
        for exps, c in self.terms.items():
            new = [0] * nvars
            for i, e in enumerate(exps):
                if e:
                    new[mapping[i]] += e
            out[tuple(new)] = c
        return MultiPoly._raw(self.field, nvars, out)

    def derivative(self, i: int) -> "MultiPoly":
        F = self.field
        out = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e:
                c2 = F.mul(c, F.from_int(e))
                if not F.is_zero(c2):
                    new = list(exps)
                    new[i] -= 1
                    out[tuple(new)] = c2
        return MultiPoly._raw(F, self.nvars, out)

    def specialize(self, i: int, value) -> "MultiPoly":
        """Set variable i to a constant; the variable slot is kept (exponent 0)."""
        F = self.field
        value = F.coerce(value)
        out = MultiPoly.zero(F, self.nvars)
        acc = {}
        for exps, c in self.terms.items():
            new = list(exps)
            e = new[i]
            new[i] = 0
            new = tuple(new)
            v = F.mul(c, F.pow(value, e)) if e else c
            acc[new] = F.add(acc.get(new, F.zero), v)
        out.terms = {e: c for e, c in acc.items() if not F.is_zero(c)}
        return out

    def coefficients_in(self, i: int) -> dict:
        """View as a polynomial in variable i: {power: coefficient MultiPoly}."""
        parts = {}
        for exps, c in self.terms.items():
            e = exps[i]
            rest = exps[:i] + (0,) + exps[i + 1:]
            parts.setdefault(e, {})[rest] = c
        return {e: MultiPoly._raw(self.field, self.nvars, t) for e, t in parts.items()}

    def to_unipoly(self, i: int) -> "UniPoly":
        """Univariate polynomial in variable i; every other variable must be absent."""
        if any(x for e in self.terms for j, x in enumerate(e) if j != i):
            raise ArityMismatch("polynomial involves variables other than the requested one")
        d = self.deg_in(i)
        coeffs = [self.field.zero] * (d + 1)
        for exps, c in self.terms.items():
            coeffs[exps[i]] = c
        return UniPoly(self.field, coeffs)

    # text format -------------------------------------------------------
    def to_text(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = [self.field.format(c)]
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MultiPoly({self.field!r}, {self.nvars}, {self.to_text()!r})"


_TERM_SPLIT = re.compile(r"\+(?![^()]*\))")


def parse_poly(text: str, field: Field, nvars: int, names: Sequence[str] | None = None) -> MultiPoly:
    """Parse the ``coeff*x1^e1*...`` text format (terms joined by ``+``)."""
    if names is None:
        names = [f"x{i + 1}" for i in range(nvars)]
    index = {n: i for i, n in enumerate(names)}
    result = MultiPoly.zero(field, nvars)
    text = text.strip()
    if text in ("", "0"):
        return result
    for chunk in _TERM_SPLIT.split(text):
        chunk = chunk.strip()
        if not chunk:
            continue
        coeff = field.one
        exps = [0] * nvars
        for factor in re.split(r"\*(?![^()]*\))", chunk):
            factor = factor.strip()
            name, _, power = factor.partition("^")
            if name in index:
                exps[index[name]] += int(power) if power else 1
            else:
                coeff = field.mul(coeff, field.parse(factor))
        result = result + MultiPoly(field, nvars, {tuple(exps): coeff})
    return result


def format_with_header(f: MultiPoly, names=None) -> str:
    return f"{f.field.header}\n{f.to_text(names)}"


class UniPoly:
    """Dense univariate polynomial, coefficients ascending."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        self.field = field
        cs = [field.coerce(c) for c in coeffs]
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        self.coeffs = cs

    @classmethod
    def _raw(cls, field, coeffs):
        while coeffs and field.is_zero(coeffs[-1]):
            coeffs.pop()
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = coeffs
        return obj

    @classmethod
    def x(cls, field):
        return cls._raw(field, [field.zero, field.one])

    @classmethod
    def constant(cls, field, c):
        return cls(field, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1]

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def monic(self):
        if not self.coeffs:
            return self
        F = self.field
        inv = F.inv(self.coeffs[-1])
        return UniPoly._raw(F, [F.mul(c, inv) for c in self.coeffs])

    def __add__(self, other):
        _check_field(self, other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        out = [F.add(a[i] if i < len(a) else F.zero, b[i] if i < len(b) else F.zero) for i in range(n)]
        return UniPoly._raw(F, out)

    def __neg__(self):
        F = self.field
        return UniPoly._raw(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if not isinstance(other, UniPoly):
            c = F.coerce(other)
            return UniPoly._raw(F, [F.mul(x, c) for x in self.coeffs])
        _check_field(self, other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly._raw(F, [])
        out = [F.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if F.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
        return UniPoly._raw(F, out)

    def __divmod__(self, other):
        _check_field(self, other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        db = other.degree
        inv_lc = F.inv(other.lc())
        if len(rem) - 1 < db:
            return UniPoly._raw(F, []), UniPoly._raw(F, rem)
        quot = [F.zero] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if F.is_zero(c):
                continue
            q = F.mul(c, inv_lc)
            quot[i - db] = q
            for j, bj in enumerate(other.coeffs):
                rem[i - db + j] = F.sub(rem[i - db + j], F.mul(q, bj))
        return UniPoly._raw(F, quot), UniPoly._raw(F, rem[:db])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def eval_raw(self, x):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def __call__(self, x):
        return FieldElem(self.field, self.eval_raw(self.field.coerce(x)))

    def derivative(self):
        F = self.field
        return UniPoly._raw(F, [F.mul(c, F.from_int(i)) for i, c in enumerate(self.coeffs)][1:])

    def powmod(self, e: int, mod: "UniPoly") -> "UniPoly":
        result = UniPoly._raw(self.field, [self.field.one]) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            e >>= 1
            if e:
                base = (base * base) % mod
        return result

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def to_multipoly(self, nvars=1, var=0) -> MultiPoly:
        terms = {}
        for i, c in enumerate(self.coeffs):
            exps = [0] * nvars
            exps[var] = i
            terms[tuple(exps)] = c
        return MultiPoly(self.field, nvars, terms)

    def __repr__(self):
        return f"UniPoly({self.field!r}, [{', '.join(self.field.format(c) for c in self.coeffs)}])"
