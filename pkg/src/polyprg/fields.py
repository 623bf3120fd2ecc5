"""Finite fields.

A ``Field`` object performs arithmetic on *raw* values: plain ints for prime
fields, flat coefficient tuples for tower fields (see :mod:`polyprg.tower`).
Polynomials store raw values for speed.  :class:`FieldElem` wraps a raw value
together with its field and is what the public API hands back.
"""

from __future__ import annotations

import json
from typing import Iterator

from .errors import BudgetExceeded, DescriptorMismatch, DivisionByZero, PrimeFieldInput

MAX_CHARACTERISTIC = 2**31
DEFAULT_ENUM_BUDGET = 2**24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class Field:
    """Interface shared by prime and tower fields.

    Subclasses set ``p`` (characteristic), ``degree`` ([F : F_p]) and
    ``order`` (p ** degree) and implement the raw arithmetic methods.
    """

    kind: str
    p: int
    degree: int
    order: int
    zero: object
    one: object

    # raw arithmetic -----------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def index(self, a) -> int:
        """Position of ``a`` in the lexicographic enumeration order."""
        raise NotImplementedError

    def element(self, i: int):
        raise NotImplementedError

    def in_prime_subfield(self, a) -> bool:
        raise NotImplementedError

    def to_prime_int(self, a) -> int:
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def is_canonical(self, a) -> bool:
        raise NotImplementedError

    # derived -------------------------------------------------------------
    def is_zero(self, a) -> bool:
        return a == self.zero

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def frobenius(self, a):
        return self.pow(a, self.p)

    def elements(self, budget: int = DEFAULT_ENUM_BUDGET) -> Iterator:
        if self.order > budget:
            raise BudgetExceeded(f"field of order {self.order} exceeds budget {budget}")
        return (self.element(i) for i in range(self.order))

    def random(self, rng):
        return self.element(rng.randrange(self.order))

    def random_nonzero(self, rng):
        return self.element(rng.randrange(1, self.order))

    def parse(self, text: str):
        text = text.strip()
        if text.startswith("("):
            value = json.loads(text.replace("(", "[").replace(")", "]"))
        else:
            value = int(text)
        return self.coerce(value)

    def coerce(self, value):
        """Turn an int, FieldElem, raw value or nested list into a raw value."""
        if isinstance(value, FieldElem):
            if value.field != self:
                raise DescriptorMismatch(f"{value.field} vs {self}")
            return value.value
        if isinstance(value, int):
            return self.from_int(value)
        return self._coerce_raw(value)

    def _coerce_raw(self, value):
        raise TypeError(f"cannot interpret {value!r} as an element of {self}")

    def __call__(self, value) -> "FieldElem":
        return FieldElem(self, self.coerce(value))

    def wrap(self, raw) -> "FieldElem":
        return FieldElem(self, raw)

    def prime_field(self) -> "PrimeField":
        return PrimeField(self.p)

    @property
    def header(self) -> str:
        """Header line of the polynomial text format."""
        if self.degree == 1:
            return f"F {self.p}"
        return f"F {self.p}^{self.degree}"


class PrimeField(Field):
    """The field Z/pZ with elements stored as ints in [0, p)."""

    kind = "prime"
    degree = 1
    zero = 0
    one = 1

    def __init__(self, p: int):
        if not isinstance(p, int) or p >= MAX_CHARACTERISTIC or not is_prime(p):
            raise ValueError(f"{p!r} is not a prime below 2^31")
        self.p = p
        self.order = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def from_int(self, n):
        return n % self.p

    def index(self, a):
        return a

    def element(self, i):
        return i

    def in_prime_subfield(self, a):
        return True

    def to_prime_int(self, a):
        return a

    def format(self, a):
        return str(a)

    def is_canonical(self, a):
        return isinstance(a, int) and 0 <= a < self.p

    def elements(self, budget=DEFAULT_ENUM_BUDGET):
        if self.order > budget:
            raise BudgetExceeded(f"field of order {self.order} exceeds budget {budget}")
        return iter(range(self.p))


class FieldElem:
    """An element of a finite field with the usual operator overloads."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise DescriptorMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.div(b, self.value))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElem(self.field, self.field.inv(self.value))

    def is_zero(self):
        return self.field.is_zero(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"FieldElem({self.field!r}, {self.field.format(self.value)})"

    def __str__(self):
        return self.field.format(self.value)


def absolute_trace(x: FieldElem, strict: bool = False) -> FieldElem:
    """Absolute trace Tr(x) = x + x^p + ... + x^(p^(a-1)) into the prime field.

    For a prime-field input the trace is the identity (a = 1) unless
    ``strict`` is set, in which case :class:`PrimeFieldInput` is raised.
    """
    field = x.field
    if field.degree == 1:
        if strict:
            raise PrimeFieldInput("trace of a prime-field element requested with strict=True")
        return x
    acc = field.zero
    term = x.value
    for _ in range(field.degree):
        acc = field.add(acc, term)
        term = field.frobenius(term)
    if not field.in_prime_subfield(acc):
        raise AssertionError("trace left the prime subfield")
    return FieldElem(PrimeField(field.p), field.to_prime_int(acc))
