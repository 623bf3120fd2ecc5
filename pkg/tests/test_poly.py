import random

import pytest
from hypothesis import given, strategies as st

from polyprg.errors import ArityMismatch
from polyprg.fields import PrimeField
from polyprg.poly import MultiPoly, UniPoly, format_with_header, parse_poly
from polyprg.tower import extension_field, parse_with_header

F5 = PrimeField(5)
F7 = PrimeField(7)
F13 = PrimeField(13)


def dense_mul(f, g):
    # schoolbook product over explicit exponent sums, independent of MultiPoly.__mul__
    F = f.field
    out = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = F.add(out.get(e, F.zero), F.mul(c1, c2))
    return MultiPoly(F, f.nvars, out)


def rand_poly(rng, F, nvars, d, density=0.6):
    terms = {}
    for exps in _exponents(nvars, d):
        if rng.random() < density:
            terms[exps] = rng.randrange(F.order)
    return MultiPoly(F, nvars, terms)


def _exponents(nvars, d):
    if nvars == 0:
        yield ()
        return
    for e in range(d + 1):
        for rest in _exponents(nvars - 1, d - e):
            yield (e,) + rest


def test_eval_examples():
    f = parse_poly("1*x1*x2 + 1", F5, 2)
    assert f(2, 3) == 2
    g = parse_poly("x1 + x2", F7, 2) ** 3
    assert g(1, 1) == 1
    h = parse_poly("3*x1^2 + 4*x2 + 6", F7, 2)
    assert h(0, 0) == 6


def test_eval_arity():
    with pytest.raises(ArityMismatch):
        parse_poly("x1", F5, 2)(1)


def test_arith_examples():
    f = parse_poly("3*x1^2 + 2*x2", F13, 2)
    assert (f + (-f)).is_zero()
    x1, x2 = MultiPoly.gens(F13, 2)
    assert (x1 * x2).terms == {(1, 1): 1}


def test_degree_multiplicative(rng):
    for _ in range(100):
        f = rand_poly(rng, F13, 3, rng.randrange(4))
        g = rand_poly(rng, F13, 3, rng.randrange(4))
        prod = f * g
        assert prod == dense_mul(f, g)
        if not f.is_zero() and not g.is_zero():
            assert prod.degree() == f.degree() + g.degree()


def test_canonical_text_and_roundtrip(rng):
    f = parse_poly("2*x2 + 1*x1^2 + 5 + 3*x1*x2", F7, 2)
    assert f.to_text() == "1*x1^2 + 3*x1*x2 + 2*x2 + 5"
    for _ in range(30):
        g = rand_poly(rng, F13, 3, 3)
        assert parse_poly(g.to_text(), F13, 3) == g
    assert format_with_header(f) == "F 7\n1*x1^2 + 3*x1*x2 + 2*x2 + 5"
    assert parse_with_header(format_with_header(f), 2) == f


def test_tower_text_roundtrip(F169):
    w = F169.generator(1)
    f = MultiPoly(F169, 2, {(1, 0): w, (0, 2): F169.from_int(3)})
    text = format_with_header(f)
    assert text.splitlines()[0] == "F 13^2"
    assert parse_with_header(text, 2) == f


def test_compose_linear_matches_pointwise(rng):
    f = rand_poly(rng, F13, 2, 3)
    g = f.compose_linear([[1, 2], [0, 1]], constants=[3, 0])
    for _ in range(20):
        a, b = rng.randrange(13), rng.randrange(13)
        assert g(a, b) == f(a + 2 * b + 3, b)


def test_specialize_and_derivative():
    f = parse_poly("x1^2*x2 + 3*x2^3", F7, 2)
    assert f.specialize(0, 2) == parse_poly("4*x2 + 3*x2^3", F7, 2)
    assert f.derivative(1) == parse_poly("x1^2 + 2*x2^2", F7, 2)


def test_unipoly_division_and_gcd():
    x = UniPoly.x(F7)
    f = (x - UniPoly.constant(F7, 1)) * (x - UniPoly.constant(F7, 2))
    g = (x - UniPoly.constant(F7, 1)) * (x + UniPoly.constant(F7, 3))
    assert f.gcd(g) == x - UniPoly.constant(F7, 1)
    q, r = divmod(f * x + UniPoly.constant(F7, 5), f)
    assert q == x and r == UniPoly.constant(F7, 5)


@given(st.lists(st.integers(0, 12), max_size=6), st.lists(st.integers(0, 12), min_size=1, max_size=4))
def test_unipoly_divmod_identity(a, b):
    f, g = UniPoly(F13, a), UniPoly(F13, b)
    if g.is_zero():
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree


@given(st.integers(0, 2**16))
def test_powmod_matches_repeated_multiplication(seed):
    rng = random.Random(seed)
    mod = UniPoly(F7, [rng.randrange(7) for _ in range(3)] + [1])
    base = UniPoly(F7, [rng.randrange(7) for _ in range(4)])
    e = rng.randrange(20)
    acc = UniPoly(F7, [1]) % mod
    for _ in range(e):
        acc = acc * base % mod
    assert base.powmod(e, mod) == acc
