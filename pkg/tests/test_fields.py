import itertools

import pytest
from hypothesis import given, strategies as st

from polyprg.errors import BudgetExceeded, CharacteristicTwo, DescriptorMismatch, DivisionByZero, PrimeFieldInput
from polyprg.fields import FieldElem, PrimeField, absolute_trace, is_prime
from polyprg.tower import TowerSpec, extension_field


def test_prime_field_examples(F7):
    assert F7(3) * F7(5) == 1
    assert F7(3).inverse() == 5
    assert F7(3) ** 6 == 1
    assert F7(2) - F7(5) == 4


def test_f9_w_squared():
    F9 = TowerSpec(PrimeField(3), ((2,),)).field()
    w = F9.wrap(F9.generator(1))
    assert (w * w).value == (2, 0)


def test_rejects_bad_characteristic():
    for p in (1, 4, 15, 2**31 - 1 + 2):
        with pytest.raises(ValueError):
            PrimeField(p)
    assert is_prime(2**31 - 1)


def test_inverse_of_zero(F7, F169):
    with pytest.raises(DivisionByZero):
        F7(0).inverse()
    with pytest.raises(DivisionByZero):
        F169.wrap(F169.zero).inverse()


def test_descriptor_mismatch(F7, F13):
    with pytest.raises(DescriptorMismatch):
        F7(1) + F13(1)


def test_enumerate_small_fields():
    assert list(PrimeField(3).elements()) == [0, 1, 2]
    # unchecked char-2 quotient ring: enumeration works, field checks do not apply
    F4 = TowerSpec(PrimeField(2), ((1,),), check=False).field()
    assert len(set(F4.elements())) == 4
    with pytest.raises(CharacteristicTwo):
        TowerSpec(PrimeField(2), ((1,),))
    F169 = extension_field(13, 1)
    elems = list(F169.elements())
    assert len(elems) == 169 == len(set(elems))
    assert elems == sorted(elems)


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        list(PrimeField(101).elements(budget=100))


def test_pow_square_and_multiply(F13):
    for a in range(1, 13):
        assert F13.pow(a, 12) == 1
        assert F13.pow(a, -1) == F13.inv(a)


def test_trace_examples():
    F9 = TowerSpec(PrimeField(3), ((2,),)).field()
    w = F9.wrap(F9.generator(1))
    assert absolute_trace(w) == PrimeField(3)(0)
    for c in range(3):
        assert absolute_trace(F9(c)).value == 2 * c % 3


def test_trace_linear_and_balanced():
    F81 = extension_field(3, 2)
    elems = list(F81.elements())
    F9 = extension_field(3, 1)
    for x, y in itertools.product(list(F9.elements()), repeat=2):
        assert absolute_trace(F9.wrap(F9.add(x, y))) == absolute_trace(F9.wrap(x)) + absolute_trace(F9.wrap(y))
    fibres = [0, 0, 0]
    for a in elems:
        fibres[absolute_trace(F81.wrap(a)).value] += 1
    assert fibres == [27, 27, 27]


def test_trace_of_prime_field_input(F7):
    assert absolute_trace(F7(4)) == F7(4)
    with pytest.raises(PrimeFieldInput):
        absolute_trace(F7(4), strict=True)


def test_parse_and_format_roundtrip(F169):
    for a in list(F169.elements())[::17]:
        assert F169.parse(F169.format(a)) == a
    assert PrimeField(7).parse("12") == 5


@given(st.integers(0, 30), st.integers(0, 30), st.integers(0, 30))
def test_prime_field_distributive(a, b, c):
    F = PrimeField(31)
    x, y, z = F(a), F(b), F(c)
    assert x * (y + z) == x * y + x * z
    assert (x - y) + y == x


@given(st.integers(0, 168), st.integers(1, 168))
def test_tower_division(a, b):
    F = extension_field(13, 1)
    x, y = F.wrap(F.element(a)), F.wrap(F.element(b))
    assert (x / y) * y == x


def test_field_elem_hash_consistent(F13):
    assert hash(F13(3)) == hash(FieldElem(F13, 3))
    assert len({F13(3), F13(16)}) == 1
