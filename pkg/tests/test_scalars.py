"""Field handles: exact rationals and prime fields.

Oracle notes: GF(p) arithmetic is checked against plain integer arithmetic
mod p [DERIVED]; rational behaviour against fractions.Fraction [DERIVED].
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sigmavect.scalars import GF, QQ, FpElement, field_from_spec


def test_rational_of_and_parse():
    assert QQ.of(3) == Fraction(3)
    assert QQ.of(Fraction(2, 4)) == Fraction(1, 2)
    assert QQ.parse("7/3") == Fraction(7, 3)
    assert QQ.parse("-4") == Fraction(-4)
    assert QQ.format(Fraction(-1, 2)) == "-1/2"


def test_field_identity_elements():
    assert QQ.zero == 0 and QQ.one == 1
    F7 = GF(7)
    assert F7.zero == 0 and F7.one == 1
    assert F7.is_zero(F7.of(14))
    assert not F7.is_zero(F7.of(15))


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_gf_add_mul_match_integer_arithmetic(a, b):
    p = 11
    F = GF(p)
    assert F.of(a) + F.of(b) == (a + b) % p
    assert F.of(a) * F.of(b) == (a * b) % p
    assert F.of(a) - F.of(b) == (a - b) % p


@given(st.integers(1, 12))
def test_gf_inverse(a):
    p = 13
    x = FpElement(a, p)
    assert x * x.inverse() == 1


def test_gf_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        FpElement(0, 5).inverse()


def test_gf_rejects_composite_modulus():
    with pytest.raises(ValueError):
        GF(15)


def test_fraction_coercion_into_gf():
    # 1/2 = 4 in GF(7) because 2*4 = 8 = 1 [DERIVED]
    assert GF(7).of(Fraction(1, 2)) == 4
    with pytest.raises(ZeroDivisionError):
        GF(7).of(Fraction(1, 7))


def test_field_from_spec():
    assert field_from_spec("rational") is QQ
    assert field_from_spec("fp:5").p == 5
    with pytest.raises(ValueError):
        field_from_spec("real")


def test_mixed_moduli_rejected():
    with pytest.raises(ValueError):
        FpElement(1, 5) + FpElement(1, 7)
