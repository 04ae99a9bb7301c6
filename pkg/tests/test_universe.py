"""Index universes: membership, order, monoid laws, codecs.

Oracle notes: ordering is checked against Python's native comparison of the
underlying numbers/tuples [DERIVED]; the codec is checked by round-trip.
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sigmavect.universe import (
    POINT,
    FiniteUniverse,
    Integers,
    MonomialUniverse,
    Naturals,
    PairUniverse,
    Rationals,
    TupleUniverse,
    UniverseError,
    universe_from_record,
)

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=6)


def test_membership_basics():
    N = Naturals()
    assert N.contains(0) and N.contains(7)
    assert not N.contains(-1) and not N.contains(True)
    Z = Integers()
    assert Z.contains(-5)
    assert not Z.contains(Fraction(1, 2))
    with pytest.raises(UniverseError):
        N.check(-3)


def test_point_universe():
    assert POINT.contains("*")
    assert POINT.key("*") == 0


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_integer_order_matches_builtin(a, b):
    Z = Integers()
    assert Z.lt(a, b) == (a < b)
    assert Z.le(a, b) == (a <= b)


@given(rationals, rationals)
def test_rational_monoid(a, b):
    Q = Rationals()
    assert Q.op(a, b) == a + b
    assert Q.op(a, Q.inv(a)) == Q.unit


def test_tuple_universe_lex_order():
    T = TupleUniverse(2)
    a = T.check((1, 5))
    b = T.check((2, 0))
    assert T.lt(a, b)  # first coordinate dominates
    assert T.op(a, b) == (Fraction(3), Fraction(5))
    assert T.parse(T.format(a)) == a


def test_monomial_universe_basics():
    X = MonomialUniverse(["x"])
    x = X.monomial(x=1)
    assert X.format(x) == "x"
    assert X.format(X.unit) == "1"
    assert X.format(X.monomial(x=Fraction(1, 2))) == "x^(1/2)"
    assert X.op(x, x) == X.monomial(x=2)
    assert X.inv(x) == X.monomial(x=-1)
    # lex order: x^(1/2) < x < x^2
    assert X.lt(X.monomial(x=Fraction(1, 2)), x)
    assert X.lt(x, X.monomial(x=2))


def test_monomial_two_generators():
    XY = MonomialUniverse(["x", "y"])
    el = XY.monomial(x=2, y=-3)
    assert XY.format(el) == "x^2*y^-3"
    assert XY.parse("x^2*y^-3") == el
    assert XY.parse("1") == XY.unit
    # x dominates y lexicographically
    assert XY.lt(XY.monomial(y=100), XY.monomial(x=1))


def test_natural_exponent_monomials_have_no_inverses():
    M = MonomialUniverse(["t"], exponents="natural")
    assert not M.is_group
    assert not M.contains((Fraction(-1),))
    with pytest.raises(UniverseError):
        M.inv(M.monomial(t=1))


@given(st.tuples(rationals, rationals))
def test_monomial_codec_roundtrip(vec):
    XY = MonomialUniverse(["x", "y"])
    el = XY.check(vec)
    assert XY.parse(XY.format(el)) == el


def test_pair_universe():
    P = PairUniverse(Naturals(), Naturals())
    a = P.check((1, 2))
    b = P.check((1, 3))
    assert P.lt(a, b)
    assert P.op(a, b) == (2, 5)
    assert P.vectorize(a) == (Fraction(1), Fraction(2))
    assert P.devectorize(P.vectorize(a)) == a
    assert P.parse(P.format(a)) == a


def test_pair_nested_parse():
    P = PairUniverse(PairUniverse(Naturals(), Naturals()), Naturals())
    el = P.check(((1, 2), 3))
    assert P.parse(P.format(el)) == el


def test_record_roundtrip():
    for u in (
        Naturals(),
        Integers(),
        Rationals(),
        TupleUniverse(3),
        MonomialUniverse(["x", "y"], "integer"),
        PairUniverse(Naturals(), Integers()),
        FiniteUniverse(["a", "b"]),
    ):
        assert universe_from_record(u.to_record()) == u


def test_vectorize_devectorize_guards():
    N = Naturals()
    with pytest.raises(UniverseError):
        N.devectorize((Fraction(-1),))
    with pytest.raises(UniverseError):
        N.devectorize((Fraction(1, 2),))
