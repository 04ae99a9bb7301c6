"""Convolution algebra on well-ordered supports.

Oracle notes: products of finite series are checked against an independent
dictionary convolution written in the test [DERIVED]; inverses against the
classical power-series recurrence b_0 = 1/c_0, b_n = -(1/c_0)sum c_k b_{n-k}
[DERIVED]; the Fibonacci generating function coefficients 1,1,2,3,5,8 are a
textbook fact [PAPER].
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sigmavect.bornology import well_ordered
from sigmavect.hahn import (
    HahnError,
    cauchy_product,
    invert_unit,
    leading_term,
    monomial_shift,
    neumann_sum,
    product_many,
    truncate,
    unit_series,
)
from sigmavect.scalars import QQ
from sigmavect.series import Space, add, sub
from sigmavect.universe import MonomialUniverse

X = MonomialUniverse(["x"])
SP = Space(QQ, X, well_ordered(X))
ONE = unit_series(QQ, X, well_ordered(X))


def m(q):
    return X.monomial(x=Fraction(q))


def conv_oracle(t1, t2):
    """Independent convolution of exponent->coefficient dicts."""
    out = {}
    for a, ca in t1.items():
        for b, cb in t2.items():
            k = a + b
            out[k] = out.get(k, Fraction(0)) + ca * cb
    return {k: v for k, v in out.items() if v != 0}


def as_exp_dict(f, upto=30):
    return {
        X.vectorize(g)[0]: f.coeff(g)
        for g in f.support_window(upto)
    }


def test_unit_is_neutral():
    f = SP.series({m(1): 2, m(3): -5})
    assert cauchy_product(ONE, f).eq_window(f)
    assert cauchy_product(f, ONE).eq_window(f)


def test_product_matches_convolution_oracle():
    f = SP.series({m(0): 1, m(1): -1})
    g = SP.series({m(0): 1, m(1): 1, m(2): 1})
    p = cauchy_product(f, g)
    want = conv_oracle({Fraction(0): Fraction(1), Fraction(1): Fraction(-1)},
                       {Fraction(0): Fraction(1), Fraction(1): Fraction(1),
                        Fraction(2): Fraction(1)})
    assert as_exp_dict(p) == want


@settings(max_examples=50, deadline=None)
@given(
    st.dictionaries(st.fractions(min_value=-2, max_value=4, max_denominator=3),
                    st.integers(-4, 4), min_size=1, max_size=4),
    st.dictionaries(st.fractions(min_value=-2, max_value=4, max_denominator=3),
                    st.integers(-4, 4), min_size=1, max_size=4),
)
def test_random_products_match_oracle(d1, d2):
    f = SP.series({m(q): c for q, c in d1.items()})
    g = SP.series({m(q): c for q, c in d2.items()})
    p = cauchy_product(f, g)
    want = conv_oracle({Fraction(q): Fraction(c) for q, c in d1.items()},
                       {Fraction(q): Fraction(c) for q, c in d2.items()})
    assert as_exp_dict(p, 40) == want


def test_product_many():
    f = SP.series({m(0): 1, m(1): 1})
    p3 = product_many([f, f, f])
    # oracle: binomial coefficients of (1+x)^3 [DERIVED]
    assert [p3.coeff(m(k)) for k in range(5)] == [1, 3, 3, 1, 0]


def test_leading_term():
    f = SP.series({m(2): 7, m(5): 1})
    assert leading_term(f) == (m(2), 7)
    assert leading_term(SP.zero()) is None


def test_valuation_additivity():
    f = SP.series({m(Fraction(1, 2)): 3, m(4): 1})
    g = SP.series({m(Fraction(3, 2)): -2})
    gp, cp = leading_term(cauchy_product(f, g))
    assert gp == m(2) and cp == -6


def test_monomial_shift():
    f = SP.series({m(0): 1, m(2): 5})
    s = monomial_shift(f, m(3), 2)
    assert s.coeff(m(3)) == 2 and s.coeff(m(5)) == 10


def invert_oracle(coeffs, upto):
    """Classical recurrence for inverting sum c_n x^n with c_0 != 0."""
    b = [Fraction(1) / coeffs[0]]
    for n in range(1, upto + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            acc += coeffs[k] * b[n - k] if k < len(coeffs) else 0
        b.append(-acc / coeffs[0])
    return b


def test_invert_matches_recurrence_oracle():
    rng = random.Random(7)
    for _ in range(20):
        coeffs = [Fraction(rng.randint(1, 5))] + [
            Fraction(rng.randint(-4, 4)) for _ in range(3)
        ]
        f = SP.series({m(n): c for n, c in enumerate(coeffs)})
        inv = invert_unit(f)
        want = invert_oracle(coeffs, 10)
        got = [inv.coeff(m(n)) for n in range(11)]
        assert got == want


def test_fibonacci_coefficients():
    # 1/(1-x-x^2) = sum F_{n+1} x^n with F = 1,1,2,3,5,8,... [PAPER]
    f = SP.series({m(0): 1, m(1): -1, m(2): -1})
    inv = invert_unit(f)
    assert [inv.coeff(m(n)) for n in range(6)] == [1, 1, 2, 3, 5, 8]


def test_invert_puiseux_leading_term():
    # (2 x (1 + x^(1/2)))^-1 starts at x^-1 with coefficient 1/2
    f = SP.series({m(1): 2, m(Fraction(3, 2)): 2})
    inv = invert_unit(f)
    assert inv.coeff(m(-1)) == Fraction(1, 2)
    assert inv.coeff(m(Fraction(-1, 2))) == Fraction(-1, 2)
    assert cauchy_product(f, inv).eq_window(ONE, 24)


def test_invert_rejects_zero():
    with pytest.raises(HahnError):
        invert_unit(SP.zero())


def test_neumann_sum_is_geometric_series():
    eps = SP.series({m(1): 1})
    s = neumann_sum(eps)
    # oracle: sum x^n has all coefficients 1 [DERIVED]
    assert [s.coeff(m(n)) for n in range(6)] == [1] * 6
    assert cauchy_product(sub(ONE, eps), s).eq_window(ONE, 24)


def test_neumann_sum_requires_positive_support():
    eps = SP.series({m(0): 1})  # support not strictly above the unit
    with pytest.raises(HahnError):
        neumann_sum(eps)


def test_truncate():
    f = invert_unit(SP.series({m(0): 1, m(1): -1}))
    t = truncate(f, m(3))
    assert t.terms == {m(k): Fraction(1) for k in range(4)}


def test_factored_series_sum():
    # sum over n of n! (x + x^2)^n has coefficients 1, 1, 3, 10 at x^0..x^3
    # oracle: expand by hand: n=0 ->1; n=1 -> x+x^2; n=2 -> 2(x^2+2x^3+x^4);
    # n=3 -> 6(x^3+...), so 1, 1, 1+2=3, 4+6=10 [DERIVED]
    base = SP.series({m(1): 1, m(2): 1})
    total = SP.zero()
    power = ONE
    fact = 1
    for n in range(5):
        if n:
            fact *= n
            power = cauchy_product(power, base)
        total = add(total, SP.series(
            {g: fact * power.coeff(g) for g in power.support_window(32)}
        ))
    assert [total.coeff(m(k)) for k in range(4)] == [1, 1, 3, 10]
