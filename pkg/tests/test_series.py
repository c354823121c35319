"""Truncated Laurent series scalars used along Puiseux branches."""

import pytest

from tapcurve.scalars import QQ, QuotientRing, ZeroDivisorSplit, rat
from tapcurve.series import PrecisionError, SeriesRing, series_sqrt


def R(prec=10):
    return SeriesRing(QQ, prec)


def test_monomials_and_valuation():
    ring = R()
    s = ring.gen()
    assert s.valuation() == 1
    assert (s ** 3).valuation() == 3
    assert (s ** -2).valuation() == -2
    assert ring.one().valuation() == 0
    assert ring.zero().valuation() is None  # exact zero: no finite valuation


def test_addition_cancels_leading_terms():
    ring = R()
    s = ring.gen()
    a = s + s ** 2
    b = -s + s ** 3
    c = a + b
    assert c.valuation() == 2
    assert c.coefficient(2) == 1
    assert c.coefficient(3) == 1


def test_equality_and_coercion():
    ring = R()
    s = ring.gen()
    assert ring.coerce(3) == 3 * ring.one()
    assert s * s == s ** 2
    assert s != s ** 2


def test_precision_tracking_through_multiplication():
    ring = R(prec=6)
    s = ring.gen()
    a = ring.from_terms({0: rat(1), 1: rat(1)}, prec=3)  # 1 + s + O(s^3)
    b = ring.from_terms({2: rat(1)}, prec=5)             # s^2 + O(s^5)
    c = a * b
    assert c.prec == 5  # min(3 + 2, 5 + 0)
    assert c.coefficient(2) == 1
    assert c.coefficient(3) == 1


def test_inverse_of_exact_series_is_geometric():
    ring = R(prec=6)
    s = ring.gen()
    inv = (ring.one() - s).inverse()
    for k in range(6):
        assert inv.coefficient(k) == 1
    assert inv.prec == 6


def test_inverse_precision_rule():
    ring = R(prec=12)
    s = ring.gen()
    # valuation 2, absolute precision 7 -> inverse has precision 7 - 4 = 3
    a = ring.from_terms({2: rat(1), 3: rat(4)}, prec=7)
    inv = a.inverse()
    assert inv.valuation() == -2
    assert inv.prec == 3
    assert inv.coefficient(-2) == 1
    assert inv.coefficient(-1) == -4
    prod = a * inv
    assert prod.coefficient(0) == 1
    assert not any(prod.coefficient(k) for k in range(1, prod.prec))


def test_division_and_negative_powers():
    ring = R(prec=8)
    s = ring.gen()
    q = ring.one() / (s ** 2)
    assert q.valuation() == -2
    w = (s + s ** 2) ** -1
    assert w.valuation() == -1
    assert w.coefficient(-1) == 1
    assert w.coefficient(0) == -1


def test_undetermined_valuation_raises():
    ring = R(prec=4)
    a = ring.from_terms({}, prec=4)  # zero to order 4, not exactly zero
    with pytest.raises(PrecisionError, match="order 4"):
        a.valuation()
    with pytest.raises(PrecisionError):
        a.inverse()


def test_exact_zero_inverse_raises_zero_division():
    ring = R()
    with pytest.raises(ZeroDivisionError):
        ring.zero().inverse()


def test_zero_divisor_split_propagates_from_packet_ring():
    k = QuotientRing(QQ, [rat(-1), rat(0), rat(1)], name="r")  # r^2 = 1
    ring = SeriesRing(k, 6)
    lead = k.gen() - k.one()  # zero divisor: (r-1)(r+1) = 0
    a = ring.from_terms({0: lead}, prec=None)
    with pytest.raises(ZeroDivisorSplit):
        a.inverse()


def test_series_sqrt_binomial():
    ring = R(prec=8)
    s = ring.gen()
    a = ring.one() - 4 * s ** 2
    r = series_sqrt(a, rat(1))
    assert (r * r) == a
    assert r.coefficient(0) == 1
    assert r.coefficient(2) == -2
    assert r.coefficient(4) == -2


def test_series_sqrt_with_shifted_valuation():
    ring = R(prec=8)
    s = ring.gen()
    a = 9 * s ** 4 * (ring.one() + s)
    r = series_sqrt(a, rat(3))
    assert r.valuation() == 2
    assert r.coefficient(2) == 3
    assert r * r == a


def test_exactness_flag_arithmetic():
    ring = R(prec=5)
    s = ring.gen()
    assert (s + s ** 2).prec is None
    assert ((s + 1) * (s - 1)).prec is None
    assert ((s + 1) + (1 - s)).prec is None
    trunc = ring.from_terms({0: rat(1)}, prec=3)
    assert (s * trunc).prec == 4
