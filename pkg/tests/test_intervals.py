"""Outward rounding and ordering semantics of the Enclosure type."""

from fractions import Fraction

import pytest
from mpmath import mp

from divisor_series.intervals import (
    Enclosure,
    GAMMA_DIGITS,
    gamma_enclosure,
    interval_precision,
    mpf_to_fraction,
    to_ivmpf,
    working_precision,
)


def test_third_times_three_contains_one():
    with interval_precision(64):
        third = Enclosure(1) / 3
        product = third * 3
    assert product.contains(1)
    assert third.lo < third.hi  # genuinely outward


def test_fraction_conversion_outward():
    with interval_precision(128):
        enc = Enclosure(Fraction(117, 1000))
    assert enc.contains(Fraction(117, 1000))
    assert enc.lo < enc.hi or mpf_to_fraction(enc.lo) == Fraction(117, 1000)


def test_dyadic_conversion_exact():
    enc = Enclosure(0.25)
    assert mpf_to_fraction(enc.lo) == Fraction(1, 4) == mpf_to_fraction(enc.hi)


def test_log_exp_containment():
    with interval_precision(64):
        x = Enclosure(2)
        roundtrip = x.log().exp()
    assert roundtrip.contains(2)


def test_sqrt_containment():
    with interval_precision(64):
        s = Enclosure(2).sqrt()
        sq = s * s
    assert sq.contains(2)


def test_strict_ordering_and_overlap():
    a = Enclosure(1, 2)
    b = Enclosure(3, 4)
    c = Enclosure(Fraction(3, 2), Fraction(7, 2))
    assert a.strictly_below(b)
    assert not a.strictly_below(c)
    assert a.intersects(c) and c.intersects(b)
    assert not a.intersects(b)


def test_contained_in_is_exact():
    enc = Enclosure(Fraction(1, 3), Fraction(2, 3))
    assert enc.contained_in(Fraction(1, 4), Fraction(3, 4))
    assert not enc.contained_in(Fraction(1, 3) + Fraction(1, 10**40), 1)


def test_to_floats_round_outward():
    with interval_precision(256):
        enc = Enclosure(1) / 3
    lo, hi = enc.to_floats()
    assert Fraction(lo) <= mpf_to_fraction(enc.lo)
    assert Fraction(hi) >= mpf_to_fraction(enc.hi)


def test_endpoints_out_of_order_rejected():
    with pytest.raises(ValueError):
        Enclosure(2, 1)


def test_gamma_digits_cross_check():
    """The stored digits bracket an independently computed Euler constant."""
    with mp.workprec(300):
        independent = +mp.euler
    gamma = gamma_enclosure()
    value = mpf_to_fraction(independent)
    assert mpf_to_fraction(gamma.lo) < value < mpf_to_fraction(gamma.hi)
    assert len(GAMMA_DIGITS.split(".")[1]) >= 50


def test_width_upper_bounds_true_width():
    with interval_precision(64):
        enc = Enclosure(1) / 7
    assert enc.width_upper() >= enc.hi - enc.lo


def test_working_precision_env(monkeypatch):
    monkeypatch.setenv("DIVISOR_SERIES_PREC", "256")
    assert working_precision() == 256
    monkeypatch.setenv("DIVISOR_SERIES_PREC", "10")
    assert working_precision() == 53  # floored
    monkeypatch.delenv("DIVISOR_SERIES_PREC")
    assert working_precision() == 128
