"""Truncated coefficient ring: square-zero u's, caps, exp, operators."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropgw.coeffring import (PreconditionError, RingConfig, Series,
                              make_key, key_mul, o_hat, t_hat)

CFG = RingConfig(k=2, mbar=3, xcap=3)


def mono(key, c=1, cfg=CFG):
    return Series.monomial(cfg, key, c)


def test_square_zero_same_point():
    a = mono(make_key(u=((1, 0),)))
    b = mono(make_key(u=((1, 1),)))
    assert not (a * b).terms
    assert not (a * a).terms


def test_distinct_points_multiply():
    a = mono(make_key(u=((1, 0),)))
    b = mono(make_key(u=((2, 1),)))
    assert (a * b).terms == {make_key(u=((1, 0), (2, 1))): Fraction(1)}


def test_xcap_truncates():
    x2 = mono(make_key(x=(2, 0, 0)))
    assert (x2 * x2).terms == {}
    assert key_mul(make_key(x=(2, 0, 0)), make_key(x=(2, 0, 0)), CFG) is None


def test_mbar_truncates_y0():
    y = mono(make_key(y0=2))
    assert (y * y).terms == {}


def test_exp_truncated_matches_series():
    # exp(c*u) = 1 + c*u/hbar for a square-zero generator.
    c = Fraction(3, 7)
    s = mono(make_key(u=((1, 0),)), c)
    e = s.exp_truncated(hbar_shift=-1)
    assert e.terms == {make_key(): Fraction(1),
                       make_key(u=((1, 0),), hbar=-1): c}


def test_exp_rejects_constant_term():
    with pytest.raises(PreconditionError):
        Series.const(CFG, 1).exp_truncated()


def test_o_hat_leibniz_example():
    # O(u[1,0] u[2,1] x1 x2) = u[1,1]u[2,1]x1x2 + u[1,0]u[2,2]x1x2
    cfg = RingConfig(k=3, mbar=0, xcap=2)
    s = Series.monomial(cfg, make_key(x=(0, 1, 1), u=((1, 0), (2, 1))))
    out = o_hat(s)
    assert out.terms == {
        make_key(x=(0, 1, 1), u=((1, 1), (2, 1))): Fraction(1),
        make_key(x=(0, 1, 1), u=((1, 0), (2, 2))): Fraction(1)}


def test_o_hat_drops_top_order():
    # u-orders above k-1 leave the ring.
    s = mono(make_key(u=((1, 1),)))
    assert o_hat(s).terms == {}


def test_t_hat_order_zero_is_identity_part():
    s = mono(make_key(u=((1, 0),)))
    out = t_hat(s)
    assert out.coeff(make_key(u=((1, 0),))) == 1
    assert out.coeff(make_key(u=((1, 1),), y0=1)) == 1


def test_serialization_round_trip():
    s = (mono(make_key(x=(1, 0, 2), u=((1, 1),), y0=2, hbar=-3),
              Fraction(-5, 9))
         + mono(make_key(), Fraction(2)))
    assert Series.from_obj(CFG, s.to_obj()) == s


small_series = st.lists(
    st.tuples(
        st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(0, 1)),
        st.sampled_from([(), ((1, 0),), ((2, 1),), ((1, 0), (2, 0))]),
        st.integers(0, 2), st.integers(-2, 2),
        st.fractions(max_denominator=6)),
    max_size=4)


def build(items):
    s = Series.zero(CFG)
    for x, u, y0, hb, c in items:
        s = s + Series.monomial(CFG, make_key(x=x, u=u, y0=y0, hbar=hb), c)
    return s


@settings(max_examples=60, deadline=None)
@given(small_series, small_series, small_series)
def test_ring_axioms(a, b, c):
    sa, sb, sc = build(a), build(b), build(c)
    assert sa * sb == sb * sa
    assert (sa * sb) * sc == sa * (sb * sc)
    assert sa * (sb + sc) == sa * sb + sa * sc


@settings(max_examples=40, deadline=None)
@given(small_series)
def test_o_hat_is_additive(a):
    sa = build(a)
    half = build(a[: len(a) // 2])
    rest = sa - half
    assert o_hat(sa) == o_hat(half) + o_hat(rest)
