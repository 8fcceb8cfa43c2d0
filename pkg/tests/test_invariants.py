"""Tests for the descendent tropical invariant engine."""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tropgw.coeffring import PreconditionError
from tropgw.geometry import generate_arrangement
from tropgw.invariants import (DescendentKey, InvariantContext,
                               check_tropfun, classical_insertions,
                               compatible_keys, d_coeffs, mult_vertex,
                               sector_of_exponent, tropical_invariant)
from tropgw.oracle import classical_invariant


def F(a, b=1):
    return Fraction(a, b)


class TestMultVertex:
    def test_level0_is_symmetry_factor(self):
        assert mult_vertex(0, (0, 0, 0)) == 1
        assert mult_vertex(0, (2, 1, 0)) == F(1, 2)
        assert mult_vertex(0, (3, 3, 3)) == F(1, 216)

    def test_level1_folds_in_one_harmonic(self):
        # -(H_1 + H_2 + H_0) / (1! 2! 0!) = -5/4
        assert mult_vertex(1, (1, 2, 0)) == F(-5, 4)
        assert mult_vertex(1, (0, 0, 0)) == 0

    def test_level2_value(self):
        # ((H_1^2 + 1)/2) / 1 = 1 for M = (1, 0, 0)
        assert mult_vertex(2, (1, 0, 0)) == 1

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            mult_vertex(0, (-1, 0, 0))

    def test_matches_d_coeffs(self):
        for mv in ((1, 0, 2), (0, 0, 1), (2, 2, 2)):
            d = 3
            w = tuple(d - m for m in mv)
            assert d_coeffs(d, w) == tuple(mult_vertex(i, mv)
                                           for i in range(3))


class TestDCoeffs:
    def test_point_class_vanishes_on_exceeders(self):
        # D_0 needs every component at most d
        assert d_coeffs(1, (2, 0, 0))[0] == 0
        assert d_coeffs(1, (1, 1, 1))[0] == 1

    def test_line_class_vanishes_on_two_exceeders(self):
        assert d_coeffs(1, (2, 2, 0))[1] == 0
        assert d_coeffs(1, (2, 1, 0))[1] != 0

    def test_three_exceeders_kill_everything(self):
        assert d_coeffs(1, (2, 2, 2)) == (0, 0, 0)

    def test_sector_labels(self):
        assert sector_of_exponent(1, (1, 1, 0)) == "o"
        assert sector_of_exponent(1, (2, 0, 0)) == "rho0"
        assert sector_of_exponent(1, (2, 2, 0)) == "sigma01"
        assert sector_of_exponent(1, (2, 2, 2)) is None


class TestDescendentKey:
    def test_gate(self):
        assert DescendentKey(1, (1,), 0, 0, 0).compatible
        assert DescendentKey(1, (1, 1), 0, 0, 0).compatible is False
        assert DescendentKey(2, (), 0, 4, 0).compatible
        assert DescendentKey(0, (), 3, 1, 0).compatible

    def test_r_sorted_descending(self):
        assert DescendentKey(1, (1, 3, 2), 3, 0, 0).r == (3, 2, 1)

    def test_validation(self):
        with pytest.raises(ValueError):
            DescendentKey(1, (0,), 0, 0, 0)
        with pytest.raises(ValueError):
            DescendentKey(1, (), 0, 0, 3)

    def test_roundtrip(self):
        key = DescendentKey(2, (3, 1), 1, 1, 2)
        assert DescendentKey.from_obj(key.to_obj()) == key

    def test_compatible_keys_pin_m(self):
        for key in compatible_keys(3, 1):
            assert key.compatible
            assert len(key.r) <= 3

    def test_classical_insertions(self):
        key = DescendentKey(1, (2,), 1, 1, 1)
        assert sorted(classical_insertions(key)) == [(0, 0), (1, 1), (2, 1)]


ARR3 = generate_arrangement(1, 3)
CTX3 = InvariantContext(ARR3)


def trop(arr, d, r, m, nu, cls, ctx):
    return tropical_invariant(arr, DescendentKey(d, r, m, nu, cls), ctx).value


class TestSpotValues:
    def test_plain_line_count(self):
        assert trop(ARR3, 1, (1,), 0, 0, 0, CTX3) == 1

    def test_incompatible_is_zero(self):
        assert trop(ARR3, 1, (1, 1), 0, 0, 0, CTX3) == 0

    def test_fundamental_class_spots(self):
        assert trop(ARR3, 1, (2, 2), 1, 0, 2, CTX3) == 2
        assert trop(ARR3, 1, (3, 2), 2, 0, 2, CTX3) == 3
        assert trop(ARR3, 1, (3, 3), 3, 0, 2, CTX3) == 6

    def test_line_class_spot(self):
        assert trop(ARR3, 1, (3, 3), 4, 0, 1, CTX3) == 6

    def test_distinguished_slot_descendents(self):
        assert trop(ARR3, 1, (), 0, 1, 0, CTX3) == 1
        assert trop(ARR3, 2, (), 0, 4, 0, CTX3) == F(1, 8)

    def test_needs_enough_marked_points(self):
        with pytest.raises(PreconditionError):
            trop(ARR3, 2, (1, 1, 1, 1), 1, 0, 0, CTX3)

    def test_matches_oracle_sample(self):
        vals = []
        for key in (DescendentKey(1, (2,), 1, 0, 0),
                    DescendentKey(1, (), 1, 2, 0),
                    DescendentKey(1, (2, 1), 2, 0, 0),
                    DescendentKey(0, (1, 1), 4, 0, 0)):
            assert key.compatible
            val = tropical_invariant(ARR3, key, CTX3).value
            assert val == classical_invariant(
                key.d, tuple(classical_insertions(key)))
            vals.append(val)
        assert any(vals)


class TestRecursion:
    def test_tropfun_spots(self):
        for key in (DescendentKey(1, (2, 2), 1, 0, 2),
                    DescendentKey(1, (2,), 1, 2, 0),
                    DescendentKey(0, (2, 1), 2, 0, 0)):
            assert check_tropfun(ARR3, key, CTX3)

    def test_tropfun_preconditions(self):
        with pytest.raises(PreconditionError):
            check_tropfun(ARR3, DescendentKey(1, (1,), 0, 0, 0), CTX3)
        with pytest.raises(PreconditionError):
            check_tropfun(ARR3, DescendentKey(0, (1,), 1, 0, 1), CTX3)


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=4), st.integers(0, 2))
def test_marked_orders_interchangeable(nu, cls):
    # the value only depends on r as a multiset, exercised through the
    # canonical descending sort of the key
    m = 2 - 3 + nu + 3 - cls
    if m < 0:
        return
    a = DescendentKey(1, (2, 1), m, nu, cls)
    b = DescendentKey(1, (1, 2), m, nu, cls)
    assert a == b
    assert tropical_invariant(ARR3, a, CTX3).value == \
        tropical_invariant(ARR3, b, CTX3).value
