"""Exact-rational geometry: fan, rays, arrangements."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropgw.geometry import (FAN, Arrangement, Ray, generate_arrangement,
                             generality_check, intersect, on_ray, primitive,
                             proj, sector_of, wedge)


def test_fan_sums_to_zero():
    assert tuple(map(sum, zip(*FAN))) == (0, 0)


def test_proj_kills_diagonal():
    assert proj((3, 3, 3)) == (0, 0)
    assert proj((2, 1, 1)) == (-1, -1)
    assert proj((1, 2, 1)) == (1, 0)


coords = st.fractions(max_denominator=12).filter(lambda f: abs(f) <= 8)


@settings(max_examples=80, deadline=None)
@given(st.tuples(st.integers(-9, 9), st.integers(-9, 9)))
def test_primitive_divides(v):
    if v == (0, 0):
        return
    p, l = primitive(v)
    assert l > 0
    assert (p[0] * l, p[1] * l) == v


@settings(max_examples=80, deadline=None)
@given(st.tuples(st.integers(-9, 9), st.integers(-9, 9)),
       st.tuples(st.integers(-9, 9), st.integers(-9, 9)))
def test_wedge_antisymmetric(u, v):
    assert wedge(u, v) == -wedge(v, u)


def test_sector_classification():
    assert sector_of(FAN[0]) == ("rho", 0)
    v = (FAN[1][0] + FAN[2][0], FAN[1][1] + FAN[2][1])
    assert sector_of(v) == ("sigma", 1)
    with pytest.raises(ValueError):
        sector_of((0, 0))


def test_ray_intersection():
    r1 = Ray((Fraction(0), Fraction(0)), (1, 0))
    r2 = Ray((Fraction(1), Fraction(-1)), (0, 1))
    pt = intersect(r1, r2)
    assert pt == (Fraction(1), Fraction(0))
    assert on_ray(pt, r1) and on_ray(pt, r2)


def test_on_ray_respects_base():
    r = Ray((Fraction(0), Fraction(0)), (1, 1))
    assert on_ray((Fraction(2), Fraction(2)), r)
    assert not on_ray((Fraction(-1), Fraction(-1)), r)


def test_generate_is_deterministic():
    a = generate_arrangement(7, 2)
    b = generate_arrangement(7, 2)
    assert a.Q == b.Q and a.P == b.P
    assert a.general


def test_distinct_seeds_differ():
    assert generate_arrangement(1, 2).Q != generate_arrangement(2, 2).Q


def test_json_round_trip():
    a = generate_arrangement(3, 2)
    b = Arrangement.from_json(a.to_json())
    assert (a.Q, a.P, a.seed) == (b.Q, b.P, b.seed)


def test_generality_rejects_coincident_points():
    q = (Fraction(1, 3), Fraction(1, 5))
    arr = Arrangement(Q=q, P=[q])
    ok, violations = generality_check(arr)
    assert not ok and violations
