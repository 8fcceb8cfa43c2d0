"""Scattering diagrams: initial walls, children, loop consistency."""
import dataclasses
from fractions import Fraction

import pytest

from tropgw.coeffring import RingConfig
from tropgw.geometry import FAN, generate_arrangement
from tropgw.scattering import (Diagram, DiagramError, build_diagram,
                               check_loop_identity, initial_rays,
                               scatter_unmarked)


def singular_points(diagram):
    return sorted({w.base for w in diagram.walls if w.origin is None})


def test_initial_rays_shape():
    arr = generate_arrangement(1, 2)
    rays = initial_rays(arr)
    assert len(rays) == 6
    for w in rays:
        assert w.coeff == 1 and w.weight == 1
        assert sum(w.xexp) == 1
        i = w.xexp.index(1)
        assert w.dirp == (-FAN[i][0], -FAN[i][1])
        assert w.u == ((w.origin, 0),)


def test_scatter_unmarked_basic_child():
    # (1 + u[1,0] x2 on dir (0,-1)) x (1 + u[2,0] x1 on dir (-1,0))
    # -> child 1 + u[1,0]u[2,0] x1 x2 on dir (-1,-1), weight 1.
    arr = generate_arrangement(1, 2)
    rays = initial_rays(arr)
    w1 = next(w for w in rays if w.origin == 1 and w.xexp == (0, 0, 1))
    w2 = next(w for w in rays if w.origin == 2 and w.xexp == (1, 0, 0))
    child = scatter_unmarked(w1, w2)
    if child is None:
        pytest.skip("these two rays do not cross for this seed")
    assert child.xexp == (1, 0, 1)
    assert child.u == ((1, 0), (2, 0))
    assert child.weight == 1
    assert child.coeff == 1


def test_same_point_u_kills_child():
    arr = generate_arrangement(1, 2)
    rays = initial_rays(arr)
    w1 = next(w for w in rays if w.origin == 1 and w.xexp == (0, 0, 1))
    w2 = dataclasses.replace(
        next(w for w in rays if w.origin == 2 and w.xexp == (1, 0, 0)),
        u=((1, 0),))
    try:
        child = scatter_unmarked(w1, w2)
    except DiagramError:
        return
    assert child is None


def test_build_diagram_only_u_walls():
    dg = build_diagram(generate_arrangement(1, 2), 2, xcap=2)
    assert all(w.u for w in dg.walls)
    assert all(max(w.xexp) <= 2 for w in dg.walls)


@pytest.mark.parametrize("seed", [1, 2])
def test_loop_identity_k2(seed):
    arr = generate_arrangement(seed, 2)
    dg = build_diagram(arr, 2, xcap=2)
    cfg = RingConfig(k=2, mbar=0, xcap=2)
    pts = singular_points(dg)
    assert pts
    assert all(check_loop_identity(dg, pt, cfg) for pt in pts)


def test_fault_injection_breaks_loop():
    arr = generate_arrangement(1, 2)
    dg = build_diagram(arr, 2, xcap=2)
    cfg = RingConfig(k=2, mbar=0, xcap=2)
    children = [w for w in dg.walls if w.origin is None]
    assert children
    victim = children[0]
    broken = Diagram(arr=arr, walls=[w for w in dg.walls if w is not victim],
                     xcap=dg.xcap)
    assert not check_loop_identity(broken, victim.base, cfg)


def test_exceeder_pruning_preserves_small_walls():
    arr = generate_arrangement(1, 2)
    full = build_diagram(arr, 1, xcap=2)
    pruned = build_diagram(arr, 1, xcap=2, exceed_d=1)
    small = {(w.base, w.dirp, w.xexp, w.u, w.origin, w.coeff)
             for w in full.walls
             if sum(1 for e in w.xexp if e > 1) <= 2}
    assert {(w.base, w.dirp, w.xexp, w.u, w.origin, w.coeff)
            for w in pruned.walls} == small
