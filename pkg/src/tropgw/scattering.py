"""Scattering diagrams over an arrangement of marked points in the plane.

A wall is a ray decorated with a function ``1 + c * z^x * u`` where ``c``
is an exact rational, ``z^x`` is a monomial in the three coordinates and
``u`` is a square-zero variable monomial recording which marked points the
wall consumed.  The diagram is built degree by degree in the number of
``u`` factors: walls either arise from transverse scattering of two older
walls or from gluing tropical disks at a marked point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import factorial

from .geometry import (FAN, GeneralityError, Ray, on_ray, primitive, proj,
                       wedge)


class DiagramError(RuntimeError):
    """The diagram construction hit a non-generic configuration."""


def u_points(u):
    """Set of marked-point indices appearing in a u-monomial."""
    return frozenset(i for i, _ in u)


def merge_u(u1, u2):
    """Product of two u-monomials, or ``None`` when a point index repeats."""
    if u_points(u1) & u_points(u2):
        return None
    return tuple(sorted(u1 + u2))


@dataclass(frozen=True)
class Wall:
    """Ray ``base + t*dirp`` with function ``1 + coeff * z^xexp * u``."""

    base: tuple
    dirp: tuple
    weight: int
    coeff: Fraction
    xexp: tuple
    u: tuple
    origin: int | None = None

    @property
    def udeg(self):
        return len(self.u)

    @property
    def xdeg(self):
        return sum(self.xexp)

    def ray(self):
        return Ray(self.base, self.dirp)


@dataclass
class Diagram:
    """All walls over an arrangement, up to the component cap ``xcap``."""

    arr: object
    walls: list
    xcap: int
    max_order: int | None = None

    @property
    def k(self):
        return self.arr.k

    def walls_through(self, pt):
        return [w for w in self.walls if on_ray(pt, w.ray())]


def _check_special_points(wall, arr):
    specials = [("Q", arr.Q)] + [(f"P{j}", arr.point(j))
                                 for j in range(1, arr.k + 1)]
    for name, pt in specials:
        if pt == wall.base:
            if wall.origin is None:
                raise DiagramError(f"scattering point coincides with {name}")
            continue
        if on_ray(pt, wall.ray()):
            raise DiagramError(f"special point {name} lies on a wall "
                               f"based at {wall.base}")


def _graded_disk_powers(terms, xcap, max_r, exceed_d=None):
    """Multisets of distinct disk terms, graded by the number of factors.

    ``terms`` is a list of ``(coeff, xexp, u)`` with nonempty ``u``; the
    square-zero relations make repeated factors vanish, so the exponential
    ``sum_r S^r / r!`` enumerates each multiset exactly once.  Returns a
    dict ``r -> {(xexp, u): coeff}``.
    """
    powers = {0: {((0, 0, 0), ()): Fraction(1)}}
    for r in range(1, max_r + 1):
        prev = powers[r - 1]
        cur = {}
        for (w1, u1), c1 in prev.items():
            for c2, w2, u2 in terms:
                u = merge_u(u1, u2)
                if u is None:
                    continue
                w = (w1[0] + w2[0], w1[1] + w2[1], w1[2] + w2[2])
                if max(w) > xcap or (
                        exceed_d is not None
                        and sum(1 for e in w if e > exceed_d) > 2):
                    continue
                key = (w, u)
                cur[key] = cur.get(key, Fraction(0)) + c1 * c2 / r
        cur = {key: c for key, c in cur.items() if c != 0}
        if not cur:
            break
        powers[r] = cur
    return powers


def build_diagram(arr, dmax, strict=False, max_order=None, xcap=None,
                  exceed_d=None):
    """Build the scattering diagram of an arrangement up to ``z^x`` cap.

    ``xcap`` bounds each component of a wall exponent (default ``dmax``);
    ``max_order`` optionally drops walls containing a u-variable of order
    above it.  ``strict`` raises :class:`DiagramError` on the coincidences
    a general arrangement must avoid.  ``exceed_d`` drops walls whose
    exponent has three components above it: such walls never contribute
    to a degree-``exceed_d`` invariant (exponents only accumulate, and
    every slot weight vanishes on three exceeding components), but the
    pruned diagram is no longer consistent, so leave it unset for
    loop-identity checks.
    """
    from .brokenlines import broken_line_terms

    k = arr.k
    if xcap is None:
        xcap = dmax
    n_cap = k if max_order is None else min(k, max_order + 1)
    walls = []

    def order_ok(u):
        return max_order is None or all(j <= max_order for _, j in u)

    def exceed_ok(xs):
        return (exceed_d is None
                or sum(1 for e in xs if e > exceed_d) <= 2)

    for g in range(1, k + 1):
        new = {}

        def add(base, xexp, coeff, u, origin):
            v = proj(xexp)
            if v == (0, 0):
                return
            dirp, wt = primitive((-v[0], -v[1]))
            key = (base, dirp, xexp, u, origin)
            new[key] = new.get(key, Fraction(0)) + coeff

        # Transverse scattering of two existing walls.  Only pairs whose
        # u-degrees sum to g can produce a degree-g child, so bucket by
        # u-degree instead of rescanning every pair each round.
        by_udeg = {}
        for w in walls:
            by_udeg.setdefault(w.udeg, []).append(w)

        def pairs():
            for a in range(1, g // 2 + 1):
                b = g - a
                if a == b:
                    yield from combinations(by_udeg.get(a, ()), 2)
                else:
                    yield from product(by_udeg.get(a, ()),
                                       by_udeg.get(b, ()))

        for w1, w2 in pairs():
            u = merge_u(w1.u, w2.u)
            if u is None or not order_ok(u):
                continue
            xs = tuple(a + b for a, b in zip(w1.xexp, w2.xexp))
            if max(xs) > xcap or not exceed_ok(xs):
                continue
            cross = wedge(proj(w1.xexp), proj(w2.xexp))
            if cross == 0:
                continue
            pt = _strict_crossing(w1, w2)
            if pt is None:
                continue
            _, l1 = primitive(proj(w1.xexp))
            _, l2 = primitive(proj(w2.xexp))
            _, l12 = primitive(proj(xs))
            add(pt, xs, Fraction(abs(cross) * l12, l1 * l2)
                * w1.coeff * w2.coeff, u, None)

        # Gluing tropical disks (and straight rays) at each marked point.
        for l in range(1, k + 1):
            if g == 1:
                disk_terms = []
            else:
                allowed = {i: k - 1 for i in range(1, k + 1) if i != l}
                disk_terms = [t for t in broken_line_terms(
                    walls, arr.point(l), xcap,
                    allowed_u=allowed, max_udeg=g - 1)
                    if t[2] and exceed_ok(t[1])]
            powers = _graded_disk_powers(disk_terms, xcap, g - 1, exceed_d)
            for r, table in powers.items():
                for (w, u), c in table.items():
                    if len(u) != g - 1 or not order_ok(u):
                        continue
                    for m0 in range(xcap - w[0] + 1):
                        for m1 in range(xcap - w[1] + 1):
                            for m2 in range(xcap - w[2] + 1):
                                n = r + m0 + m1 + m2
                                if n < 1 or n > n_cap:
                                    continue
                                xs = (w[0] + m0, w[1] + m1, w[2] + m2)
                                if not exceed_ok(xs):
                                    continue
                                v = proj(xs)
                                if v == (0, 0):
                                    continue
                                _, wt = primitive((-v[0], -v[1]))
                                uc = merge_u(u, ((l, n - 1),))
                                if uc is None or not order_ok(uc):
                                    continue
                                cc = (wt * c / (factorial(m0) *
                                                factorial(m1) * factorial(m2)))
                                add(arr.point(l), xs, cc, uc, l)

        for (base, dirp, xexp, u, origin), coeff in sorted(new.items()):
            if coeff == 0:
                continue
            _, wt = primitive((-proj(xexp)[0], -proj(xexp)[1]))
            wall = Wall(base=base, dirp=dirp, weight=wt, coeff=coeff,
                        xexp=xexp, u=u, origin=origin)
            if strict:
                _check_special_points(wall, arr)
            walls.append(wall)

    return Diagram(arr=arr, walls=walls, xcap=xcap, max_order=max_order)


def initial_rays(arr):
    """The three order-0 walls based at each marked point.

    Point ``P_l`` emits, for each fan direction ``m_i``, a wall with
    direction ``-m_i`` and function ``1 + u[l][0] * x_i``.
    """
    walls = []
    for l in range(1, arr.k + 1):
        for i in range(3):
            xexp = [0, 0, 0]
            xexp[i] = 1
            dirp = (-FAN[i][0], -FAN[i][1])
            walls.append(Wall(base=arr.point(l), dirp=dirp, weight=1,
                              coeff=Fraction(1), xexp=tuple(xexp),
                              u=((l, 0),), origin=l))
    return walls


def scatter_unmarked(w1, w2, x=None):
    """Child wall from a transverse crossing of two walls, or ``None``.

    The child is based at the crossing and carries exponent ``m1 + m2``;
    it vanishes when the u-monomials share a point index or the exponents
    are parallel.  Each wall acts as the derivation ``c * z^m * d/dn`` with
    ``n`` the primitive normal, so the commutator child has coefficient
    ``|p(m1)^p(m2)| * c1 * c2 * l12 / (l1 * l2)`` where ``l`` denotes the
    content (divisibility) of the projected exponents.  This is the unique
    wall restoring the loop identity at the crossing.
    """
    pt = _strict_crossing(w1, w2)
    if pt is None:
        raise DiagramError("walls do not cross transversely")
    if x is not None and x != pt:
        raise DiagramError(f"stated crossing {x} differs from {pt}")
    u = merge_u(w1.u, w2.u)
    if u is None:
        return None
    cross = wedge(proj(w1.xexp), proj(w2.xexp))
    if cross == 0:
        return None
    xs = tuple(a + b for a, b in zip(w1.xexp, w2.xexp))
    v = proj(xs)
    if v == (0, 0):
        return None
    dirp, wt = primitive((-v[0], -v[1]))
    _, l1 = primitive(proj(w1.xexp))
    _, l2 = primitive(proj(w2.xexp))
    return Wall(base=pt, dirp=dirp, weight=wt,
                coeff=Fraction(abs(cross) * wt, l1 * l2)
                * w1.coeff * w2.coeff, xexp=xs, u=u,
                origin=None)


def glue_at_marked(arr, l, disks, M):
    """Wall from joining disks and pure rays at the marked point ``P_l``.

    ``disks`` is a multiset (list) of ``(coeff, xexp, u)`` disk monomials
    with endpoint ``P_l``; ``M = (M0, M1, M2)`` counts pure rays in the
    fan directions.  Repeated disks contribute their symmetry factor.
    Returns ``None`` when the summed direction vanishes.
    """
    u = ()
    coeff = Fraction(1)
    xs = [M[0], M[1], M[2]]
    seen = {}
    for c, w, du in disks:
        nu = merge_u(u, du)
        if nu is None or any(i == l for i, _ in du):
            raise DiagramError("disk u-supports must avoid P_l and each other")
        u = nu
        seen[(c, w, du)] = seen.get((c, w, du), 0) + 1
        coeff *= c / seen[(c, w, du)]
        for v in range(3):
            xs[v] += w[v]
    n = len(disks) + sum(M)
    if n < 1:
        raise DiagramError("a glued wall needs at least one disk or ray")
    xs = tuple(xs)
    v = proj(xs)
    if v == (0, 0):
        return None
    dirp, wt = primitive((-v[0], -v[1]))
    coeff = wt * coeff / (factorial(M[0]) * factorial(M[1]) * factorial(M[2]))
    u = merge_u(u, ((l, n - 1),))
    if u is None:
        return None
    return Wall(base=arr.point(l), dirp=dirp, weight=wt, coeff=coeff,
                xexp=xs, u=u, origin=l)


def _strict_crossing(w1, w2):
    """Interior intersection point of two wall rays, else ``None``."""
    d = wedge(w1.dirp, w2.dirp)
    if d == 0:
        return None
    v = (w2.base[0] - w1.base[0], w2.base[1] - w1.base[1])
    t = Fraction(wedge(v, w2.dirp), d)
    s = Fraction(wedge(v, w1.dirp), d)
    if t <= 0 or s <= 0:
        return None
    return (w1.base[0] + t * w1.dirp[0], w1.base[1] + t * w1.dirp[1])


def apply_crossing(series, wall, sign):
    """Wall-crossing action on a series of monomials ``c * z^w * u``.

    ``sign`` is +1 or -1 as the path crosses with or against the primitive
    normal; each term picks up ``sign * <n0, proj(w)> * coeff`` times the
    wall monomial, and square-zero relations truncate higher powers.
    """
    from .coeffring import Series, make_key, key_mul

    n0 = (-wall.dirp[1], wall.dirp[0])
    out = Series(series.cfg, dict(series.terms))
    wall_key = make_key(x=wall.xexp, u=wall.u)
    for key, c in series.terms.items():
        x = key[0]
        exp = sign * (n0[0] * proj(x)[0] + n0[1] * proj(x)[1])
        if exp == 0:
            continue
        prod = key_mul(key, wall_key, series.cfg)
        if prod is None:
            continue
        out.terms[prod] = out.terms.get(prod, Fraction(0)) + exp * wall.coeff * c
    out.terms = {key: c for key, c in out.terms.items() if c != 0}
    return out


def path_automorphism(walls, p0, p1, series):
    """Transport a series along the open segment from ``p0`` to ``p1``.

    Crossings are taken in order along the path; two non-parallel walls
    meeting the path at the same point make the order ill-defined and
    raise :class:`GeneralityError`.
    """
    seg = (p1[0] - p0[0], p1[1] - p0[1])
    crossings = []
    for wall in walls:
        den = wedge(seg, wall.dirp)
        if den == 0:
            continue
        v = (wall.base[0] - p0[0], wall.base[1] - p0[1])
        t = Fraction(wedge(v, wall.dirp), den)
        s = Fraction(wedge(v, seg), den)
        if not (0 < t < 1) or s <= 0:
            continue
        n0 = (-wall.dirp[1], wall.dirp[0])
        dot = n0[0] * seg[0] + n0[1] * seg[1]
        sign = -1 if dot > 0 else 1
        crossings.append((t, sign, wall))
    crossings.sort(key=lambda tsw: tsw[0])
    for (t1, _, w1), (t2, _, w2) in zip(crossings, crossings[1:]):
        if t1 == t2 and wedge(w1.dirp, w2.dirp) != 0:
            raise GeneralityError(
                f"two non-parallel walls cross a path at the same point "
                f"near parameter {t1}")
    out = series
    for _, sign, wall in crossings:
        out = apply_crossing(out, wall, sign)
    return out


def check_loop_identity(diagram, point, cfg, eps=Fraction(1, 4)):
    """Check consistency of the diagram around an interior point.

    Transports each coordinate monomial counterclockwise around a small
    square centred at ``point``; consistency means the composite is the
    identity.  Returns True when all three coordinates come back unchanged.
    """
    from .coeffring import Series, make_key, ONE_KEY

    through = diagram.walls_through(point)
    # Corner directions must not be parallel to any wall through the point,
    # or that wall slips through a corner and is never crossed.
    n = 1
    while any(wedge((n, 1), w.dirp) == 0 or wedge((-1, n), w.dirp) == 0
              for w in through):
        n += 1
    dirs = ((n, 1), (-1, n), (-n, -1), (1, -n))
    while True:
        corners = [(point[0] + sx * eps, point[1] + sy * eps)
                   for sx, sy in dirs]
        ok = True
        for wall in diagram.walls:
            if wall in through:
                continue
            for a, b in zip(corners, corners[1:] + corners[:1]):
                seg = (b[0] - a[0], b[1] - a[1])
                den = wedge(seg, wall.dirp)
                if den == 0:
                    continue
                v = (wall.base[0] - a[0], wall.base[1] - a[1])
                t = Fraction(wedge(v, wall.dirp), den)
                s = Fraction(wedge(v, seg), den)
                if 0 <= t <= 1 and s >= 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            break
        eps /= 2
    for i in range(3):
        x = [0, 0, 0]
        x[i] = 1
        start = Series.monomial(cfg, make_key(x=tuple(x)))
        cur = start
        for a, b in zip(corners, corners[1:] + corners[:1]):
            cur = path_automorphism(through, a, b, cur)
        if cur.terms != start.terms:
            return False
    return True
