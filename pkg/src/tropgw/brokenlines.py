"""Broken lines: piecewise-straight paths that read off wall functions.

A broken line ends at a chosen point carrying a monomial ``c * z^w * u``.
Tracing backwards, each bend happens on a wall: the exponent drops by the
wall exponent, the coefficient picks up the wall coefficient times a
lattice-index factor, and the u-monomials multiply (square-zero).  The
trace terminates when the monomial is one of the coordinates ``x_i``,
whose segment runs straight out to infinity in direction ``-m_i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import FAN, GeneralityError, on_ray, primitive, proj, wedge

UNIT_EXPS = {(1, 0, 0): 0, (0, 1, 0): 1, (0, 0, 1): 2}


@dataclass(frozen=True)
class BrokenLine:
    """One broken line, recorded segment by segment.

    ``monomials`` lists the carried terms ``(coeff, xexp, u)`` from the
    unbounded initial segment (always ``(1, x_i, 1)``) to the final one at
    the endpoint; ``bends`` lists ``(point, wall)`` pairs in the same
    order, one per consecutive pair of monomials.
    """
    endpoint: tuple
    monomials: tuple
    bends: tuple

    @property
    def coeff(self):
        return self.monomials[-1][0]

    @property
    def xexp(self):
        return self.monomials[-1][1]

    @property
    def u(self):
        return self.monomials[-1][2]


@dataclass(frozen=True)
class SemirigidDiskRecord:
    """Tropical disk read off a broken line via the disk bijection.

    ``mono`` is the final broken-line term ``(coeff, xexp, u)``, the disk
    direction is ``-proj(xexp)`` and the flexibility ``degree - |r|`` of
    every record is 1.
    """
    endpoint: tuple
    mono: tuple
    direction: tuple
    u_support: frozenset
    degree: int

    @property
    def flexibility(self):
        return self.degree - sum(j + 1 for _, j in self.mono[2])


def _usable_walls(walls, exclude_origin=None, allowed_u=None, max_udeg=None,
                  max_xexp=None, exclude_walls=()):
    out = []
    for w in walls:
        if exclude_origin is not None and w.origin == exclude_origin:
            continue
        if w in exclude_walls:
            continue
        if allowed_u is not None:
            if any(i not in allowed_u or j > allowed_u[i] for i, j in w.u):
                continue
        if max_udeg is not None and len(w.u) > max_udeg:
            continue
        if max_xexp is not None and any(a > b for a, b in zip(w.xexp, max_xexp)):
            continue
        out.append(w)
    return out


def broken_line_terms(walls, endpoint, xcap, exclude_origin=None,
                      allowed_u=None, max_udeg=None, roots=None,
                      exclude_walls=()):
    """All broken lines ending at ``endpoint``, as terms ``(c, xexp, u)``.

    ``xcap`` bounds each component of the final exponent.  ``allowed_u``
    restricts which u-variables may be picked up, as a map from marked-point
    index to the maximal admissible order.  ``exclude_origin`` ignores the
    walls emanating from one marked point, which is required when the
    endpoint is that point.  ``roots`` optionally restricts the final
    exponents to a given collection.  ``exclude_walls`` drops specific
    walls, which is required when the endpoint sits on one of them.
    """
    usable = _usable_walls(walls, exclude_origin, allowed_u, max_udeg,
                           exclude_walls=exclude_walls)
    lines = _trace_lines(usable, endpoint, xcap, roots)
    merged = {}
    for line in lines:
        c, w, u = line.monomials[-1]
        merged[(w, u)] = merged.get((w, u), Fraction(0)) + c
    return [(c, w, u) for (w, u), c in sorted(merged.items()) if c != 0]


def _trace_lines(usable, endpoint, xcap, roots=None):
    """Backward depth-first enumeration of broken lines at ``endpoint``."""
    for w in usable:
        if on_ray(endpoint, w.ray(), strict=True):
            raise GeneralityError(
                f"endpoint {endpoint} lies on a wall based at {w.base}")

    results = []

    def emit(w_unit, bends):
        # ``bends`` was collected walking backwards; replay it forwards.
        monos = [(Fraction(1), w_unit, ())]
        for pt, wall in reversed(bends):
            c, w, u = monos[-1]
            e = abs(wedge(wall.dirp, proj(w)))
            monos.append((c * e * wall.coeff,
                          tuple(a + b for a, b in zip(w, wall.xexp)),
                          tuple(sorted(u + wall.u))))
        results.append(BrokenLine(
            endpoint=endpoint, monomials=tuple(monos),
            bends=tuple(reversed(bends))))

    def trace(point, w, acc, upts, uset, root, bends):
        if w in UNIT_EXPS:
            emit(w, bends)
            return
        d = proj(w)
        seg, _ = primitive(d)
        crossings = []
        for wall in usable:
            if any(a > b for a, b in zip(wall.xexp, w)):
                continue
            if upts & {i for i, _ in wall.u}:
                continue
            den = wedge(seg, wall.dirp)
            v = (wall.base[0] - point[0], wall.base[1] - point[1])
            if den == 0:
                if wedge(v, wall.dirp) == 0:
                    # Collinear supports: degenerate only when the wall's
                    # half-line actually meets the forward path.
                    along = seg[0] * wall.dirp[0] + seg[1] * wall.dirp[1]
                    t_base = v[0] * seg[0] + v[1] * seg[1]
                    if along > 0 or t_base > 0:
                        raise GeneralityError(
                            f"broken-line segment runs along a wall at "
                            f"{point}")
                continue
            t = Fraction(wedge(v, wall.dirp), den)
            s = Fraction(wedge(v, seg), den)
            if t <= 0 or s < 0:
                continue
            if s == 0:
                raise GeneralityError(
                    f"broken line meets the base point of a wall at "
                    f"{wall.base}")
            crossings.append((t, wall))
        crossings.sort(key=lambda tw: tw[0])
        for (t1, w1), (t2, w2) in zip(crossings, crossings[1:]):
            if t1 == t2 and wedge(w1.dirp, w2.dirp) != 0:
                cross = (point[0] + t1 * seg[0], point[1] + t1 * seg[1])
                raise GeneralityError(
                    f"two non-parallel walls meet a broken-line segment at "
                    f"the same point {cross}: wall {w1.base}/{w1.dirp}"
                    f"/{w1.xexp}/{w1.u} and wall {w2.base}/{w2.dirp}"
                    f"/{w2.xexp}/{w2.u}, segment from {point}")
        for t, wall in crossings:
            w_prev = tuple(a - b for a, b in zip(w, wall.xexp))
            if max(w_prev) == 0 or proj(w_prev) == (0, 0):
                continue
            e = abs(wedge(wall.dirp, proj(w_prev)))
            if e == 0:
                continue
            pt = (point[0] + t * seg[0], point[1] + t * seg[1])
            trace(pt, w_prev, acc * e * wall.coeff,
                  upts | {i for i, _ in wall.u}, uset | set(wall.u), root,
                  bends + ((pt, wall),))

    if roots is None:
        roots = [(a, b, c)
                 for a in range(xcap + 1)
                 for b in range(xcap + 1)
                 for c in range(xcap + 1)
                 if (a, b, c) != (0, 0, 0) and proj((a, b, c)) != (0, 0)]
    for root in roots:
        if max(root) > xcap or proj(root) == (0, 0):
            continue
        trace(endpoint, root, Fraction(1), frozenset(), frozenset(), root, ())

    return results


def potential_series(diagram, endpoint, cfg, exclude_origin=None,
                     allowed_u=None, max_udeg=None):
    """Landau-Ginzburg potential at a point, as a :class:`Series`.

    Sums the final monomials of all broken lines ending at ``endpoint``,
    including the three straight lines ``x0 + x1 + x2``.
    """
    from .coeffring import Series, make_key

    terms = broken_line_terms(diagram.walls, endpoint, cfg.xcap,
                              exclude_origin=exclude_origin,
                              allowed_u=allowed_u, max_udeg=max_udeg)
    out = Series.zero(cfg)
    for c, w, u in terms:
        key = make_key(x=w, u=u)
        out.terms[key] = out.terms.get(key, Fraction(0)) + c
    return out


def enumerate_broken_lines(diagram, endpoint, exclude_origin=None, xcap=None,
                           allowed_u=None, max_udeg=None, exclude_walls=()):
    """Complete list of :class:`BrokenLine` ending at ``endpoint``.

    ``exclude_origin`` drops the walls emanating from one marked point,
    which is required when the endpoint is that point.
    """
    if xcap is None:
        xcap = diagram.xcap
    usable = _usable_walls(diagram.walls, exclude_origin, allowed_u,
                           max_udeg, exclude_walls=exclude_walls)
    return _trace_lines(usable, endpoint, xcap)


def semirigid_disks_at(diagram, x, exclude_origin=None, xcap=None,
                       allowed_u=None, exclude_walls=()):
    """Tropical disks with endpoint ``x``, one per broken line.

    Realizes the bijection sending a broken line to the disk whose
    monomial is the line's final term.
    """
    records = []
    for line in enumerate_broken_lines(diagram, x, exclude_origin, xcap,
                                       allowed_u, exclude_walls=exclude_walls):
        c, w, u = line.monomials[-1]
        d = proj(w)
        records.append(SemirigidDiskRecord(
            endpoint=x, mono=(c, w, u), direction=(-d[0], -d[1]),
            u_support=frozenset(i for i, _ in u), degree=sum(w)))
    return records


def potential_W_k0(diagram, endpoint, cfg, exclude_origin=None,
                   allowed_u=None):
    """Undressed potential: sum of final broken-line monomials at a point.

    Restricts to ``x0 + x1 + x2`` when all u-variables are set to zero.
    """
    return potential_series(diagram, endpoint, cfg,
                            exclude_origin=exclude_origin,
                            allowed_u=allowed_u)


def potential_W_kmbar(diagram, endpoint, cfg, exclude_origin=None,
                      allowed_u=None):
    """Dressed potential ``y0 + t_hat(W)`` at truncation ``cfg.mbar``."""
    from .coeffring import Series, make_key, t_hat

    w0 = potential_W_k0(diagram, endpoint, cfg,
                        exclude_origin=exclude_origin, allowed_u=allowed_u)
    return Series.monomial(cfg, make_key(y0=1), Fraction(1)) + t_hat(w0)


def exp_potential_triples(diagram, x, cfg, exclude_origin=None,
                          allowed_u=None, max_factors=None,
                          exclude_walls=()):
    """``exp((W - W_basic) / hbar)`` truncated in the coefficient ring.

    Each term is ``hbar**(-n)`` times a product of ``n`` semirigid-disk
    monomials at ``x`` with pairwise disjoint u-supports; ``max_factors``
    caps ``n``.
    """
    from .coeffring import Series, make_key

    terms = broken_line_terms(diagram.walls, x, cfg.xcap,
                              exclude_origin=exclude_origin,
                              allowed_u=allowed_u,
                              exclude_walls=exclude_walls)
    w = Series.zero(cfg)
    for c, xexp, u in terms:
        if not u:
            continue
        key = make_key(x=xexp, u=u)
        w.terms[key] = w.terms.get(key, Fraction(0)) + c
    return w.exp_truncated(hbar_shift=-1, max_factors=max_factors)
