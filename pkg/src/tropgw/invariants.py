"""Descendent tropical invariants of the plane from scattering diagrams.

An invariant is indexed by a degree ``d``, a tuple ``r`` of descendent
orders at marked points, a count ``m`` of extra point insertions, a
descendent order ``nu`` at the distinguished slot and a class index
``cls`` (0, 1 or 2 for a point, line or fundamental class there).

All invariants of one degree are read off a single series: the
exponential of the dressed Landau-Ginzburg potential at the base point,
with each monomial ``z^w`` weighted by the coefficient ``D_i(d, w)`` of
the oscillatory integral of ``e^{W_basic/hbar} z^w`` over the three
natural cycles.  These weights are rational: the ``alpha``-expansion of
``prod_v Gamma(1+alpha)/Gamma(1+alpha+d-w_v)`` truncated at ``alpha^2``,
which produces the symmetry factors and harmonic-number corrections of
the underlying count of semirigid tropical disks glued at a vertex.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial

from .brokenlines import broken_line_terms
from .coeffring import PreconditionError, RingConfig, Series, make_key, t_hat
from .scattering import build_diagram

SECTORS = {frozenset(): "o",
           frozenset({0}): "rho0", frozenset({1}): "rho1",
           frozenset({2}): "rho2",
           frozenset({0, 1}): "sigma01", frozenset({1, 2}): "sigma12",
           frozenset({0, 2}): "sigma20"}


def harmonic(n):
    """Partial harmonic sum ``1 + 1/2 + ... + 1/n``."""
    return sum((Fraction(1, j) for j in range(1, n + 1)), Fraction(0))


def mult_vertex(level, M):
    """Vertex weight of a pure-ray count ``M = (M0, M1, M2)``, ``M_v >= 0``.

    ``level`` grades by the descendent order spent at the vertex: level 0
    is the plain symmetry factor ``1/prod(M_v!)``; each next level folds
    in harmonic-number corrections.  Equals ``D_level(d, w)`` whenever
    every ``M_v = d - w_v`` is nonnegative.
    """
    if any(mv < 0 for mv in M):
        raise ValueError("mult_vertex needs nonnegative ray counts")
    return d_coeffs(0, tuple(-mv for mv in M))[level]


def _gamma_quotient(M):
    """``Gamma(1+a)/Gamma(1+M+a)`` as ``(c0, c1, c2)`` modulo ``a**3``."""
    if M >= 0:
        f = Fraction(1, factorial(M))
        h = harmonic(M)
        h2 = sum((Fraction(1, j * j) for j in range(1, M + 1)), Fraction(0))
        return (f, -h * f, (h * h + h2) * f / 2)
    # For negative M the quotient is the polynomial a(a-1)...(a+M+1).
    out = [Fraction(1), Fraction(0), Fraction(0)]
    for t in range(-M):
        out = [Fraction(0) if p == 0 else out[p - 1] - t * out[p]
               for p in range(3)]
    return tuple(out)


def d_coeffs(d, w):
    """``(D_0, D_1, D_2)(d, w)`` for an exponent triple ``w``."""
    prod = (Fraction(1), Fraction(0), Fraction(0))
    for v in range(3):
        g = _gamma_quotient(d - w[v])
        prod = (prod[0] * g[0],
                prod[0] * g[1] + prod[1] * g[0],
                prod[0] * g[2] + prod[1] * g[1] + prod[2] * g[0])
    return prod


def sector_of_exponent(d, w):
    """Sector label of an exponent by which components exceed ``d``."""
    over = frozenset(v for v in range(3) if w[v] > d)
    return SECTORS.get(over)


@dataclass(frozen=True)
class DescendentKey:
    """Index of one descendent invariant; ``r`` is sorted descending."""

    d: int
    r: tuple
    m: int
    nu: int
    cls: int

    def __post_init__(self):
        if self.d < 0 or self.m < 0 or self.nu < 0:
            raise ValueError("d, m, nu must be nonnegative")
        if self.cls not in (0, 1, 2):
            raise ValueError("cls must be 0, 1 or 2")
        if any(x < 1 for x in self.r):
            raise ValueError("descendent orders in r must be positive")
        object.__setattr__(self, "r", tuple(sorted(self.r, reverse=True)))

    @property
    def compatible(self):
        """Dimension gate: the invariant vanishes unless this holds."""
        return 3 * self.d - self.nu + self.m - sum(self.r) + self.cls == 2

    def to_obj(self):
        return {"d": self.d, "r": list(self.r), "m": self.m,
                "nu": self.nu, "cls": self.cls}

    @classmethod
    def from_obj(cls, obj):
        return cls(d=obj["d"], r=tuple(obj["r"]), m=obj["m"],
                   nu=obj["nu"], cls=obj["cls"])


@dataclass
class TropResult:
    """Value of one invariant with its per-sector breakdown."""

    key: DescendentKey
    value: Fraction
    sectors: dict

    def to_obj(self):
        return {"key": self.key.to_obj(), "value": str(self.value),
                "sectors": {s: str(v) for s, v in sorted(self.sectors.items())}}


class InvariantContext:
    """Caches diagrams and weighted potential data for one arrangement."""

    def __init__(self, arr):
        self.arr = arr
        self._diagrams = {}
        self._ldata = {}

    def diagram(self, d, max_order, xcap, pruned=False):
        """A cached diagram; ``pruned`` drops three-exceeder walls.

        The pruned diagram computes the same degree-``d`` slot weights
        but is not consistent, so loop checks must use ``pruned=False``.
        """
        key = (d, max_order, xcap, pruned)
        if key not in self._diagrams:
            self._diagrams[key] = build_diagram(
                self.arr, d, xcap=xcap, max_order=max_order,
                exceed_d=d if pruned else None)
        return self._diagrams[key]

    def l_data(self, d, max_order, xcap, mbar, maxfac):
        """Weighted exponential data ``{(sector, u, y0, hb): (D0, D1, D2)}``.

        ``xcap`` caps each exponent component.  The cache is grown
        monotonically when a request needs a deeper ``y0`` truncation or
        more exponential factors.
        """
        key = (d, max_order, xcap)
        stored = self._ldata.get(key)
        if stored is not None and stored[0] >= mbar and stored[1] >= maxfac:
            return stored[2]
        if stored is not None:
            mbar = max(mbar, stored[0])
            maxfac = max(maxfac, stored[1])
        diagram = self.diagram(d, max_order, xcap, pruned=True)
        cfg = RingConfig(k=self.arr.k, mbar=mbar, xcap=xcap)
        # Exponents with more than two components above d never carry a
        # nonzero weight, so drop those endpoint monomials up front.
        roots = [(a, b, c)
                 for a in range(xcap + 1)
                 for b in range(xcap + 1)
                 for c in range(xcap + 1)
                 if sum(1 for e in (a, b, c) if e > d) <= 2]
        terms = broken_line_terms(diagram.walls, self.arr.Q, xcap,
                                  roots=roots)
        w = Series.zero(cfg)
        for c, xexp, u in terms:
            if u:
                mk = make_key(x=xexp, u=u)
                w.terms[mk] = w.terms.get(mk, Fraction(0)) + c
        arg = t_hat(w) + Series.monomial(cfg, make_key(y0=1), Fraction(1))
        exp = arg.exp_truncated(hbar_shift=-1, max_factors=maxfac)
        data = {}
        for (x, u, y0e, _y1, hb), c in exp.terms.items():
            sector = sector_of_exponent(d, x)
            if sector is None:
                continue
            dc = d_coeffs(d, x)
            if not any(dc):
                continue
            slot = (sector, u, y0e, hb - (3 * d - sum(x)))
            old = data.get(slot, (Fraction(0),) * 3)
            data[slot] = tuple(o + c * v for o, v in zip(old, dc))
        self._ldata[key] = (mbar, maxfac, data)
        return data


def tropical_invariant(arr, key, ctx=None, max_order=None):
    """Descendent tropical invariant of the arrangement at ``key``.

    Returns a :class:`TropResult`; incompatible keys give value 0.  The
    final value carries the ``m!`` symmetry factor of the point
    insertions.  ``max_order`` optionally restricts the scattering
    diagram to u-variables of at most that order (it must dominate every
    ``r_l - 1`` of the key; the default is exactly that).
    """
    if len(key.r) > arr.k or (key.r and key.r[0] > arr.k):
        raise PreconditionError(
            f"key {key} needs more marked points than the arrangement has")
    if not key.compatible:
        return TropResult(key, Fraction(0), {})
    if ctx is None:
        ctx = InvariantContext(arr)
    if max_order is None:
        max_order = max(key.r) - 1 if key.r else 0
    u_target = tuple(sorted((l + 1, key.r[l] - 1)
                            for l in range(len(key.r))))
    hb_target = -(key.nu + 2 - key.cls)
    fm = factorial(key.m)
    maxfac = max(1, key.m + len(key.r))

    def slot_at(xcap):
        data = ctx.l_data(key.d, max_order, xcap, key.m, maxfac)
        sectors = {}
        for (sector, u, y0e, hb), dc in data.items():
            if u == u_target and y0e == key.m and hb == hb_target:
                val = dc[key.cls] * fm
                if val:
                    sectors[sector] = sectors.get(sector, Fraction(0)) + val
        return sectors

    # For a point class at the distinguished slot the weight vanishes
    # unless every exponent component is at most d, so that cap is exact.
    # For a line or fundamental class one or two exponent components may
    # exceed d, up to the slot budget |r| + len(r) on the total exponent.
    # The slot value is independent of the cap once every contributing
    # term fits, so walk the cap upward and stop once three consecutive
    # caps agree (adjacent caps can agree by accident before the tail
    # has cancelled); the budget bound guarantees termination.
    if key.cls == 0:
        sectors = slot_at(key.d)
    else:
        hard = max(key.d + 2, sum(key.r) + len(key.r))
        xcap = key.d + 2
        history = [slot_at(xcap)]
        while xcap < hard and not (
                len(history) >= 3 and history[-1] == history[-2]
                and history[-2] == history[-3]):
            xcap += 1
            history.append(slot_at(xcap))
        sectors = history[-1]
    return TropResult(key, sum(sectors.values(), Fraction(0)), sectors)


def check_tropfun(arr, key, ctx=None):
    """Fundamental-class recursion: trading one point insertion.

    The invariant at ``key`` must equal the sum of the invariants with
    ``m`` lowered by one and either one marked-point order or ``nu``
    lowered by one.  Requires ``m >= 1`` and, at degree 0, enough
    insertions for the underlying moduli space to exist.
    """
    if key.m < 1:
        raise PreconditionError("the recursion needs a point insertion")
    if key.d == 0 and len(key.r) + key.m <= 2:
        raise PreconditionError("degree-0 key with too few insertions")
    if ctx is None:
        ctx = InvariantContext(arr)
    lhs = tropical_invariant(arr, key, ctx).value
    rhs = Fraction(0)
    for idx, rl in enumerate(key.r):
        if rl >= 2:
            nr = key.r[:idx] + (rl - 1,) + key.r[idx + 1:]
            sub = DescendentKey(key.d, nr, key.m - 1, key.nu, key.cls)
            rhs += tropical_invariant(arr, sub, ctx).value
    if key.nu >= 1:
        sub = DescendentKey(key.d, key.r, key.m - 1, key.nu - 1, key.cls)
        rhs += tropical_invariant(arr, sub, ctx).value
    return lhs == rhs


def _r_multisets(rmax, length):
    if length == 0:
        yield ()
        return
    for first in range(1, rmax + 1):
        for rest in _r_multisets(first, length - 1):
            yield (first,) + rest


def compatible_keys(k, dmax, numax=4, rmax=None):
    """All gate-compatible keys with at most ``k`` marked points."""
    if rmax is None:
        rmax = k
    keys = []
    for d in range(dmax + 1):
        for n in range(k + 1):
            for r in _r_multisets(min(rmax, k), n):
                for nu in range(numax + 1):
                    for cls in range(3):
                        m = 2 - 3 * d + nu + sum(r) - cls
                        if m >= 0:
                            keys.append(DescendentKey(d, r, m, nu, cls))
    return keys


def invariant_table(arr, dmax, numax=4, ctx=None, rmax=None):
    """Values of every compatible key, as ``{key: Fraction}``."""
    if ctx is None:
        ctx = InvariantContext(arr)
    return {key: tropical_invariant(arr, key, ctx).value
            for key in compatible_keys(arr.k, dmax, numax=numax, rmax=rmax)}


def classical_insertions(key):
    """Insertion list for the matching absolute-invariant computation."""
    ins = [(2, rl - 1) for rl in key.r]
    ins += [(0, 0)] * key.m
    ins.append((2 - key.cls, key.nu))
    return ins


def generating_L(arr, j, dmax, mbar, y1cap, ctx=None):
    """Generating series ``L_j`` over the arrangement's coefficient ring.

    Collects every compatible invariant with one extra point insertion
    against ``hbar**-(nu+1) * y0**m/m! * u_r * exp(d*y1)``, plus the
    degree-0 head terms: ``exp(y0/hbar)`` for ``j = 0`` and the boundary
    tower ``hbar**-1 exp(y0/hbar) sum_l y0**l/l! y2[l]`` for ``j = 2``,
    where ``y2[l]`` stands for the sum of the ``u[i][l]``.
    """
    if ctx is None:
        ctx = InvariantContext(arr)
    k = arr.k
    cfg = RingConfig(k=k, mbar=mbar, xcap=dmax, y1cap=y1cap)
    out = Series.zero(cfg)
    if j == 0:
        for mm in range(mbar + 1):
            out = out + Series.monomial(
                cfg, make_key(y0=mm, hbar=-mm), Fraction(1, factorial(mm)))
    if j == 2:
        for lsub in range(min(mbar, k - 1) + 1):
            for mm in range(mbar - lsub + 1):
                for i in range(1, k + 1):
                    out = out + Series.monomial(
                        cfg, make_key(y0=mm + lsub, u=((i, lsub),),
                                      hbar=-(mm + 1)),
                        Fraction(1, factorial(mm) * factorial(lsub)))
    for d in range(1, dmax + 1):
        for m in range(mbar + 1):
            for n in range(k + 1):
                for pts in combinations(range(1, k + 1), n):
                    for orders in _order_tuples(n, k - 1):
                        r = tuple(o + 1 for o in orders)
                        nu = 3 * d + (m + 1) - sum(r) + j - 2
                        if nu < 0:
                            continue
                        key = DescendentKey(d, r, m + 1, nu, j)
                        val = tropical_invariant(arr, key, ctx).value
                        if not val:
                            continue
                        u = tuple(sorted(zip(pts, orders)))
                        for lp in range(y1cap + 1):
                            out = out + Series.monomial(
                                cfg,
                                make_key(y0=m, u=u, y1=lp, hbar=-(nu + 1)),
                                val * Fraction(d ** lp, factorial(lp))
                                / factorial(m))
    return out


def _order_tuples(n, omax):
    if n == 0:
        yield ()
        return
    for o in range(omax + 1):
        for rest in _order_tuples(n - 1, omax):
            yield (o,) + rest


def t_trop(arr, dmax, mbar, y1cap, ctx=None):
    """The three components of the tropical mirror series.

    ``phi_0 = L0``, ``phi_1 = y1/hbar L0 + L1`` and
    ``phi_2 = y1^2/(2 hbar^2) L0 + y1/hbar L1 + L2``.
    """
    if ctx is None:
        ctx = InvariantContext(arr)
    l0 = generating_L(arr, 0, dmax, mbar, y1cap, ctx)
    l1 = generating_L(arr, 1, dmax, mbar, y1cap, ctx)
    l2 = generating_L(arr, 2, dmax, mbar, y1cap, ctx)
    cfg = l0.cfg
    y1h = Series.monomial(cfg, make_key(y1=1, hbar=-1), Fraction(1))
    y1h2 = Series.monomial(cfg, make_key(y1=2, hbar=-2), Fraction(1, 2))
    return (l0, y1h * l0 + l1, y1h2 * l0 + y1h * l1 + l2)


def hbar_linear_part(series):
    """Coefficient of ``hbar**-1``, as a series with the ``hbar`` removed."""
    out = Series.zero(series.cfg)
    for (x, u, y0, y1, hb), c in series.terms.items():
        if hb == -1:
            out.terms[(x, u, y0, y1, 0)] = c
    return out


def mirror_series_to_ring(mser, cfg, i, dmax):
    """Map a mirror-side series into the coefficient ring.

    Each formal boundary variable of order ``l`` becomes the sum of the
    ``u[i][l]`` over marked points (square-zero products expand the powers
    over distinct points); terms of pinned degree above ``dmax`` and terms
    with leftover bulk variables are dropped.  ``i`` names which mirror
    component the series is, fixing the degree pinning.
    """
    out = Series.zero(cfg)
    for (ty, y0, y1, y2, hb), c in mser.terms.items():
        if any(ty):
            continue
        pinned = i - 1 - y0 + sum(e * (1 + j) for j, e in y2)
        if pinned % 3 or pinned // 3 > dmax or pinned < 0:
            continue
        term = Series.monomial(cfg, make_key(y0=y0, y1=y1, hbar=hb), c)
        for j, e in y2:
            if j > cfg.k - 1:
                term = Series.zero(cfg)
                break
            usum = Series.zero(cfg)
            for pt in range(1, cfg.k + 1):
                usum = usum + Series.monomial(cfg, make_key(u=((pt, j),)),
                                              Fraction(1))
            for _ in range(e):
                term = term * usum
        out = out + term
    return out
