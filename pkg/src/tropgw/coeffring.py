"""Exact arithmetic in the truncated nilpotent coefficient ring.

Monomials are built from three kinds of variables:

* plane coordinates ``x0, x1, x2`` (exponents capped per component),
* square-zero markers ``u[i][j]`` for point ``i`` in ``1..k`` and order
  ``j`` in ``0..k-1``; any product of two ``u``-factors sharing the same
  point index ``i`` vanishes,
* a marker ``y0`` truncated at exponent ``mbar``, a marker ``y1``
  truncated at ``y1cap`` and a formal unit ``hbar`` (integer exponent of
  either sign).

All coefficients are :class:`fractions.Fraction`; there is no floating
point anywhere in the pipeline.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial


class ConfigMismatch(ValueError):
    """Two series over incompatible ring configurations were combined."""


class PreconditionError(ValueError):
    """An operation was invoked outside its domain of validity."""


@dataclass(frozen=True)
class RingConfig:
    """Truncation data for the coefficient ring.

    ``k``     -- number of movable marked points (bounds ``u`` indices/orders)
    ``mbar``  -- cap on the ``y0`` exponent (``y0**(mbar+1) == 0``)
    ``xcap``  -- per-component cap on the ``x`` exponents
    ``y1cap`` -- cap on the ``y1`` exponent
    """

    k: int
    mbar: int = 0
    xcap: int = 8
    y1cap: int = 0


# A key is ((x0, x1, x2), ((i, j), ...) sorted, y0, y1, hbar).
def make_key(x=(0, 0, 0), u=(), y0=0, y1=0, hbar=0):
    return (tuple(x), tuple(sorted(u)), y0, y1, hbar)


ONE_KEY = make_key()


def key_valid(key, cfg):
    """Whether ``key`` survives in the truncated ring."""
    x, u, y0, y1, hb = key
    if any(e < 0 or e > cfg.xcap for e in x):
        return False
    if y0 < 0 or y0 > cfg.mbar or y1 < 0 or y1 > cfg.y1cap:
        return False
    seen = set()
    for (i, j) in u:
        if i < 1 or i > cfg.k or j < 0 or j > cfg.k - 1:
            return False
        if i in seen:
            return False
        seen.add(i)
    return True


def key_mul(k1, k2, cfg):
    """Product of two monomial keys, or ``None`` if it dies in the ring."""
    x1, u1, a1, b1, h1 = k1
    x2, u2, a2, b2, h2 = k2
    x = (x1[0] + x2[0], x1[1] + x2[1], x1[2] + x2[2])
    if x[0] > cfg.xcap or x[1] > cfg.xcap or x[2] > cfg.xcap:
        return None
    y0 = a1 + a2
    y1 = b1 + b2
    if y0 > cfg.mbar or y1 > cfg.y1cap:
        return None
    if u1 and u2:
        idx1 = {i for (i, _) in u1}
        for (i, _) in u2:
            if i in idx1:
                return None
        u = tuple(sorted(u1 + u2))
    else:
        u = u1 or u2
    return (x, u, y0, y1, h1 + h2)


def u_degree(key):
    """Number of ``u``-factors in the key."""
    return len(key[1])


class Series:
    """Finite linear combination of ring monomials with Fraction coefficients."""

    __slots__ = ("cfg", "terms")

    def __init__(self, cfg, terms=None):
        self.cfg = cfg
        self.terms = {}
        if terms:
            for key, c in terms.items():
                if c != 0 and key_valid(key, cfg):
                    self.terms[key] = Fraction(c)

    @classmethod
    def zero(cls, cfg):
        return cls(cfg)

    @classmethod
    def const(cls, cfg, c):
        return cls(cfg, {ONE_KEY: Fraction(c)})

    @classmethod
    def monomial(cls, cfg, key, c=1):
        return cls(cfg, {key: Fraction(c)})

    def copy(self):
        s = Series(self.cfg)
        s.terms = dict(self.terms)
        return s

    def _check(self, other):
        if self.cfg != other.cfg:
            raise ConfigMismatch(f"{self.cfg} != {other.cfg}")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.cfg == other.cfg and self.terms == other.terms

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        s = Series(self.cfg)
        s.terms = out
        return s

    def __neg__(self):
        s = Series(self.cfg)
        s.terms = {k: -c for k, c in self.terms.items()}
        return s

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        s = Series(self.cfg)
        if c:
            s.terms = {k: v * c for k, v in self.terms.items()}
        return s

    def __mul__(self, other):
        self._check(other)
        cfg = self.cfg
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = key_mul(k1, k2, cfg)
                if key is None:
                    continue
                v = out.get(key, 0) + c1 * c2
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        s = Series(cfg)
        s.terms = out
        return s

    def coeff(self, key):
        return self.terms.get(key, Fraction(0))

    def u_zero(self):
        """Set every ``u``-variable to zero."""
        s = Series(self.cfg)
        s.terms = {k: c for k, c in self.terms.items() if not k[1]}
        return s

    def hbar_shift(self, e):
        """Multiply by ``hbar**e``."""
        s = Series(self.cfg)
        s.terms = {(x, u, y0, y1, hb + e): c
                   for (x, u, y0, y1, hb), c in self.terms.items()}
        return s

    def max_abs_hbar(self):
        return max((abs(k[4]) for k in self.terms), default=0)

    def exp_truncated(self, hbar_shift=-1, max_factors=None):
        """``sum_n self**n * hbar**(n*hbar_shift) / n!``.

        Requires every term to be nilpotent in the truncated ring, i.e. to
        carry a ``u``-factor, a ``y0``/``y1`` factor or positive ``x``-degree;
        a nonzero constant term is rejected.
        """
        for (x, u, y0, y1, _hb) in self.terms:
            if not (u or y0 or y1 or any(x)):
                raise PreconditionError("exp of a series with a constant term")
        shifted = self.hbar_shift(hbar_shift)
        result = Series.const(self.cfg, 1)
        power = Series.const(self.cfg, 1)
        n = 0
        while True:
            n += 1
            if max_factors is not None and n > max_factors:
                break
            power = power * shifted
            if not power:
                break
            result = result + power.scale(Fraction(1, factorial(n)))
        return result

    def grade_by_udeg(self):
        """Split into {u-degree: sub-series}."""
        parts = {}
        for k, c in self.terms.items():
            parts.setdefault(u_degree(k), {})[k] = c
        return {g: Series(self.cfg, t) for g, t in sorted(parts.items())}

    # -- serialization ----------------------------------------------------
    def to_obj(self):
        out = []
        for key in sorted(self.terms):
            x, u, y0, y1, hb = key
            rec = {"x": list(x), "u": [list(p) for p in u], "y0": y0,
                   "hbar": hb, "coeff": str(self.terms[key])}
            if y1:
                rec["y1"] = y1
            out.append(rec)
        return out

    @classmethod
    def from_obj(cls, cfg, obj):
        terms = {}
        for rec in obj:
            key = make_key(tuple(rec["x"]), tuple(tuple(p) for p in rec["u"]),
                           rec["y0"], rec.get("y1", 0), rec["hbar"])
            terms[key] = Fraction(rec["coeff"])
        return cls(cfg, terms)

    def to_json(self):
        return json.dumps(self.to_obj())

    def __repr__(self):
        items = []
        for key in sorted(self.terms):
            x, u, y0, y1, hb = key
            bits = []
            for i, e in enumerate(x):
                if e:
                    bits.append(f"x{i}^{e}" if e > 1 else f"x{i}")
            bits += [f"u[{i},{j}]" for (i, j) in u]
            if y0:
                bits.append(f"y0^{y0}" if y0 > 1 else "y0")
            if y1:
                bits.append(f"y1^{y1}" if y1 > 1 else "y1")
            if hb:
                bits.append(f"h^{hb}")
            mono = "*".join(bits) or "1"
            items.append(f"{self.terms[key]}*{mono}")
        return "Series(" + " + ".join(items) + ")" if items else "Series(0)"


def o_hat(series):
    """First-order shift operator: sends ``u[i][j]`` to ``u[i][j+1]``.

    Acts as a derivation: for each monomial, one ``u``-factor at a time is
    bumped one order up; factors already at the top order are annihilated.
    """
    cfg = series.cfg
    out = {}
    for (x, u, y0, y1, hb), c in series.terms.items():
        for pos, (i, j) in enumerate(u):
            if j + 1 > cfg.k - 1:
                continue
            nu = tuple(sorted(u[:pos] + ((i, j + 1),) + u[pos + 1:]))
            key = (x, nu, y0, y1, hb)
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    s = Series(cfg)
    s.terms = out
    return s


def t_hat(series):
    """``sum_j y0**j / j! * o_hat**j`` truncated at ``j == mbar``."""
    cfg = series.cfg
    result = Series.zero(cfg)
    current = series
    for j in range(cfg.mbar + 1):
        if j > 0:
            current = o_hat(current)
            if not current:
                break
        y0j = Series.monomial(cfg, make_key(y0=j), Fraction(1, factorial(j)))
        result = result + y0j * current
    return result
