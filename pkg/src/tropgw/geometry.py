"""Exact rational plane geometry: fan data, rays, intersections, arrangements.

All points live in Q^2 (pairs of Fractions); directions are primitive
integer vectors.  The fan of the plane has ray generators
``m0 = (-1, -1)``, ``m1 = (1, 0)``, ``m2 = (0, 1)``.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

FAN = ((-1, -1), (1, 0), (0, 1))  # m0, m1, m2
UNIT = ((1, 0, 0), (0, 1, 0), (0, 0, 1))  # t0, t1, t2 exponents


class GeneralityError(RuntimeError):
    """A computation hit a non-generic coincidence in the arrangement."""


class GenerationError(RuntimeError):
    """Random arrangement generation exhausted its retry budget."""


def wedge(u, v):
    """2x2 determinant ``u[0]*v[1] - u[1]*v[0]``."""
    return u[0] * v[1] - u[1] * v[0]


def proj(x):
    """Image of the exponent triple ``x`` under ``t_i -> m_i``."""
    return (x[1] - x[0], x[2] - x[0])


def primitive(v):
    """Primitive integer vector and lattice index of a nonzero vector."""
    g = gcd(abs(v[0]), abs(v[1]))
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return (v[0] // g, v[1] // g), g


@dataclass(frozen=True)
class Ray:
    """Half-line ``base + t*dir`` (``t >= 0``), or a full line if ``is_line``."""

    base: tuple
    dir: tuple
    is_line: bool = False

    def __post_init__(self):
        p, _ = primitive(self.dir)
        if p != self.dir:
            object.__setattr__(self, "dir", p)


def intersect(r1, r2):
    """Transverse intersection point of two rays in their interiors.

    Returns the point, or ``None`` when the supports are parallel or meet
    outside the open parameter range of either ray.
    """
    d = wedge(r1.dir, r2.dir)
    if d == 0:
        return None
    w = (r2.base[0] - r1.base[0], r2.base[1] - r1.base[1])
    t1 = Fraction(wedge(w, r2.dir), d)
    t2 = Fraction(wedge(w, r1.dir), d)
    if not r1.is_line and t1 <= 0:
        return None
    if not r2.is_line and t2 <= 0:
        return None
    return (r1.base[0] + t1 * r1.dir[0], r1.base[1] + t1 * r1.dir[1])


def on_ray(pt, ray, strict=False):
    """Whether ``pt`` lies on the support of ``ray`` (interior only if strict)."""
    w = (pt[0] - ray.base[0], pt[1] - ray.base[1])
    if wedge(w, ray.dir) != 0:
        return False
    if ray.is_line:
        return True
    t = w[0] * ray.dir[0] + w[1] * ray.dir[1]  # sign of the parameter
    return t > 0 if strict else t >= 0


def sector_of(v):
    """Index ``j`` such that nonzero ``v`` lies in the open cone of ``m_j, m_{j+1}``.

    Returns ``("sigma", j)`` for an interior point, ``("rho", j)`` when ``v``
    is on the ray through ``m_j``, and raises on the zero vector.
    """
    if v == (0, 0) or v == (Fraction(0), Fraction(0)):
        raise ValueError("zero vector has no sector")
    for j in range(3):
        mj = FAN[j]
        mk = FAN[(j + 1) % 3]
        den = wedge(mj, mk)
        a = Fraction(wedge(v, mk), den)
        b = Fraction(wedge(mj, v), den)
        if a > 0 and b > 0:
            return ("sigma", j)
        if a > 0 and b == 0:
            return ("rho", j)
    raise GeneralityError(f"vector {v} not classified by any sector")


@dataclass
class Arrangement:
    """A centre ``Q`` plus ``k`` movable marked points ``P[0..k-1]`` in Q^2."""

    Q: tuple
    P: list
    seed: int | None = None
    general: bool = False

    @property
    def k(self):
        return len(self.P)

    def point(self, l):
        """Marked point with 1-based index ``l``."""
        return self.P[l - 1]

    def to_obj(self):
        return {"k": self.k, "seed": self.seed,
                "Q": [str(self.Q[0]), str(self.Q[1])],
                "P": [[str(p[0]), str(p[1])] for p in self.P]}

    @classmethod
    def from_obj(cls, obj):
        q = (Fraction(obj["Q"][0]), Fraction(obj["Q"][1]))
        ps = [(Fraction(a), Fraction(b)) for a, b in obj["P"]]
        return cls(Q=q, P=ps, seed=obj.get("seed"))

    def to_json(self):
        return json.dumps(self.to_obj())

    @classmethod
    def from_json(cls, text):
        return cls.from_obj(json.loads(text))


def generality_check(arr, dmax=2):
    """Probe an arrangement for the coincidences the pipeline cannot tolerate.

    Builds a probe scattering diagram in strict mode and runs broken-line
    probes at the centre and at each marked point.  Returns
    ``(ok, violations)`` with human-readable violation strings.
    """
    from .scattering import build_diagram, DiagramError
    from .brokenlines import enumerate_broken_lines

    violations = []
    pts = [arr.Q] + list(arr.P)
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            if pts[a] == pts[b]:
                violations.append(f"coincident points {a} and {b}")
    if violations:
        return False, violations
    try:
        diagram = build_diagram(arr, dmax, strict=True)
    except (DiagramError, GeneralityError) as exc:
        return False, [str(exc)]
    try:
        enumerate_broken_lines(diagram, arr.Q)
        for l in range(1, arr.k + 1):
            allowed = {i: arr.k - 1 for i in range(1, arr.k + 1) if i != l}
            enumerate_broken_lines(diagram, arr.point(l), exclude_origin=l,
                                   allowed_u=allowed)
    except GeneralityError as exc:
        return False, [str(exc)]
    return True, []


def generate_arrangement(seed, k, box=4, max_denom=10**6, retries=64,
                         probe_dmax=2):
    """Deterministically sample a general arrangement of ``k`` points.

    Coordinates are fractions with denominator ``max_denom`` inside the
    square ``[-box, box]^2``; candidates failing :func:`generality_check`
    are rejected and resampled, up to ``retries`` attempts.
    """
    rng = random.Random(f"tropgw:{seed}:{k}:{box}:{max_denom}")

    def rand_coord():
        return Fraction(rng.randint(-box * max_denom, box * max_denom), max_denom)

    for _ in range(retries):
        q = (rand_coord(), rand_coord())
        ps = [(rand_coord(), rand_coord()) for _ in range(k)]
        arr = Arrangement(Q=q, P=ps, seed=seed)
        ok, _viol = generality_check(arr, probe_dmax)
        if ok:
            arr.general = True
            return arr
    raise GenerationError(f"no general arrangement after {retries} attempts "
                          f"(seed={seed}, k={k})")
