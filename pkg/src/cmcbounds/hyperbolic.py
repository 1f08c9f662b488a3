"""Hyperbolic plane in the hyperboloid model of Lorentz-Minkowski 3-space.

Points satisfy <x, x>_L = -1 with x3 > 0, where
<u, v>_L = u1 v1 + u2 v2 - u3 v3. The tangent plane at x is the Lorentz
orthogonal complement of x. All functions work in curvature -1 unless a
curvature ``K1 < 0`` is passed explicitly.

Orientation: the quarter turn R at a point x is ``R v = x (x)_L v``
(Lorentz cross product, see :func:`lorentz_cross`). At (0, 0, 1) it sends
(1, 0, 0) to (0, 1, 0). Geodesic curvature of a unit-speed curve alpha is
signed against R alpha', so along a curve with kappa < 0 the normal
R alpha' points to the non-convex side, and equidistant curves are pushed
in that direction.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

ON_HYPERBOLOID_TOL = 1e-12
TANGENCY_TOL = 1e-12
UNIT_TOL = 1e-10

_J = np.array([1.0, 1.0, -1.0])


class DomainError(ValueError):
    """Raised when an input lies outside the domain of a formula."""


def lorentz_inner(u, v):
    """u1 v1 + u2 v2 - u3 v3, broadcasting over leading axes."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.sum(u * v * _J, axis=-1)


def lorentz_norm(v) -> float:
    """Length of a spacelike vector."""
    q = float(lorentz_inner(v, v))
    if q <= 0:
        raise DomainError(f"vector is not spacelike (<v, v>_L = {q:.3e})")
    return q**0.5


def lorentz_cross(u, v) -> np.ndarray:
    """Vector w with <w, a>_L = det(u, v, a) for all a; Lorentz-orthogonal to u and v."""
    return np.cross(np.asarray(u, dtype=float), np.asarray(v, dtype=float)) * _J


def _scale(x) -> float:
    return max(1.0, float(np.dot(x, x)))


@dataclass(frozen=True)
class HyperbolicPoint:
    """A point of the upper sheet of the hyperboloid."""

    position: np.ndarray

    def __post_init__(self):
        x = np.array(self.position, dtype=float).reshape(3)
        x.setflags(write=False)
        object.__setattr__(self, "position", x)
        # rounding in <x, x>_L grows like |x|^2 far from the vertex
        if abs(lorentz_inner(x, x) + 1.0) > ON_HYPERBOLOID_TOL * _scale(x) or x[2] <= 0:
            raise DomainError(f"{x} is not on the hyperboloid <x, x>_L = -1, x3 > 0")

    @classmethod
    def origin(cls) -> "HyperbolicPoint":
        return cls(np.array([0.0, 0.0, 1.0]))

    @classmethod
    def from_plane(cls, a: float, b: float) -> "HyperbolicPoint":
        """Lift (a, b) to (a, b, sqrt(1 + a^2 + b^2))."""
        return cls(np.array([a, b, np.sqrt(1.0 + a * a + b * b)]))


@dataclass(frozen=True)
class TangentVector:
    """A vector tangent to the hyperboloid at ``base``."""

    base: HyperbolicPoint
    direction: np.ndarray

    def __post_init__(self):
        w = np.array(self.direction, dtype=float).reshape(3)
        w.setflags(write=False)
        object.__setattr__(self, "direction", w)
        x = self.base.position
        if abs(lorentz_inner(x, w)) > TANGENCY_TOL * _scale(x) * max(1.0, np.linalg.norm(w)):
            raise DomainError(f"{w} is not tangent at {x}")

    @property
    def norm(self) -> float:
        return lorentz_norm(self.direction)

    @classmethod
    def project(cls, base: HyperbolicPoint, w) -> "TangentVector":
        """Tangential part of an arbitrary ambient vector ``w`` at ``base``."""
        x = base.position
        w = np.asarray(w, dtype=float)
        return cls(base, w + lorentz_inner(w, x) * x)


def _point(x) -> HyperbolicPoint:
    return x if isinstance(x, HyperbolicPoint) else HyperbolicPoint(x)


def _tangent(x: HyperbolicPoint, v) -> TangentVector:
    if isinstance(v, TangentVector):
        if not np.allclose(v.base.position, x.position, rtol=0, atol=1e-12 * _scale(x.position)):
            raise DomainError("tangent vector is based at a different point")
        return v
    return TangentVector(x, v)


def geodesic(x, v, t: float) -> HyperbolicPoint:
    """gamma(t) = cosh(|v| t) x + sinh(|v| t) / |v| * v."""
    x = _point(x)
    v = _tangent(x, v)
    speed = _speed(v)
    a = speed * t
    return HyperbolicPoint(np.cosh(a) * x.position + np.sinh(a) / speed * v.direction)


def geodesic_velocity(x, v, t: float) -> TangentVector:
    """Derivative of :func:`geodesic` with respect to t."""
    x = _point(x)
    v = _tangent(x, v)
    speed = _speed(v)
    a = speed * t
    gamma = HyperbolicPoint(np.cosh(a) * x.position + np.sinh(a) / speed * v.direction)
    return TangentVector(gamma, speed * np.sinh(a) * x.position + np.cosh(a) * v.direction)


def _speed(v: TangentVector) -> float:
    q = float(lorentz_inner(v.direction, v.direction))
    if q <= 0.0:
        raise DomainError("geodesic needs a nonzero tangent vector")
    return q**0.5


def parallel_transport(x, v, w, t: float) -> TangentVector:
    """Transport ``w`` along gamma(., x, v) from 0 to t.

    tau(w) = w + <v, w>_L / |v|^2 * (gamma'(t) - v).
    """
    x = _point(x)
    v = _tangent(x, v)
    w = _tangent(x, w)
    speed = _speed(v)
    vel = geodesic_velocity(x, v, t)
    coeff = lorentz_inner(v.direction, w.direction) / speed**2
    return TangentVector(vel.base, w.direction + coeff * (vel.direction - v.direction))


def rotate(tangent: TangentVector) -> TangentVector:
    """Quarter turn R in the tangent plane (orientation fixed in the module docstring)."""
    x = tangent.base.position
    return TangentVector(tangent.base, lorentz_cross(x, tangent.direction))


def jacobi_factor(kappa, t):
    """Length factor f(t) = cosh t - kappa sinh t of the normal geodesic flow.

    It solves f'' = f with f(0) = 1 and f'(0) = -kappa.
    """
    return np.cosh(t) - np.asarray(kappa) * np.sinh(t)


def _check_negative(kappa):
    kappa = np.asarray(kappa, dtype=float)
    if np.any(kappa >= 0):
        raise DomainError("geodesic curvature must be negative")
    return kappa


def equidistant_curvature(kappa, r):
    """Geodesic curvature of the curve pushed a distance r to the non-convex side.

    (kappa - tanh r) / (1 - tanh r * kappa). Only kappa < 0 is accepted; for
    positive curvature the map has a pole at kappa = coth r.
    """
    kappa = _check_negative(kappa)
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("distance r must be nonnegative")
    th = np.tanh(r)
    out = (kappa - th) / (1.0 - th * kappa)
    return float(out) if out.ndim == 0 else out


def equidistant_point(p, tangent, r: float) -> HyperbolicPoint:
    """cosh(r) p + sinh(r) R(tangent) for a unit tangent at p."""
    p = _point(p)
    tangent = _tangent(p, tangent)
    if r < 0:
        raise DomainError("distance r must be nonnegative")
    q = float(lorentz_inner(tangent.direction, tangent.direction))
    if abs(q - 1.0) > UNIT_TOL:
        raise DomainError(f"tangent must be unit spacelike, got <t, t>_L = {q!r}")
    normal = rotate(tangent).direction
    return HyperbolicPoint(np.cosh(r) * p.position + np.sinh(r) * normal)


def hyperbolic_distance(p, q) -> float:
    """arccosh(-<p, q>_L), computed stably for nearby points."""
    p = _point(p).position
    q = _point(q).position
    d = q - p
    # -<p,q> = 1 + <d,d>/2 for points on the hyperboloid; avoids cancellation
    half_chord = max(float(lorentz_inner(d, d)), 0.0) ** 0.5 / 2.0
    return 2.0 * float(np.arcsinh(half_chord))


def hyperbolic_disk_area(r, K1: float = -1.0):
    """Area 2 pi / (-K1) * (cosh(sqrt(-K1) r) - 1) of a disk of radius r."""
    if K1 >= 0:
        raise DomainError("curvature K1 must be negative")
    a = np.sqrt(-K1)
    with np.errstate(over="ignore"):
        return 2.0 * np.pi / (-K1) * (np.cosh(a * np.asarray(r, dtype=float)) - 1.0)


@dataclass(frozen=True)
class BoundaryCurve:
    """A unit-speed curve known through samples (s, kappa(s)), kappa < 0.

    Integrals along the curve use the trapezoid rule, i.e. kappa is taken
    piecewise linear between samples.
    """

    s: np.ndarray
    kappa: np.ndarray

    def __post_init__(self):
        s = np.array(self.s, dtype=float).ravel()
        k = np.array(self.kappa, dtype=float).ravel()
        if s.shape != k.shape or len(s) < 2:
            raise DomainError("need at least two (s, kappa) samples of equal length")
        if s[0] != 0.0:
            raise DomainError("arclength samples must start at s = 0")
        if np.any(np.diff(s) <= 0):
            raise DomainError("arclength samples must be strictly increasing")
        if np.any(k >= 0):
            raise DomainError("geodesic curvature must be negative at every sample")
        s.setflags(write=False)
        k.setflags(write=False)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "kappa", k)

    @property
    def length(self) -> float:
        return float(self.s[-1])

    @classmethod
    def constant(cls, kappa: float, length: float, n: int = 2) -> "BoundaryCurve":
        return cls(np.linspace(0.0, length, n), np.full(n, float(kappa)))

    @classmethod
    def from_function(cls, kappa_fn, length: float, n: int = 401) -> "BoundaryCurve":
        s = np.linspace(0.0, length, n)
        return cls(s, kappa_fn(s))

    @classmethod
    def from_csv(cls, path) -> "BoundaryCurve":
        """Read a CSV file with header ``s,kappa``."""
        with Path(path).open(newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["s", "kappa"]:
                raise DomainError(f"{path}: expected header 's,kappa'")
            rows = [(float(row["s"]), float(row["kappa"])) for row in reader]
        if not rows:
            raise DomainError(f"{path}: no samples")
        s, k = zip(*rows)
        return cls(np.array(s), np.array(k))

    def to_csv(self, path) -> None:
        with Path(path).open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["s", "kappa"])
            for s, k in zip(self.s, self.kappa):
                writer.writerow([repr(float(s)), repr(float(k))])

    def total_curvature(self) -> float:
        """Trapezoid-rule integral of kappa over [0, length]."""
        return float(np.sum(0.5 * (self.kappa[1:] + self.kappa[:-1]) * np.diff(self.s)))

    def scaled(self, factor: float) -> "BoundaryCurve":
        """The same curve after multiplying all lengths by ``factor``."""
        return BoundaryCurve(self.s * factor, self.kappa / factor)


def collar_area(curve: BoundaryCurve, r: float, K1: float = -1.0) -> float:
    """Area swept by the normal geodesics of length r on the non-convex side.

    In curvature K1 = -a^2 the length element along the sweep is
    cosh(a t) - kappa/a sinh(a t), which integrates to

        [(1 - cosh(a r)) * int kappa ds + a * l * sinh(a r)] / a^2.
    """
    if K1 >= 0:
        raise DomainError("curvature K1 must be negative")
    if r < 0:
        raise DomainError("distance r must be nonnegative")
    a = np.sqrt(-K1)
    total = curve.total_curvature()
    return float(((1.0 - np.cosh(a * r)) * total + a * curve.length * np.sinh(a * r)) / a**2)


def collar_area_unit(curve: BoundaryCurve, r: float) -> float:
    """Curvature -1 collar area (1 - cosh r) int kappa ds + l sinh r."""
    if r < 0:
        raise DomainError("distance r must be nonnegative")
    return float((1.0 - np.cosh(r)) * curve.total_curvature() + curve.length * np.sinh(r))


def equidistant_total_curvature(curve: BoundaryCurve, r: float) -> float:
    """Integral of kappa_r |alpha_r'| ds = cosh(r) int kappa ds - l sinh(r), curvature -1."""
    if r < 0:
        raise DomainError("distance r must be nonnegative")
    return float(np.cosh(r) * curve.total_curvature() - np.sinh(r) * curve.length)
