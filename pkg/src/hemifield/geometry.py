"""Axes, hemispheres and points on the unit sphere.

All measurement and support directions live in the x-z plane and are
described by a single polar angle measured from +z.  Angles are stored
as given (no reduction modulo 2*pi): the half-angle amplitudes used by the
field layer are 4*pi periodic, so reducing an angle can flip a sign inside
a superposition.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Axis",
    "Hemisphere",
    "SurfacePoint",
    "QuadratureGrid",
    "antipode",
    "midpoint_axis",
    "contains",
    "uniform_sample",
    "uniform_samples",
    "hemisphere_grid",
]


@dataclass(frozen=True)
class Axis:
    """Direction in the x-z plane at polar angle ``theta`` (radians)."""

    theta: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.theta):
            raise ValueError(f"axis angle must be finite, got {self.theta!r}")

    @classmethod
    def from_degrees(cls, deg: float) -> Axis:
        return cls(math.radians(deg))

    @property
    def vector(self) -> np.ndarray:
        return np.array([math.sin(self.theta), 0.0, math.cos(self.theta)])


@dataclass(frozen=True)
class Hemisphere:
    """Closed half-sphere ``{r : r . center >= 0}``."""

    center: Axis

    @property
    def opposite(self) -> Hemisphere:
        return Hemisphere(antipode(self.center))


@dataclass(frozen=True)
class SurfacePoint:
    """Point on the unit sphere."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        norm = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"surface point must be unit length, |r| = {norm!r}")

    @classmethod
    def from_vector(cls, v) -> SurfacePoint:
        v = np.asarray(v, dtype=float)
        v = v / np.linalg.norm(v)
        return cls(float(v[0]), float(v[1]), float(v[2]))

    @classmethod
    def from_angles(cls, polar: float, azimuth: float) -> SurfacePoint:
        s = math.sin(polar)
        return cls(s * math.cos(azimuth), s * math.sin(azimuth), math.cos(polar))

    @classmethod
    def on_axis(cls, a: Axis) -> SurfacePoint:
        return cls(math.sin(a.theta), 0.0, math.cos(a.theta))

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __neg__(self) -> SurfacePoint:
        return SurfacePoint(-self.x, -self.y, -self.z)

    def dot(self, a: Axis) -> float:
        return self.x * math.sin(a.theta) + self.z * math.cos(a.theta)


@dataclass(frozen=True)
class QuadratureGrid:
    """Nodes (rows of ``points``) and positive weights summing to the covered area."""

    points: np.ndarray
    weights: np.ndarray

    def integrate(self, f) -> float:
        """Integrate ``f(points) -> array`` over the grid."""
        return float(np.dot(self.weights, f(self.points)))

    def __len__(self) -> int:
        return len(self.weights)


def antipode(a: Axis) -> Axis:
    # theta - pi, not theta + pi: the two differ in the sign of half-angle
    # amplitudes and only this one keeps field rebasis exact.
    return Axis(a.theta - math.pi)


def midpoint_axis(a: Axis, b: Axis) -> Axis:
    return Axis(0.5 * (a.theta + b.theta))


def contains(h: Hemisphere, p: SurfacePoint) -> bool:
    """Membership with the boundary great circle assigned to ``h``."""
    return p.dot(h.center) >= 0.0


def uniform_samples(rng: np.random.Generator, n: int) -> np.ndarray:
    """``n`` uniform points on the sphere as an ``(n, 3)`` array."""
    z = rng.uniform(-1.0, 1.0, n)
    phi = rng.uniform(0.0, 2.0 * math.pi, n)
    s = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    return np.column_stack((s * np.cos(phi), s * np.sin(phi), z))


def uniform_sample(rng: np.random.Generator) -> SurfacePoint:
    x, y, z = uniform_samples(rng, 1)[0]
    return SurfacePoint.from_vector((x, y, z))


def _rotation_to(a: Axis) -> np.ndarray:
    # rotation about y taking +z onto the axis vector (sin t, 0, cos t)
    c, s = math.cos(a.theta), math.sin(a.theta)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def hemisphere_grid(h: Hemisphere, n_polar: int, n_azimuth: int) -> QuadratureGrid:
    """Product quadrature on ``h`` built in the hemisphere's own polar frame.

    Gauss-Legendre in ``t = cos(polar)`` over [0, 1] times a uniform
    azimuthal rule; exact for polynomials of degree <= 2*n_polar - 1 in t.
    """
    if n_polar < 2 or n_azimuth < 2:
        raise ValueError(f"grid sizes must be >= 2, got ({n_polar}, {n_azimuth})")
    t, wt = np.polynomial.legendre.leggauss(n_polar)
    t = 0.5 * (t + 1.0)
    wt = 0.5 * wt
    phi = (np.arange(n_azimuth) + 0.5) * (2.0 * math.pi / n_azimuth)
    T, PHI = np.meshgrid(t, phi, indexing="ij")
    S = np.sqrt(1.0 - T * T)
    local = np.column_stack((
        (S * np.cos(PHI)).ravel(),
        (S * np.sin(PHI)).ravel(),
        T.ravel(),
    ))
    weights = np.repeat(wt, n_azimuth) * (2.0 * math.pi / n_azimuth)
    points = local @ _rotation_to(h.center).T
    return QuadratureGrid(points=points, weights=weights)
