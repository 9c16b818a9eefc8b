"""Single-party hemispherical fields and measurement as field rotation.

A basis field lives on one closed hemisphere, with value proportional to
``r . center`` and a constant phase.  Measuring along ``b`` rotates the
field toward ``+b`` and ``-b``; the amplitude for each outcome is the
average of the rotated field over the half-rotated hemisphere, which for a
basis field centred on ``u`` and an outcome direction ``o`` is
``cos((theta_o - theta_u) / 2)``.  Superpositions add these amplitudes
linearly.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .geometry import (
    Axis,
    Hemisphere,
    SurfacePoint,
    antipode,
    contains,
    hemisphere_grid,
    midpoint_axis,
)

__all__ = [
    "BasisField",
    "FieldSuperposition",
    "MeasurementResult",
    "DegenerateFieldError",
    "hemi_field",
    "evaluate",
    "average_full_dot",
    "average_full_dot_quadrature",
    "measurement_amplitude",
    "measurement_amplitude_quadrature",
    "measure",
    "sequential_measure",
    "enumerate_sequential",
    "rebasis",
    "make_alpha",
    "equivalent",
]

DEGENERATE_NORM = 1e-14


class DegenerateFieldError(ValueError):
    """All measurement amplitudes vanish; the field is not a valid state."""


@dataclass(frozen=True)
class BasisField:
    support: Hemisphere
    phase: float = 0.0

    @property
    def axis(self) -> Axis:
        return self.support.center


@dataclass(frozen=True)
class FieldSuperposition:
    """Finite complex combination ``sum_k c_k F_k`` of basis fields."""

    terms: tuple[tuple[complex, BasisField], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        terms = tuple((complex(c), bf) for c, bf in self.terms)
        if not any(c != 0 for c, _ in terms):
            raise ValueError("field needs at least one term with a nonzero coefficient")
        object.__setattr__(self, "terms", terms)

    def scaled(self, factor: complex) -> FieldSuperposition:
        return FieldSuperposition(tuple((factor * c, bf) for c, bf in self.terms))

    def __add__(self, other: FieldSuperposition) -> FieldSuperposition:
        return FieldSuperposition(self.terms + other.terms)


@dataclass(frozen=True)
class MeasurementResult:
    prob_plus: float
    prob_minus: float
    post_plus: FieldSuperposition
    post_minus: FieldSuperposition

    def prob(self, outcome: int) -> float:
        return self.prob_plus if outcome > 0 else self.prob_minus

    def post(self, outcome: int) -> FieldSuperposition:
        return self.post_plus if outcome > 0 else self.post_minus


def hemi_field(a: Axis, sign: int = +1, phase: float = 0.0) -> FieldSuperposition:
    """Single basis field on the hemisphere centred on ``a`` (``sign=+1``) or ``-a``."""
    center = a if sign > 0 else antipode(a)
    return FieldSuperposition(((1.0, BasisField(Hemisphere(center), phase)),))


def evaluate(f: FieldSuperposition, p: SurfacePoint) -> complex:
    total = 0j
    for c, bf in f.terms:
        if contains(bf.support, p):
            total += c * p.dot(bf.axis) * cmath.exp(1j * bf.phase)
    return total / math.pi


def average_full_dot(b: Axis, region: Hemisphere) -> float:
    """Mean of ``r . b / pi`` over ``region`` (unit sphere)."""
    return math.cos(b.theta - region.center.theta)


def average_full_dot_quadrature(
    b: Axis, region: Hemisphere, n_polar: int = 16, n_azimuth: int = 32
) -> float:
    grid = hemisphere_grid(region, n_polar, n_azimuth)
    bv = b.vector
    return grid.integrate(lambda pts: pts @ bv) / math.pi


def _term_weight(c: complex, bf: BasisField) -> complex:
    return c * cmath.exp(1j * bf.phase)


def measurement_amplitude(f: FieldSuperposition, outcome_axis: Axis) -> complex:
    """Amplitude for the outcome whose direction is ``outcome_axis`` (``b`` or ``antipode(b)``)."""
    return sum(
        _term_weight(c, bf) * math.cos(0.5 * (outcome_axis.theta - bf.axis.theta))
        for c, bf in f.terms
    )


def measurement_amplitude_quadrature(
    f: FieldSuperposition, outcome_axis: Axis, n_polar: int = 16, n_azimuth: int = 32
) -> complex:
    """Same amplitude computed by integrating over each half-rotated hemisphere."""
    total = 0j
    for c, bf in f.terms:
        mid = Hemisphere(midpoint_axis(bf.axis, outcome_axis))
        avg = average_full_dot_quadrature(outcome_axis, mid, n_polar, n_azimuth)
        total += _term_weight(c, bf) * avg
    return total


def _post_field(amp: complex, axis: Axis) -> FieldSuperposition:
    coeff = amp / abs(amp) if abs(amp) > 0 else 1.0
    return FieldSuperposition(((coeff, BasisField(Hemisphere(axis))),))


def measure(f: FieldSuperposition, b: Axis) -> MeasurementResult:
    minus_axis = antipode(b)
    amp_p = measurement_amplitude(f, b)
    amp_m = measurement_amplitude(f, minus_axis)
    wp, wm = abs(amp_p) ** 2, abs(amp_m) ** 2
    norm = wp + wm
    if norm < DEGENERATE_NORM:
        raise DegenerateFieldError(f"measurement norm {norm:.3e} along theta={b.theta}")
    return MeasurementResult(
        prob_plus=wp / norm,
        prob_minus=wm / norm,
        post_plus=_post_field(amp_p, b),
        post_minus=_post_field(amp_m, minus_axis),
    )


def sequential_measure(
    f: FieldSuperposition, axes: Sequence[Axis], rng: np.random.Generator
) -> list[int]:
    if not axes:
        raise ValueError("need at least one measurement axis")
    outcomes = []
    for b in axes:
        res = measure(f, b)
        eps = 1 if rng.random() < res.prob_plus else -1
        outcomes.append(eps)
        f = res.post(eps)
    return outcomes


def enumerate_sequential(
    f: FieldSuperposition, axes: Sequence[Axis]
) -> dict[tuple[int, ...], float]:
    """Exact probability of every outcome path for measurements in the given order."""
    paths: dict[tuple[int, ...], float] = {(): 1.0}
    fields = {(): f}
    for b in axes:
        nxt_p, nxt_f = {}, {}
        for path, p in paths.items():
            if p == 0.0:
                continue
            res = measure(fields[path], b)
            for eps in (1, -1):
                nxt_p[path + (eps,)] = p * res.prob(eps)
                nxt_f[path + (eps,)] = res.post(eps)
        paths, fields = nxt_p, nxt_f
    return paths


def rebasis(f_axis: Axis, u: Axis) -> FieldSuperposition:
    """Field on ``+u`` and ``-u`` equivalent to the single hemisphere field on ``f_axis``."""
    half = 0.5 * (u.theta - f_axis.theta)
    return FieldSuperposition((
        (math.cos(half), BasisField(Hemisphere(u))),
        (math.sin(half), BasisField(Hemisphere(antipode(u)))),
    ))


def make_alpha(u: Axis, sign: int) -> FieldSuperposition:
    """``exp(+-i pi/2) F_{+u} + F_{-u}``: probability 1/2 along every axis."""
    return FieldSuperposition((
        (1j if sign > 0 else -1j, BasisField(Hemisphere(u))),
        (1.0, BasisField(Hemisphere(antipode(u)))),
    ))


def equivalent(
    f1: FieldSuperposition, f2: FieldSuperposition, n_axes: int = 8, tol: float = 1e-12
) -> bool:
    """Whether two fields give the same outcome probabilities along every axis.

    Amplitudes are first-order trigonometric polynomials in the half angle,
    so a handful of axes spread over the circle is decisive.
    """
    if n_axes < 4:
        raise ValueError("need at least 4 probe axes")
    for k in range(n_axes):
        # offset keeps the probes off special angles like 0 and pi/2
        b = Axis(2.0 * math.pi * (k + 0.3183) / n_axes)
        if abs(measure(f1, b).prob_plus - measure(f2, b).prob_plus) > tol:
            return False
    return True
