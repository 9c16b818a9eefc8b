"""Particle layer: embedding, no-perturbation outcomes, conditional probabilities.

The particle's hemisphere fixes the outcome only along the field's
no-perturbation axis ``u``.  Along any other axis ``b`` the F_alpha fields
admit the conditional law

    P(eps_b = +1 | r in Sigma_{+u}) = cos^2((theta_u - theta_b) / 2)
    P(eps_b = +1 | r in Sigma_{-u}) = sin^2((theta_u - theta_b) / 2)

whose hemisphere-weighted sum is 1/2 for every ``b``.  The printed form
shifts the minus branch by pi instead of pi/2; that variant is kept behind
``literal=True`` because its weighted sum is ``cos^2`` rather than 1/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .field import FieldSuperposition
from .geometry import Axis, Hemisphere, SurfacePoint, contains

__all__ = [
    "Particle",
    "ConditionalSpec",
    "embedded_ok",
    "elementary_outcome",
    "alpha_conditional",
    "alpha_conditional_array",
    "consistency_check",
]


@dataclass(frozen=True)
class Particle:
    position: SurfacePoint


@dataclass(frozen=True)
class ConditionalSpec:
    u: Axis
    b: Axis
    branch: int  # +1: particle in Sigma_{+u}, -1: in Sigma_{-u}

    def __post_init__(self) -> None:
        if self.branch not in (1, -1):
            raise ValueError(f"branch must be +1 or -1, got {self.branch!r}")


def embedded_ok(f: FieldSuperposition, p: Particle) -> bool:
    """The particle must sit inside the closed support of some nonzero term."""
    return any(c != 0 and contains(bf.support, p.position) for c, bf in f.terms)


def elementary_outcome(u: Axis, p: Particle) -> int:
    return 1 if contains(Hemisphere(u), p.position) else -1


def _branch_shift(branch, literal: bool):
    # corrected: pi/2 on the minus branch; printed: pi
    scale = 0.5 * math.pi if literal else 0.25 * math.pi
    return scale * (1 - branch)


def alpha_conditional(spec: ConditionalSpec, literal: bool = False) -> float:
    """Probability of ``eps_b = +1`` given the particle's hemisphere relative to ``u``."""
    half = 0.5 * (spec.u.theta - spec.b.theta)
    return math.cos(half + _branch_shift(spec.branch, literal)) ** 2


def alpha_conditional_array(
    u_theta, b_theta, branch, literal: bool = False
) -> np.ndarray:
    """Vectorised :func:`alpha_conditional` over arrays of angles and branches."""
    half = 0.5 * (np.asarray(u_theta) - np.asarray(b_theta))
    return np.cos(half + _branch_shift(np.asarray(branch), literal)) ** 2


def consistency_check(u: Axis, b: Axis, literal: bool = False) -> float:
    """|sum over hemispheres of P(eps_b=+1 | branch) P(branch) - 1/2| with uniform particles."""
    total = sum(
        0.5 * alpha_conditional(ConditionalSpec(u, b, s), literal=literal) for s in (1, -1)
    )
    return abs(total - 0.5)
