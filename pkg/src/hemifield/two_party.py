"""Two-particle source: product field, its correlated part, and joint statistics.

The source emits ``F_alpha(u)+`` on wing 1 and ``F_alpha(u)-`` on wing 2 with
antipodal particles (``r2 = -r1``).  The product field splits into
``F_0 + i F_aleph``; only ``F_aleph`` respects the particle correlation and
it alone fixes the joint probabilities.  The same numbers are reached
through the anchored conditional routes, in which the state is rewritten
so that one wing is measured along its no-perturbation axis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .field import BasisField, FieldSuperposition, make_alpha
from .geometry import Axis, Hemisphere, SurfacePoint, antipode
from .subquantum import ConditionalSpec, alpha_conditional

__all__ = [
    "OUTCOMES",
    "TwoPartyField",
    "SourceState",
    "JointSetting",
    "JointDistribution",
    "F0Check",
    "product_field",
    "make_FT",
    "swap_wings",
    "decompose",
    "recombine",
    "joint_amplitude",
    "joint_amplitude_aleph",
    "distribution_from_field",
    "joint_distribution",
    "joint_via_conditional",
    "correlation",
    "marginal",
    "f0_noncontribution_check",
    "source_state",
    "aleph_field",
]

OUTCOMES = (1, -1)
DEFAULT_U = Axis(0.0)


def _idx(eps: int) -> int:
    return 0 if eps > 0 else 1


@dataclass(frozen=True)
class TwoPartyField:
    terms: tuple[tuple[complex, BasisField, BasisField], ...]

    def __post_init__(self) -> None:
        terms = tuple((complex(c), b1, b2) for c, b1, b2 in self.terms)
        if not any(c != 0 for c, _, _ in terms):
            raise ValueError("two-party field needs a nonzero term")
        object.__setattr__(self, "terms", terms)

    def coefficients(self) -> dict[tuple[float, float], complex]:
        """Coefficient per (wing-1 support angle, wing-2 support angle)."""
        out: dict[tuple[float, float], complex] = {}
        for c, b1, b2 in self.terms:
            key = (b1.axis.theta, b2.axis.theta)
            out[key] = out.get(key, 0j) + c * np.exp(1j * (b1.phase + b2.phase))
        return out


@dataclass(frozen=True)
class JointSetting:
    a: Axis
    b: Axis

    @property
    def delta(self) -> float:
        return self.b.theta - self.a.theta

    @classmethod
    def from_degrees(cls, a_deg: float, b_deg: float) -> JointSetting:
        return cls(Axis.from_degrees(a_deg), Axis.from_degrees(b_deg))


@dataclass(frozen=True)
class JointDistribution:
    """``p[i, j]`` with index 0 for outcome +1 and 1 for outcome -1."""

    p: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.p, dtype=float).reshape(2, 2)
        if (p < -1e-15).any():
            raise ValueError(f"negative probability in {p}")
        if abs(p.sum() - 1.0) > 1e-12:
            raise ValueError(f"joint distribution sums to {p.sum()!r}")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    def __call__(self, eps1: int, eps2: int) -> float:
        return float(self.p[_idx(eps1), _idx(eps2)])

    def marginal(self, wing: int) -> tuple[float, float]:
        m = self.p.sum(axis=1) if wing == 1 else self.p.sum(axis=0)
        return float(m[0]), float(m[1])

    @property
    def correlation(self) -> float:
        return float(self.p[0, 0] + self.p[1, 1] - self.p[0, 1] - self.p[1, 0])

    def max_abs_diff(self, other: JointDistribution) -> float:
        return float(np.max(np.abs(self.p - other.p)))

    def as_dict(self) -> dict[str, float]:
        return {
            "p_pp": self(1, 1),
            "p_pm": self(1, -1),
            "p_mp": self(-1, 1),
            "p_mm": self(-1, -1),
        }


@dataclass(frozen=True)
class SourceState:
    """Fixed source configuration; ``x1``/``x2`` are inert lab-frame labels."""

    field: TwoPartyField
    u: Axis
    r1: SurfacePoint
    r2: SurfacePoint
    x1: object = None
    x2: object = None

    def __post_init__(self) -> None:
        if self.r2 != -self.r1:
            raise ValueError("particles must be emitted antipodally (r2 = -r1)")


def source_state(
    u: Axis, r1: SurfacePoint, x1: object = None, x2: object = None
) -> SourceState:
    return SourceState(field=make_FT(u), u=u, r1=r1, r2=-r1, x1=x1, x2=x2)


def product_field(f1: FieldSuperposition, f2: FieldSuperposition) -> TwoPartyField:
    return TwoPartyField(tuple(
        (c1 * c2, b1, b2) for c1, b1 in f1.terms for c2, b2 in f2.terms
    ))


def make_FT(u: Axis = DEFAULT_U) -> TwoPartyField:
    return product_field(make_alpha(u, +1), make_alpha(u, -1))


def swap_wings(f: TwoPartyField) -> TwoPartyField:
    return TwoPartyField(tuple((c, b2, b1) for c, b1, b2 in f.terms))


def _same_direction(t1: float, t2: float) -> bool:
    return abs(math.remainder(t1 - t2, 2.0 * math.pi)) < 1e-12


def decompose(ft: TwoPartyField) -> tuple[TwoPartyField, TwoPartyField]:
    """Split a source field into ``(F_0, F_aleph)`` with ``ft = F_0 + i F_aleph``."""
    if len(ft.terms) != 4:
        raise ValueError(f"expected a 4-term source field, got {len(ft.terms)} terms")
    u = ft.terms[0][1].axis.theta
    same, cross = [], []
    for c, b1, b2 in ft.terms:
        for bf in (b1, b2):
            if not (_same_direction(bf.axis.theta, u)
                    or _same_direction(bf.axis.theta, u - math.pi)):
                raise ValueError("supports are not a +u/-u hemisphere pair")
        (same if _same_direction(b1.axis.theta, b2.axis.theta) else cross).append((c, b1, b2))
    if len(same) != 2 or len(cross) != 2:
        raise ValueError("source field must hold two aligned and two crossed terms")
    return TwoPartyField(tuple(same)), TwoPartyField(tuple((c / 1j, b1, b2) for c, b1, b2 in cross))


def recombine(f0: TwoPartyField, faleph: TwoPartyField) -> TwoPartyField:
    return TwoPartyField(f0.terms + tuple((1j * c, b1, b2) for c, b1, b2 in faleph.terms))


def _outcome_axis(axis: Axis, eps: int) -> Axis:
    return axis if eps > 0 else antipode(axis)


def joint_amplitude(f: TwoPartyField, s: JointSetting, eps1: int, eps2: int) -> complex:
    """Correlated average of a two-party field for the outcome pair ``(eps1, eps2)``."""
    o1 = _outcome_axis(s.a, eps1).theta
    o2 = _outcome_axis(s.b, eps2).theta
    total = 0j
    for c, b1, b2 in f.terms:
        w = c * np.exp(1j * (b1.phase + b2.phase))
        total += (w * math.cos(0.5 * (o1 - b1.axis.theta))
                  * math.cos(0.5 * (o2 - b2.axis.theta)))
    return complex(total)


def joint_amplitude_aleph(u: Axis, s: JointSetting, eps1: int, eps2: int) -> complex:
    mu = antipode(u).theta
    o1 = _outcome_axis(s.a, eps1).theta
    o2 = _outcome_axis(s.b, eps2).theta
    return (math.cos(0.5 * (o1 - u.theta)) * math.cos(0.5 * (o2 - mu))
            - math.cos(0.5 * (o1 - mu)) * math.cos(0.5 * (o2 - u.theta)))


def distribution_from_field(f: TwoPartyField, s: JointSetting) -> JointDistribution:
    w = np.array([[abs(joint_amplitude(f, s, e1, e2)) ** 2 for e2 in OUTCOMES]
                  for e1 in OUTCOMES])
    return JointDistribution(w / w.sum())


def joint_distribution(s: JointSetting, u: Axis = DEFAULT_U) -> JointDistribution:
    w = np.array([[abs(joint_amplitude_aleph(u, s, e1, e2)) ** 2 for e2 in OUTCOMES]
                  for e1 in OUTCOMES])
    return JointDistribution(w / w.sum())


def joint_via_conditional(
    s: JointSetting, anchor: int = 1, literal: bool = False
) -> JointDistribution:
    """Anchored route: the anchor wing is measured along its no-perturbation axis.

    With the state rewritten around the anchor's axis, the anchor outcome is
    the particle's hemisphere (probability 1/2 each); the partner particle
    sits in the opposite hemisphere and its outcome follows the conditional
    law of the partner's F_alpha field.
    """
    if anchor not in (1, 2):
        raise ValueError(f"anchor must be wing 1 or 2, got {anchor!r}")
    anchor_axis, other_axis = (s.a, s.b) if anchor == 1 else (s.b, s.a)
    p = np.zeros((2, 2))
    for e_anchor in OUTCOMES:
        cond = alpha_conditional(
            ConditionalSpec(anchor_axis, other_axis, -e_anchor), literal=literal
        )
        for e_other, q in ((1, cond), (-1, 1.0 - cond)):
            e1, e2 = (e_anchor, e_other) if anchor == 1 else (e_other, e_anchor)
            p[_idx(e1), _idx(e2)] = 0.5 * q
    return JointDistribution(p)


def correlation(s: JointSetting, u: Axis = DEFAULT_U) -> float:
    return joint_distribution(s, u).correlation


def marginal(s: JointSetting, wing: int, u: Axis = DEFAULT_U) -> tuple[float, float]:
    return joint_distribution(s, u).marginal(wing)


@dataclass(frozen=True)
class F0Check:
    aleph_residual: float  # F_aleph distribution vs both anchored routes
    f0_discrepancy: float  # full F_T distribution vs F_aleph distribution
    forbidden_weight: float  # weight the full F_T puts on outcomes aleph forbids

    def ok(self, tol: float = 1e-12) -> bool:
        return self.aleph_residual <= tol


def f0_noncontribution_check(s: JointSetting, u: Axis = DEFAULT_U) -> F0Check:
    aleph = joint_distribution(s, u)
    routes = [joint_via_conditional(s, 1), joint_via_conditional(s, 2)]
    full = distribution_from_field(make_FT(u), s)
    forbidden = float(full.p[aleph.p < 1e-15].sum())
    return F0Check(
        aleph_residual=max(aleph.max_abs_diff(r) for r in routes),
        f0_discrepancy=full.max_abs_diff(aleph),
        forbidden_weight=forbidden,
    )


def aleph_field(u: Axis = DEFAULT_U) -> TwoPartyField:
    return decompose(make_FT(u))[1]

