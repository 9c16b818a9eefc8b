"""Monte Carlo outcome pairs for the field-particle model and a factorizable baseline.

The model sampler follows the anchored route: pick an anchor wing by a fair
coin, read the anchor's outcome off its particle's hemisphere, then draw the
partner's outcome from the conditional law on the opposite hemisphere.  The
baseline lets each wing draw from that same conditional law relative to the
shared source axis, independently; it factorizes and so obeys the CHSH bound.

Reproducibility: a run is split into fixed-size blocks, block ``i`` drawing
from ``SeedSequence(seed, spawn_key=stream_key + (i,))``.  Blocks can be
spread over any number of worker chunks without changing the counts.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .geometry import Axis, SurfacePoint, uniform_samples
from .subquantum import alpha_conditional_array
from .two_party import DEFAULT_U, JointSetting, correlation

__all__ = [
    "TrialRecord",
    "RunStats",
    "ChshResult",
    "UPolicy",
    "sample_batch",
    "naive_batch",
    "sample_pair",
    "naive_baseline_pair",
    "run_experiment",
    "naive_correlation",
    "chsh",
    "TSIRELSON",
    "BELL_BOUND",
]

BLOCK_SIZE = 1 << 16
BELL_BOUND = 2.0
TSIRELSON = 2.0 * math.sqrt(2.0)

# "uniform" draws a fresh source axis per trial; an Axis fixes it
UPolicy = Union[str, Axis]


@dataclass(frozen=True)
class TrialRecord:
    setting: JointSetting
    u: Axis
    r1: SurfacePoint
    epsilon1: int
    epsilon2: int
    anchor: int = 0  # 1 or 2 for the model sampler, 0 for the baseline

    @property
    def r2(self) -> SurfacePoint:
        return -self.r1


def _dot(points: np.ndarray, theta) -> np.ndarray:
    return points[:, 0] * np.sin(theta) + points[:, 2] * np.cos(theta)


def _hemi_sign(d: np.ndarray) -> np.ndarray:
    # boundary belongs to the positive hemisphere
    return np.where(d >= 0.0, 1, -1)


def sample_batch(
    s: JointSetting,
    n: int,
    rng: np.random.Generator,
    anchor: int | None = None,
    literal: bool = False,
) -> dict[str, np.ndarray]:
    """Draw ``n`` model trials; returns arrays ``r1``, ``anchor``, ``eps1``, ``eps2``."""
    r1 = uniform_samples(rng, n)
    coin = rng.random(n)
    v = rng.random(n)
    if anchor is None:
        anchors = np.where(coin < 0.5, 1, 2)
    else:
        anchors = np.full(n, anchor)

    # wing-1 anchor: state rewritten around a
    e1_a = _hemi_sign(_dot(r1, s.a.theta))
    br2 = _hemi_sign(_dot(-r1, s.a.theta))
    p2 = alpha_conditional_array(s.a.theta, s.b.theta, br2, literal)
    e2_a = np.where(v < p2, 1, -1)

    # wing-2 anchor: state rewritten around b
    e2_b = _hemi_sign(_dot(-r1, s.b.theta))
    br1 = _hemi_sign(_dot(r1, s.b.theta))
    p1 = alpha_conditional_array(s.b.theta, s.a.theta, br1, literal)
    e1_b = np.where(v < p1, 1, -1)

    first = anchors == 1
    return {
        "r1": r1,
        "anchor": anchors,
        "eps1": np.where(first, e1_a, e1_b),
        "eps2": np.where(first, e2_a, e2_b),
    }


def naive_batch(
    s: JointSetting, n: int, rng: np.random.Generator, u_policy: UPolicy = "uniform",
    literal: bool = False,
) -> dict[str, np.ndarray]:
    """Factorizable baseline: each wing draws on its own given (u, its hemisphere)."""
    r1 = uniform_samples(rng, n)
    if isinstance(u_policy, Axis):
        u = np.full(n, u_policy.theta)
    elif u_policy == "uniform":
        u = rng.uniform(0.0, 2.0 * math.pi, n)
    else:
        raise ValueError(f"unknown u policy {u_policy!r}")
    v1 = rng.random(n)
    v2 = rng.random(n)
    br1 = _hemi_sign(_dot(r1, u))
    br2 = _hemi_sign(_dot(-r1, u))
    eps1 = np.where(v1 < alpha_conditional_array(u, s.a.theta, br1, literal), 1, -1)
    eps2 = np.where(v2 < alpha_conditional_array(u, s.b.theta, br2, literal), 1, -1)
    return {"r1": r1, "u": u, "eps1": eps1, "eps2": eps2}


def sample_pair(
    s: JointSetting,
    rng: np.random.Generator,
    u: Axis = DEFAULT_U,
    anchor: int | None = None,
    literal: bool = False,
) -> TrialRecord:
    out = sample_batch(s, 1, rng, anchor=anchor, literal=literal)
    return TrialRecord(
        setting=s,
        u=u,
        r1=SurfacePoint.from_vector(out["r1"][0]),
        epsilon1=int(out["eps1"][0]),
        epsilon2=int(out["eps2"][0]),
        anchor=int(out["anchor"][0]),
    )


def naive_baseline_pair(
    s: JointSetting, u_policy: UPolicy, rng: np.random.Generator
) -> TrialRecord:
    out = naive_batch(s, 1, rng, u_policy)
    return TrialRecord(
        setting=s,
        u=Axis(float(out["u"][0])),
        r1=SurfacePoint.from_vector(out["r1"][0]),
        epsilon1=int(out["eps1"][0]),
        epsilon2=int(out["eps2"][0]),
    )


@dataclass(frozen=True)
class RunStats:
    counts: np.ndarray  # [[++, +-], [-+, --]]
    seed: int
    setting: JointSetting | None = None
    label: str = "model"

    @property
    def n(self) -> int:
        return int(self.counts.sum())

    @property
    def joint(self) -> np.ndarray:
        return self.counts / self.n

    @property
    def joint_se(self) -> np.ndarray:
        p = self.joint
        return np.sqrt(p * (1.0 - p) / self.n)

    def marginal(self, wing: int) -> tuple[float, float]:
        m = self.joint.sum(axis=1 if wing == 1 else 0)
        return float(m[0]), float(m[1])

    def marginal_se(self, wing: int) -> float:
        p = self.marginal(wing)[0]
        return math.sqrt(p * (1.0 - p) / self.n)

    @property
    def correlation(self) -> float:
        p = self.joint
        return float(p[0, 0] + p[1, 1] - p[0, 1] - p[1, 0])

    @property
    def correlation_se(self) -> float:
        e = self.correlation
        return math.sqrt(max(1.0 - e * e, 0.0) / self.n)


def _count(eps1: np.ndarray, eps2: np.ndarray) -> np.ndarray:
    i = (eps1 < 0).astype(np.int64)
    j = (eps2 < 0).astype(np.int64)
    return np.bincount(2 * i + j, minlength=4).reshape(2, 2)


def run_experiment(
    s: JointSetting,
    n: int,
    seed: int,
    *,
    chunks: int = 1,
    anchor: int | None = None,
    literal: bool = False,
    baseline: bool = False,
    u_policy: UPolicy = "uniform",
    stream_key: tuple[int, ...] = (),
    block_size: int = BLOCK_SIZE,
) -> RunStats:
    """Aggregate ``n`` trials into counts; identical for any ``chunks``."""
    if n < 1:
        raise ValueError(f"trial count must be >= 1, got {n}")
    if chunks < 1:
        raise ValueError(f"chunks must be >= 1, got {chunks}")
    sizes = [block_size] * (n // block_size)
    if n % block_size:
        sizes.append(n % block_size)

    def run_block(i: int) -> np.ndarray:
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=stream_key + (i,)))
        if baseline:
            out = naive_batch(s, sizes[i], rng, u_policy, literal)
        else:
            out = sample_batch(s, sizes[i], rng, anchor=anchor, literal=literal)
        return _count(out["eps1"], out["eps2"])

    groups = np.array_split(np.arange(len(sizes)), min(chunks, len(sizes)))

    def run_group(idx: np.ndarray) -> np.ndarray:
        return sum((run_block(int(i)) for i in idx), np.zeros((2, 2), dtype=np.int64))

    if len(groups) == 1:
        parts = [run_group(groups[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(groups)) as pool:
            parts = list(pool.map(run_group, groups))
    counts = sum(parts, np.zeros((2, 2), dtype=np.int64))
    return RunStats(counts=counts, seed=seed, setting=s,
                    label="baseline" if baseline else "model")


def naive_correlation(s: JointSetting, u_policy: UPolicy = "uniform") -> float:
    """Closed-form baseline correlation: ``-cos(u-a) cos(u-b)``, averaged if u is uniform."""
    if isinstance(u_policy, Axis):
        return -math.cos(u_policy.theta - s.a.theta) * math.cos(u_policy.theta - s.b.theta)
    return -0.5 * math.cos(s.b.theta - s.a.theta)


@dataclass(frozen=True)
class ChshResult:
    settings: tuple[JointSetting, JointSetting, JointSetting, JointSetting]
    correlations: tuple[float, float, float, float]
    s_value: float
    s_se: float = 0.0
    runs: tuple[RunStats, ...] = field(default_factory=tuple)


def _s_value(e: tuple[float, float, float, float]) -> float:
    e_ab, e_ab2, e_a2b, e_a2b2 = e
    return abs(e_ab - e_ab2) + abs(e_a2b + e_a2b2)


def chsh(
    a: Axis,
    a2: Axis,
    b: Axis,
    b2: Axis,
    mode: str = "analytic",
    n: int = 1_000_000,
    seed: int = 42,
    *,
    baseline: bool = False,
    u_policy: UPolicy = "uniform",
    u: Axis = DEFAULT_U,
    chunks: int = 1,
    literal: bool = False,
) -> ChshResult:
    """``S = |E(a,b) - E(a,b2)| + |E(a2,b) + E(a2,b2)|``."""
    settings = (JointSetting(a, b), JointSetting(a, b2), JointSetting(a2, b), JointSetting(a2, b2))
    if mode == "analytic":
        if baseline:
            es = tuple(naive_correlation(st, u_policy) for st in settings)
        else:
            es = tuple(correlation(st, u) for st in settings)
        return ChshResult(settings, es, _s_value(es))
    if mode != "montecarlo":
        raise ValueError(f"mode must be 'analytic' or 'montecarlo', got {mode!r}")
    runs = tuple(
        run_experiment(st, n, seed, chunks=chunks, baseline=baseline, u_policy=u_policy,
                       literal=literal, stream_key=(k,))
        for k, st in enumerate(settings)
    )
    es = tuple(r.correlation for r in runs)
    se = math.sqrt(sum(r.correlation_se ** 2 for r in runs))
    return ChshResult(settings, es, _s_value(es), se, runs)
