import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hemifield.field import hemi_field, make_alpha
from hemifield.geometry import Axis, SurfacePoint, antipode, uniform_samples
from hemifield.subquantum import (
    ConditionalSpec,
    Particle,
    alpha_conditional,
    alpha_conditional_array,
    consistency_check,
    elementary_outcome,
    embedded_ok,
)
from hemifield.checks import eq42_residuals

angles = st.floats(-4 * math.pi, 4 * math.pi, allow_nan=False)
GRID = 2 * math.pi * np.arange(360) / 360


def test_embedding():
    a = Axis(0.5)
    inside = Particle(SurfacePoint.from_angles(0.6, 0.1))
    assert embedded_ok(hemi_field(a), inside)
    assert not embedded_ok(hemi_field(a), Particle(SurfacePoint.on_axis(antipode(a))))


@given(st.floats(0, math.pi), st.floats(0, 2 * math.pi), angles, st.sampled_from([1, -1]))
def test_alpha_field_embeds_everywhere(polar, az, tu, sign):
    p = Particle(SurfacePoint.from_angles(polar, az))
    assert embedded_ok(make_alpha(Axis(tu), sign), p)


def test_elementary_outcome():
    u = Axis(1.0)
    assert elementary_outcome(u, Particle(SurfacePoint.on_axis(u))) == 1
    assert elementary_outcome(u, Particle(SurfacePoint.on_axis(antipode(u)))) == -1


def test_elementary_outcome_uniform_frequency():
    pts = uniform_samples(np.random.default_rng(11), 1_000_000)
    u = Axis(0.8)
    freq = np.mean([1 if d >= 0 else 0 for d in pts @ u.vector])
    assert abs(freq - 0.5) <= 3 * math.sqrt(0.25 / 1_000_000)


def test_conditional_examples():
    u = Axis(0.3)
    assert alpha_conditional(ConditionalSpec(u, u, 1)) == pytest.approx(1.0)
    assert alpha_conditional(ConditionalSpec(u, u, -1)) == pytest.approx(0.0, abs=1e-15)
    b = Axis(0.3 - math.pi / 2)
    plus = alpha_conditional(ConditionalSpec(u, b, 1))
    minus = alpha_conditional(ConditionalSpec(u, b, -1))
    assert plus == pytest.approx(0.5) and minus == pytest.approx(0.5)
    assert 0.5 * plus + 0.5 * minus == pytest.approx(0.5)


def test_branch_validated():
    with pytest.raises(ValueError):
        ConditionalSpec(Axis(0), Axis(0), 0)


@given(angles, angles)
def test_branches_complementary(tu, tb):
    u, b = Axis(tu), Axis(tb)
    total = alpha_conditional(ConditionalSpec(u, b, 1)) + alpha_conditional(ConditionalSpec(u, b, -1))
    assert total == pytest.approx(1.0, abs=1e-12)


@given(angles, angles, st.sampled_from([1, -1]), st.booleans())
def test_array_matches_scalar(tu, tb, branch, literal):
    spec = ConditionalSpec(Axis(tu), Axis(tb), branch)
    assert float(alpha_conditional_array(tu, tb, branch, literal)) == pytest.approx(
        alpha_conditional(spec, literal), abs=1e-15)


def test_consistency_examples():
    u = Axis(math.pi / 3)
    b = Axis(0.0)
    assert consistency_check(u, b) <= 1e-12
    assert consistency_check(u, b, literal=True) == pytest.approx(0.25, abs=1e-12)
    assert consistency_check(u, u, literal=True) == pytest.approx(0.5, abs=1e-12)


def test_u_equals_b_both_readings_reproduce_elementary_account():
    # with b = u the branch fixes the outcome under either reading
    u = Axis(0.9)
    for literal in (False, True):
        assert alpha_conditional(ConditionalSpec(u, u, 1), literal) == pytest.approx(1.0)
    assert alpha_conditional(ConditionalSpec(u, u, -1)) == pytest.approx(0.0, abs=1e-15)


def test_consistency_grid():
    assert eq42_residuals(GRID, GRID).max() <= 1e-12
    lit = eq42_residuals(GRID, GRID, literal=True)
    U, B = np.meshgrid(GRID, GRID, indexing="ij")
    np.testing.assert_allclose(lit, np.abs(np.cos((U - B) / 2) ** 2 - 0.5), atol=1e-12)


def test_conditional_law_matches_uniform_particle_average():
    # oracle: Monte Carlo over uniform particles, then the conditional law per branch
    rng = np.random.default_rng(4)
    pts = uniform_samples(rng, 400_000)
    u, b = Axis(0.2), Axis(1.4)
    branch = np.where(pts @ u.vector >= 0, 1, -1)
    p = alpha_conditional_array(u.theta, b.theta, branch)
    assert abs(p.mean() - 0.5) <= 3 * math.sqrt(p.var() / len(p))
