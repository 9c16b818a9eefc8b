"""Field-particle model of EPR-correlated spin-1/2 pairs."""
from .geometry import Axis, Hemisphere, SurfacePoint, antipode, midpoint_axis
from .field import (
    BasisField,
    FieldSuperposition,
    hemi_field,
    make_alpha,
    measure,
    rebasis,
    equivalent,
)
from .two_party import JointSetting, JointDistribution, joint_distribution, correlation
from .sampler import chsh, run_experiment

__version__ = "0.1.0"
