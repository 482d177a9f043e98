"""Dynamics of a spherical robot driven by telescopic rods.

Pushing (pinned tip, full slip, variable friction) and leverage models,
pole geometry, fixed-step integration and the analyses built on them.
"""
from .types import (AccelTriple, EARTH_GRAVITY, ForceSplit, FrictionParams,
                    LeverArmConvention, MOON_GRAVITY, MotionState, ParameterError,
                    PoleParams, SphereParams, solid_sphere_inertia)

__version__ = "0.1.0"

__all__ = [
    "AccelTriple", "EARTH_GRAVITY", "ForceSplit", "FrictionParams", "LeverArmConvention",
    "MOON_GRAVITY", "MotionState", "ParameterError", "PoleParams", "SphereParams",
    "solid_sphere_inertia",
]
