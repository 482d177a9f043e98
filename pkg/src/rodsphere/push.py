"""Accelerations of the pushing locomotion mode.

Three contact situations are covered:

* obstacle: the pole tip is pinned, only the sphere-ground contact slips
  according to ``mu_rs``;
* full slip: both contacts are frictionless, the pole only spins the sphere;
* friction: the general case with pole-tip coefficient ``mu_s_pole``.

Horizontal translation induced by rotation carries a 2*pi*r_m*omega_dot
coupling in every case.
"""
from __future__ import annotations

import math

from .types import (AccelTriple, ForceSplit, FrictionParams, LeverArmConvention,
                    ParameterError, SphereParams)

TWO_PI = 2.0 * math.pi


def _check(zeta: float, F_p: float) -> None:
    if not 0.0 <= zeta < 0.5 * math.pi:
        raise ParameterError(f"pushing angle must lie in [0, pi/2), got {zeta!r}")
    if not F_p >= 0:
        raise ParameterError(f"F_p must be >= 0, got {F_p!r}")


def _check_mu(name: str, mu: float) -> None:
    if not 0.0 <= mu <= 1.0:
        raise ParameterError(f"{name} must lie in [0, 1], got {mu!r}")


def step(x: float) -> float:
    """Heaviside step with step(0) == 0."""
    return 1.0 if x > 0 else 0.0


def split_obstacle_reaction(F_p: float, zeta: float) -> ForceSplit:
    """Reaction at the centre when the tip is pinned: (F_p sin, F_p cos)."""
    _check(zeta, F_p)
    return ForceSplit(F_p * math.sin(zeta), F_p * math.cos(zeta))


def split_push_force(F_p: float, zeta: float) -> ForceSplit:
    """Push along the pole into ground-normal and slip parts: (F_p cos, F_p sin)."""
    _check(zeta, F_p)
    return ForceSplit(F_p * math.cos(zeta), F_p * math.sin(zeta))


def obstacle_accels(zeta: float, F_p: float, sphere: SphereParams,
                    mu_rs: float) -> AccelTriple:
    _check(zeta, F_p)
    _check_mu("mu_rs", mu_rs)
    s = math.sin(zeta)
    omega_dot = sphere.r_m * mu_rs * s * F_p / sphere.I
    a_direct = s * F_p * (1.0 - mu_rs) / sphere.m_robot
    a_rotation = TWO_PI * sphere.r_m**2 * mu_rs * s * F_p / sphere.I
    return AccelTriple(0.0, a_direct + a_rotation, omega_dot)


def full_slip_accels(zeta: float, F_p: float, sphere: SphereParams) -> AccelTriple:
    """Frictionless ground: the lever force spins the sphere, nothing translates."""
    _check(zeta, F_p)
    c = math.cos(zeta)
    F_e = c * math.sin(zeta) * F_p
    omega_dot = (sphere.r_m / c) * F_e / sphere.I
    return AccelTriple(0.0, 0.0, omega_dot)


def pole_friction(F_p: float, zeta: float, mu_s_pole: float) -> float:
    _check(zeta, F_p)
    _check_mu("mu_s_pole", mu_s_pole)
    return mu_s_pole * math.sin(zeta) * F_p


def lever_force(F_p: float, zeta: float, mu_s_pole: float) -> float:
    """Residual slip force acting perpendicular to the pole."""
    _check(zeta, F_p)
    _check_mu("mu_s_pole", mu_s_pole)
    return math.cos(zeta) * math.sin(zeta) * F_p * (1.0 - mu_s_pole)


def vertical_accel(zeta: float, F_p: float, sphere: SphereParams) -> float:
    """Lift-off acceleration; zero unless the vertical push beats gravity."""
    excess = math.cos(zeta) * F_p / sphere.m_robot - sphere.g
    return excess if step(excess) else 0.0


def friction_push_accels(zeta: float, F_p: float, sphere: SphereParams,
                         fric: FrictionParams,
                         conv: LeverArmConvention = LeverArmConvention.CONSISTENT,
                         ) -> AccelTriple:
    """General pushing model with both contact coefficients.

    In ``VERBATIM`` mode the pole lever term is scaled by cos^2(zeta)/r_m as
    in the published closed form; that version does not reduce to the
    full-slip system when both coefficients vanish. ``CONSISTENT`` mode uses
    the r_m / cos(zeta) lever arm instead.
    """
    _check(zeta, F_p)
    conv = LeverArmConvention.parse(conv)
    mu_rs, mu_p = fric.mu_rs, fric.mu_s_pole
    r_m, I, m = sphere.r_m, sphere.I, sphere.m_robot
    s = math.sin(zeta)
    c = math.cos(zeta)

    a_v = vertical_accel(zeta, F_p, sphere)
    a_direct = (1.0 - mu_rs) * mu_p * s * F_p / m

    if conv is LeverArmConvention.VERBATIM:
        omega_dot = s * F_p / I * (mu_rs * mu_p * r_m + c * c * (1.0 - mu_p) / r_m)
        a_rotation = s * F_p / I * TWO_PI * mu_rs * (mu_rs * mu_p * r_m**2
                                                    + c * c * (1.0 - mu_p))
    else:
        F_s = s * F_p
        tau_sphere = mu_rs * mu_p * F_s * r_m
        tau_lever = (r_m / c) * (c * F_s * (1.0 - mu_p))
        omega_dot = (tau_sphere + tau_lever) / I
        a_rotation = mu_rs * TWO_PI * r_m * omega_dot
    return AccelTriple(a_v, a_rotation + a_direct, omega_dot)
