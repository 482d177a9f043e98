"""Leverage locomotion: rolling driven by the weight of extended poles.

The extended poles are lumped into a point mass ``m_lever`` at distance ``r_c``
from the centre. The lever angle ``zeta`` lives in (pi, 2*pi); positive
torque and positive ``a_h`` point in the intended rolling direction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .types import AccelTriple, ForceSplit, ParameterError, PoleParams, SphereParams

TWO_PI = 2.0 * math.pi
_THREE_HALF_PI = 1.5 * math.pi


class UnreachableGuarantee(ArithmeticError):
    """No friction coefficient in [0, 1] guarantees forward motion."""


def _trig(zeta: float) -> tuple[float, float]:
    """sin and cos of a lever angle, evaluated about 3*pi/2.

    Makes cos vanish exactly at the pole-straight-down angle so the sign of the
    direct translation term is not decided by rounding noise there.
    """
    if not math.pi < zeta < TWO_PI:
        raise ParameterError(f"lever angle must lie in (pi, 2*pi), got {zeta!r}")
    d = zeta - _THREE_HALF_PI
    return -math.cos(d), math.sin(d)


def _check_mu(mu_rs: float) -> None:
    if not 0.0 <= mu_rs <= 1.0:
        raise ParameterError(f"mu_rs must lie in [0, 1], got {mu_rs!r}")


@dataclass(frozen=True)
class LeverageTorques:
    tau_n: float
    tau_fr2: float

    @property
    def tau_r(self) -> float:
        return self.tau_n - self.tau_fr2


def split_gravity(F_g: float, zeta: float) -> ForceSplit:
    """Lever weight into (F_r, F_n) = F_g * (-cos, -sin)."""
    if not F_g >= 0:
        raise ParameterError(f"F_g must be >= 0, got {F_g!r}")
    s, c = _trig(zeta)
    return ForceSplit(-c * F_g, -s * F_g)


def leverage_torques(zeta: float, m_lever: float, sphere: SphereParams,
                     pole: PoleParams, mu_rs: float) -> LeverageTorques:
    pole.check_against(sphere)
    _check_mu(mu_rs)
    s, c = _trig(zeta)
    F_g = m_lever * sphere.g
    tau_n = pole.r_c * (-s) * F_g
    tau_fr2 = sphere.r_m * mu_rs * s * c * F_g
    return LeverageTorques(tau_n, tau_fr2)


def leverage_accels(zeta: float, sphere: SphereParams, pole: PoleParams,
                    mu_rs: float) -> AccelTriple:
    pole.check_against(sphere)
    _check_mu(mu_rs)
    s, c = _trig(zeta)
    F_g = pole.m_lever * sphere.g
    arm = pole.r_c + sphere.r_m * mu_rs * c
    omega_dot = -s * F_g / sphere.I * arm
    a_direct = s * c * sphere.g * (mu_rs - 1.0) * pole.m_lever / sphere.m_robot
    a_rotation = -mu_rs * TWO_PI * s * F_g / sphere.I * arm
    return AccelTriple(0.0, a_direct + a_rotation, omega_dot)


def forward_margin(zeta: float, mu_rs: float, sphere: SphereParams,
                   pole: PoleParams) -> float:
    """Rotation-driven minus direct term of the forward-motion inequality.

    Non-negative exactly when ``a_h >= 0``; independent of g and m_lever.
    """
    _, c = _trig(zeta)
    rot = mu_rs * TWO_PI / sphere.I * (pole.r_c + sphere.r_m * mu_rs * c)
    direct = c * (mu_rs - 1.0) / sphere.m_robot
    return rot - direct


def forward_guarantee(zeta: float, mu_rs: float, sphere: SphereParams,
                      pole: PoleParams) -> bool:
    pole.check_against(sphere)
    _check_mu(mu_rs)
    return forward_margin(zeta, mu_rs, sphere, pole) >= 0.0


def _margin_at_pi(mu: float, sphere: SphereParams, pole: PoleParams) -> float:
    # cos(pi) = -1 substituted; the worst case over (pi, 2*pi) is its left end
    return (mu * TWO_PI / sphere.I * (pole.r_c - sphere.r_m * mu)
            - (1.0 - mu) / sphere.m_robot)


def min_friction_for_forward(sphere: SphereParams, pole: PoleParams,
                             tol: float = 1e-9) -> float:
    """Smallest ``mu_rs`` that keeps ``a_h >= 0`` over the whole lever range.

    The forward margin is affine in cos(zeta) with a non-negative slope, so
    zeta -> pi is the binding angle. The threshold is bracketed on [0, 1] and
    found by bisection; the returned value is the upper end of the final
    bracket so it always satisfies the guarantee.
    """
    pole.check_against(sphere)
    lo, hi = 0.0, 1.0
    f_lo = _margin_at_pi(lo, sphere, pole)
    if f_lo >= 0:
        return 0.0
    if _margin_at_pi(hi, sphere, pole) < 0:
        raise UnreachableGuarantee("forward motion cannot be guaranteed for any mu_rs in [0, 1]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _margin_at_pi(mid, sphere, pole) < 0:
            lo = mid
        else:
            hi = mid
    return hi
