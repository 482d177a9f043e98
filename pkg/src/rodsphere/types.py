"""Parameter, state and result types shared by every locomotion regime.

All types are frozen dataclasses. Range checks run in ``__post_init__`` so an
invalid value can never be constructed. Angles are radians throughout.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

EARTH_GRAVITY = 9.81
MOON_GRAVITY = 1.62


class ParameterError(ValueError):
    """Raised when a parameter or argument lies outside its physical domain."""


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ParameterError(msg)


def _finite(name: str, value: float) -> None:
    _require(math.isfinite(value), f"{name} must be finite, got {value!r}")


def solid_sphere_inertia(m_robot: float, r_m: float) -> float:
    """Moment of inertia of a homogeneous solid ball, (2/5) m r^2."""
    _require(m_robot > 0, f"m_robot must be > 0, got {m_robot!r}")
    _require(r_m > 0, f"r_m must be > 0, got {r_m!r}")
    return 0.4 * m_robot * r_m**2


@dataclass(frozen=True)
class SphereParams:
    """Shell radius [m], total mass [kg], scalar inertia [kg m^2], gravity [m/s^2]."""

    r_m: float
    m_robot: float
    I: float
    g: float = EARTH_GRAVITY

    def __post_init__(self):
        for name in ("r_m", "m_robot", "I", "g"):
            value = getattr(self, name)
            _finite(name, value)
            _require(value > 0, f"{name} must be > 0, got {value!r}")

    @classmethod
    def solid(cls, r_m: float, m_robot: float, g: float = EARTH_GRAVITY) -> "SphereParams":
        return cls(r_m=r_m, m_robot=m_robot, I=solid_sphere_inertia(m_robot, r_m), g=g)


@dataclass(frozen=True)
class PoleParams:
    """Telescopic pole description.

    ``l_max`` is the extension beyond the shell, ``l_dot_max`` the extension
    speed limit, ``F_p`` the pushing force, ``m_lever`` the lumped mass of the
    extended poles and ``r_c`` its distance from the sphere centre.
    """

    l_max: float
    l_dot_max: float
    F_p: float = 0.0
    m_lever: float = 0.0
    r_c: float = math.inf

    def __post_init__(self):
        for name in ("l_max", "l_dot_max", "F_p", "m_lever"):
            _finite(name, getattr(self, name))
        _require(self.l_max > 0, f"l_max must be > 0, got {self.l_max!r}")
        _require(self.l_dot_max > 0, f"l_dot_max must be > 0, got {self.l_dot_max!r}")
        _require(self.F_p >= 0, f"F_p must be >= 0, got {self.F_p!r}")
        _require(self.m_lever >= 0, f"m_lever must be >= 0, got {self.m_lever!r}")
        _require(not math.isnan(self.r_c) and self.r_c > 0, f"r_c must be > 0, got {self.r_c!r}")

    def check_against(self, sphere: SphereParams) -> None:
        """Check the lever mass sits outside the shell (r_c > r_m)."""
        _require(math.isfinite(self.r_c), "r_c must be set for the leverage regime")
        _require(self.r_c > sphere.r_m,
                 f"r_c must exceed r_m ({self.r_c!r} <= {sphere.r_m!r})")


@dataclass(frozen=True)
class FrictionParams:
    """Sphere-ground (friction + rolling resistance) and pole-tip coefficients."""

    mu_rs: float = 1.0
    mu_s_pole: float = 1.0

    def __post_init__(self):
        for name in ("mu_rs", "mu_s_pole"):
            value = getattr(self, name)
            _finite(name, value)
            _require(0.0 <= value <= 1.0, f"{name} must lie in [0, 1], got {value!r}")


@dataclass(frozen=True)
class MotionState:
    zeta: float = 0.0
    omega: float = 0.0
    x: float = 0.0
    v_h: float = 0.0
    z: float = 0.0
    v_v: float = 0.0
    t: float = 0.0

    def __post_init__(self):
        for name in ("zeta", "omega", "x", "v_h", "z", "v_v", "t"):
            _finite(name, getattr(self, name))

    def as_tuple(self) -> tuple[float, ...]:
        return (self.t, self.zeta, self.omega, self.x, self.v_h, self.z, self.v_v)


@dataclass(frozen=True)
class AccelTriple:
    """Right-hand side shared by all regimes: vertical, horizontal, angular."""

    a_v: float
    a_h: float
    omega_dot: float

    def __post_init__(self):
        for name in ("a_v", "a_h", "omega_dot"):
            _finite(name, getattr(self, name))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a_v, self.a_h, self.omega_dot)


@dataclass(frozen=True)
class ForceSplit:
    """Two orthogonal components of a force.

    Field meaning depends on the decomposition: (F_r', F_n) for the obstacle
    reaction, (F_r, F_s) for the slipping push, (F_r, F_n) for the lever weight.
    """

    radial: float
    tangential: float

    @property
    def magnitude(self) -> float:
        return math.hypot(self.radial, self.tangential)


class LeverArmConvention(enum.Enum):
    """How the pole lever torque enters the variable-friction pushing model.

    ``CONSISTENT`` uses the lever arm r_m / cos(zeta) of the slip model so
    both friction limits reduce to the no-slip and full-slip systems.
    ``VERBATIM`` reproduces the published final system term by term.
    """

    VERBATIM = "verbatim"
    CONSISTENT = "consistent"

    @classmethod
    def parse(cls, value: "str | LeverArmConvention") -> "LeverArmConvention":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ParameterError(
                f"unknown convention {value!r}; expected 'verbatim' or 'consistent'"
            ) from None
