"""Pole-extension geometry and the kinematic angular-rate envelope.

The pole leaves the shell radially and touches the ground at angle ``zeta``
from the vertical, so the lever arm from the sphere centre is r_m / cos(zeta)
and the extension beyond the shell is l(zeta) = r_m (sec(zeta) - 1).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .types import ParameterError, PoleParams, SphereParams

HALF_PI = 0.5 * math.pi


class Limit(enum.Enum):
    EXTENSION_SPEED = "extension_speed"
    MAX_LENGTH = "max_length"


@dataclass(frozen=True)
class EnvelopePoint:
    zeta: float
    zeta_dot_max: float
    limited_by: Limit

    def __post_init__(self):
        if not self.zeta_dot_max >= 0:
            raise ParameterError(f"zeta_dot_max must be >= 0, got {self.zeta_dot_max!r}")


def pole_extension_at(zeta: float, r_m: float) -> float:
    """Extension beyond the shell needed to touch the ground at ``zeta``."""
    if not 0.0 <= zeta < HALF_PI:
        raise ParameterError(f"zeta must lie in [0, pi/2), got {zeta!r}")
    if r_m <= 0:
        raise ParameterError(f"r_m must be > 0, got {r_m!r}")
    return r_m * (1.0 / math.cos(zeta) - 1.0)


def max_reach_angle(l_max: float, r_m: float) -> float:
    if l_max <= 0 or r_m <= 0:
        raise ParameterError(f"l_max and r_m must be > 0, got {l_max!r}, {r_m!r}")
    return math.acos(r_m / (r_m + l_max))


def max_angular_rate(zeta: float, l_dot_max: float, r_m: float) -> float:
    """Largest zeta-dot the extension speed allows, l_dot cos^2(zeta) / (r_m sin(zeta)).

    Unbounded as zeta -> 0; zeta == 0 is rejected rather than returning inf.
    """
    if not 0.0 < zeta < HALF_PI:
        raise ParameterError(f"zeta must lie in (0, pi/2), got {zeta!r}")
    if l_dot_max <= 0 or r_m <= 0:
        raise ParameterError("l_dot_max and r_m must be > 0")
    c = math.cos(zeta)
    return l_dot_max * c * c / (r_m * math.sin(zeta))


def geometric_envelope(pole: PoleParams, sphere: SphereParams,
                       grid: Sequence[float]) -> list[EnvelopePoint]:
    """Evaluate the reachable angular rate at each grid angle.

    Points past the reach angle get rate 0 tagged ``MAX_LENGTH``. A grid point
    at exactly 0 carries ``inf`` since the extension-speed limit is unbounded
    there.
    """
    grid = [float(z) for z in grid]
    if not grid:
        raise ParameterError("envelope grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ParameterError("envelope grid must be strictly ascending")
    if grid[0] < 0 or grid[-1] >= HALF_PI:
        raise ParameterError("envelope grid must lie within [0, pi/2)")

    reach = max_reach_angle(pole.l_max, sphere.r_m)
    points = []
    for zeta in grid:
        if zeta > reach:
            points.append(EnvelopePoint(zeta, 0.0, Limit.MAX_LENGTH))
        elif zeta == 0.0:
            points.append(EnvelopePoint(zeta, math.inf, Limit.EXTENSION_SPEED))
        else:
            rate = max_angular_rate(zeta, pole.l_dot_max, sphere.r_m)
            points.append(EnvelopePoint(zeta, rate, Limit.EXTENSION_SPEED))
    return points
