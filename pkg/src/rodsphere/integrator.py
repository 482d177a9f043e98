"""Fixed-step time integration of the regime dynamics.

A right-hand side is any callable ``rhs(state: MotionState) -> AccelTriple``.
Objects that also provide ``accel(t, zeta, omega) -> (a_v, a_h, omega_dot)``
are evaluated through that method, which skips building the value types at
every stage.
The integrated state is (zeta, omega, x, v_h, z, v_v); time advances as
``t0 + k*dt`` so samples are exactly uniform.
"""
from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from .geometry import EnvelopePoint, Limit
from .types import AccelTriple, MotionState, ParameterError

Rhs = Callable[[MotionState], AccelTriple]

COLUMNS = ("t", "zeta", "omega", "x", "v_h", "z", "v_v")


class Method(enum.Enum):
    RK4 = "rk4"
    SEMI_IMPLICIT_EULER = "semi_implicit_euler"


class IntegrationError(ArithmeticError):
    """Integration stopped early; ``trajectory`` holds every valid sample."""

    def __init__(self, message: str, trajectory: "Trajectory"):
        super().__init__(message)
        self.trajectory = trajectory


@dataclass(frozen=True)
class IntegratorSettings:
    dt: float
    t_end: float
    method: Method = Method.RK4

    def __post_init__(self):
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ParameterError(f"dt must be > 0, got {self.dt!r}")
        if not (math.isfinite(self.t_end) and self.t_end > 0):
            raise ParameterError(f"t_end must be > 0, got {self.t_end!r}")
        if self.dt > self.t_end:
            raise ParameterError(f"dt ({self.dt}) must not exceed t_end ({self.t_end})")
        object.__setattr__(self, "method", Method(self.method))

    @property
    def n_steps(self) -> int:
        # guard against 0.3/0.1 == 2.999...
        return int(math.floor(self.t_end / self.dt + 1e-9))


@dataclass(frozen=True)
class ConstantA:
    """Angular subsystem zeta'' = A sin(zeta) with A = r_m F_p / I held fixed."""

    A: float

    def __post_init__(self):
        if not (math.isfinite(self.A) and self.A >= 0):
            raise ParameterError(f"A must be >= 0, got {self.A!r}")

    def __call__(self, state: MotionState) -> AccelTriple:
        return constant_A_rhs(self.A, state)

    def accel(self, t: float, zeta: float, omega: float) -> tuple[float, float, float]:
        return 0.0, 0.0, self.A * math.sin(zeta)

    def energy(self, zeta, omega):
        """First integral 0.5*omega^2 + A*cos(zeta); works on arrays."""
        return 0.5 * np.asarray(omega) ** 2 + self.A * np.cos(zeta)


def constant_A_rhs(A: float, state: MotionState) -> AccelTriple:
    if A < 0:
        raise ParameterError(f"A must be >= 0, got {A!r}")
    return AccelTriple(0.0, 0.0, A * math.sin(state.zeta))


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled motion; columns are numpy arrays of equal length."""

    t: np.ndarray
    zeta: np.ndarray
    omega: np.ndarray
    x: np.ndarray
    v_h: np.ndarray
    z: np.ndarray
    v_v: np.ndarray
    dt: float
    meta: dict = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.t)

    def __getitem__(self, i: int) -> MotionState:
        return MotionState(zeta=float(self.zeta[i]), omega=float(self.omega[i]),
                           x=float(self.x[i]), v_h=float(self.v_h[i]),
                           z=float(self.z[i]), v_v=float(self.v_v[i]),
                           t=float(self.t[i]))

    def __iter__(self) -> Iterator[MotionState]:
        return (self[i] for i in range(len(self)))

    @property
    def final(self) -> MotionState:
        return self[len(self) - 1]

    def rows(self) -> np.ndarray:
        """(n, 7) array in ``COLUMNS`` order."""
        return np.column_stack([getattr(self, c) for c in COLUMNS])

    def replace(self, **columns) -> "Trajectory":
        data = {c: getattr(self, c) for c in COLUMNS}
        data.update(columns)
        return Trajectory(**data, dt=self.dt, meta=dict(self.meta))

    def head(self, n: int) -> "Trajectory":
        return self.replace(**{c: getattr(self, c)[:n] for c in COLUMNS})


def _deriv(rhs: Rhs, t: float, y: Sequence[float]) -> tuple[float, ...]:
    fast = getattr(rhs, "accel", None)
    if fast is not None:
        a_v, a_h, omega_dot = fast(t, y[0], y[1])
    else:
        state = MotionState(zeta=y[0], omega=y[1], x=y[2], v_h=y[3], z=y[4], v_v=y[5], t=t)
        acc = rhs(state)
        a_v, a_h, omega_dot = acc.a_v, acc.a_h, acc.omega_dot
    return (y[1], omega_dot, y[3], a_h, y[5], a_v)


def _rk4_step(rhs: Rhs, t: float, y: tuple, dt: float) -> tuple:
    k1 = _deriv(rhs, t, y)
    k2 = _deriv(rhs, t + 0.5 * dt, [a + 0.5 * dt * b for a, b in zip(y, k1)])
    k3 = _deriv(rhs, t + 0.5 * dt, [a + 0.5 * dt * b for a, b in zip(y, k2)])
    k4 = _deriv(rhs, t + dt, [a + dt * b for a, b in zip(y, k3)])
    return tuple(a + dt / 6.0 * (p + 2.0 * q + 2.0 * r + s)
                 for a, p, q, r, s in zip(y, k1, k2, k3, k4))


def _euler_step(rhs: Rhs, t: float, y: tuple, dt: float) -> tuple:
    # velocities first, positions from the updated velocities
    zeta, omega, x, v_h, z, v_v = y
    _, omega_dot, _, a_h, _, a_v = _deriv(rhs, t, y)
    omega += dt * omega_dot
    v_h += dt * a_h
    v_v += dt * a_v
    return (zeta + dt * omega, omega, x + dt * v_h, v_h, z + dt * v_v, v_v)


def integrate(rhs: Rhs, initial: MotionState, settings: IntegratorSettings) -> Trajectory:
    """Integrate ``rhs`` from ``initial`` over ``settings.t_end`` seconds.

    Returns ``n_steps + 1`` samples including the initial state. A non-finite
    state, or a right-hand side that rejects the state (for instance the angle
    leaving the regime's domain), raises :class:`IntegrationError` carrying
    the samples computed so far.
    """
    step = _rk4_step if settings.method is Method.RK4 else _euler_step
    n = settings.n_steps
    dt = settings.dt
    t0 = initial.t
    out = np.empty((n + 1, 6))
    y = (initial.zeta, initial.omega, initial.x, initial.v_h, initial.z, initial.v_v)
    out[0] = y

    def partial(k: int) -> Trajectory:
        return _build(out[:k], t0, dt, settings)

    for k in range(1, n + 1):
        t = t0 + (k - 1) * dt
        try:
            y = step(rhs, t, y, dt)
        except (ParameterError, ArithmeticError) as exc:
            raise IntegrationError(f"step {k} at t={t:.6g} failed: {exc}", partial(k)) from exc
        if not all(math.isfinite(v) for v in y):
            raise IntegrationError(f"non-finite state at t={t + dt:.6g}", partial(k))
        out[k] = y
    return _build(out, t0, dt, settings)


def _build(block: np.ndarray, t0: float, dt: float, settings: IntegratorSettings) -> Trajectory:
    t = t0 + dt * np.arange(len(block))
    cols = {name: block[:, i].copy() for i, name in enumerate(COLUMNS[1:])}
    return Trajectory(t=t, **cols, dt=dt,
                      meta={"method": settings.method.value, "dt": dt, "t_end": settings.t_end})


def clip_to_envelope(traj: Trajectory, envelope: Sequence[EnvelopePoint]) -> Trajectory:
    """Cap the angular rate by a kinematic envelope.

    The cap at each sample is the envelope interpolated linearly in zeta.
    Samples at or past the first ``MAX_LENGTH`` point are unreachable and the
    trajectory is truncated just before the first of them; between the last
    reachable grid point and that cut the last reachable rate is held. A sample outside
    the envelope's zeta span is a usage error.
    """
    if not envelope:
        raise ParameterError("envelope is empty")
    zs = [p.zeta for p in envelope]
    if any(b <= a for a, b in zip(zs, zs[1:])):
        raise ParameterError("envelope must be strictly ascending in zeta")
    cut = next((p.zeta for p in envelope if p.limited_by is Limit.MAX_LENGTH), math.inf)

    reachable = traj.zeta < cut
    n = len(traj) if reachable.all() else int(np.argmin(reachable))
    clipped = traj.head(n)
    if n == 0:
        return clipped
    lo, hi = float(clipped.zeta.min()), float(clipped.zeta.max())
    if lo < zs[0] or hi > zs[-1]:
        raise ParameterError(
            f"envelope covers [{zs[0]:.6g}, {zs[-1]:.6g}] but trajectory spans [{lo:.6g}, {hi:.6g}]")
    caps = np.array([_interp(envelope, zs, float(z)) for z in clipped.zeta])
    return clipped.replace(omega=np.minimum(clipped.omega, caps))


def _interp(envelope: Sequence[EnvelopePoint], zs: list[float], z: float) -> float:
    i = bisect.bisect_left(zs, z)
    if zs[i] == z:
        return envelope[i].zeta_dot_max
    a, b = envelope[i - 1], envelope[i]
    if b.limited_by is Limit.MAX_LENGTH:
        return a.zeta_dot_max
    if math.isinf(a.zeta_dot_max):
        return math.inf
    w = (z - a.zeta) / (b.zeta - a.zeta)
    return a.zeta_dot_max + w * (b.zeta_dot_max - a.zeta_dot_max)
