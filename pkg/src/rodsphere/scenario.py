"""Scenario description and the plain-text scenario file format.

A scenario file is TOML restricted to the sections and keys below; anything
else is rejected with the line and column of the offending entry::

    [scenario]
    regime = "friction"        # constant_a | obstacle | full_slip | friction | leverage
    convention = "consistent"  # or "verbatim"
    A = 0.15                   # constant_a only; defaults to r_m * F_p / I

    [sphere]
    r_m = 0.4
    m_robot = 25.0
    I = 1.6                    # optional, solid sphere when omitted
    gravity = "earth"          # "earth" | "moon", or give g = 9.81

    [pole]
    l_max = 0.1
    l_dot_max = 0.1
    F_p = 10.0
    m_lever = 0.1
    r_c = 0.9

    [friction]
    mu_rs = 1.0
    mu_s_pole = 1.0

    [initial]                  # zeta, omega, x, v_h, z, v_v, t
    zeta = 0.01

    [integrator]
    dt = 0.001
    t_end = 10.0
    method = "rk4"             # or "semi_implicit_euler"

    [envelope]
    zeta_start = 0.0
    zeta_stop = 1.5
    count = 301
    configurations = [[0.1, 0.025], [0.1, 0.05], [0.1, 0.1]]   # (l_max, l_dot_max)

    [sweep]
    parameter = "mu_rs"
    start = 0.0
    stop = 1.0
    count = 11

    [output]
    path = "out.csv"
"""
from __future__ import annotations

import dataclasses
import enum
import math
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import leverage, push
from .integrator import ConstantA, IntegratorSettings, Method
from .types import (EARTH_GRAVITY, MOON_GRAVITY, AccelTriple, FrictionParams,
                    LeverArmConvention, MotionState, ParameterError, PoleParams,
                    SphereParams, solid_sphere_inertia)


class Regime(enum.Enum):
    CONSTANT_A = "constant_a"
    OBSTACLE = "obstacle"
    FULL_SLIP = "full_slip"
    FRICTION = "friction"
    LEVERAGE = "leverage"

    @property
    def is_pushing(self) -> bool:
        return self is not Regime.LEVERAGE


class ScenarioError(ValueError):
    """Malformed scenario file; ``line``/``col`` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None,
                 path: str | None = None):
        self.line, self.col, self.path = line, col, path
        where = ""
        if line is not None:
            where = f"line {line}, column {col or 1}: "
        if path:
            where = f"{path}: {where}"
        super().__init__(where + message)


@dataclass(frozen=True)
class EnvelopeSpec:
    zeta_start: float = 0.0
    zeta_stop: float = 1.5
    count: int = 301
    configurations: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        if self.count < 1:
            raise ParameterError("envelope count must be >= 1")
        if self.count > 1 and not self.zeta_start < self.zeta_stop:
            raise ParameterError("envelope zeta_start must be < zeta_stop")
        for l_max, l_dot in self.configurations:
            if not (l_max > 0 and l_dot > 0):
                raise ParameterError(f"invalid envelope configuration ({l_max}, {l_dot})")

    def grid(self) -> list[float]:
        if self.count == 1:
            return [float(self.zeta_start)]
        step = (self.zeta_stop - self.zeta_start) / (self.count - 1)
        return [self.zeta_start + i * step for i in range(self.count)]


@dataclass(frozen=True)
class Scenario:
    regime: Regime
    sphere: SphereParams
    pole: PoleParams
    friction: FrictionParams = FrictionParams()
    convention: LeverArmConvention = LeverArmConvention.CONSISTENT
    initial: MotionState = MotionState(zeta=0.01)
    settings: IntegratorSettings = IntegratorSettings(dt=1e-3, t_end=10.0)
    A: float | None = None
    envelope: EnvelopeSpec = EnvelopeSpec()
    sweep: dict | None = None
    output: str | None = None
    source: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.regime is Regime.LEVERAGE:
            self.pole.check_against(self.sphere)
        if self.A is not None and not (math.isfinite(self.A) and self.A >= 0):
            raise ParameterError(f"A must be >= 0, got {self.A!r}")

    @property
    def drive_constant(self) -> float:
        """A = r_m F_p / I unless given explicitly."""
        if self.A is not None:
            return self.A
        return self.sphere.r_m * self.pole.F_p / self.sphere.I

    def accels(self, zeta: float) -> AccelTriple:
        """The regime's accelerations at angle ``zeta``."""
        return AccelTriple(*self.rhs().accel(0.0, zeta, 0.0))

    def rhs(self) -> "RegimeDynamics":
        return RegimeDynamics(self)

    def replace(self, **changes) -> "Scenario":
        return dataclasses.replace(self, **changes)

    def metadata(self) -> list[tuple[str, Any]]:
        items: list[tuple[str, Any]] = [
            ("regime", self.regime.value),
            ("convention", self.convention.value),
        ]
        if self.regime is Regime.CONSTANT_A:
            items.append(("A", self.drive_constant))
        for section, obj in (("sphere", self.sphere), ("pole", self.pole),
                             ("friction", self.friction), ("initial", self.initial),
                             ("integrator", self.settings)):
            for f in dataclasses.fields(obj):
                value = getattr(obj, f.name)
                if isinstance(value, enum.Enum):
                    value = value.value
                items.append((f"{section}.{f.name}", value))
        return items


class RegimeDynamics:
    """Callable right-hand side for :func:`rodsphere.integrator.integrate`."""

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self._fn = _accel_function(scenario)

    def accel(self, t: float, zeta: float, omega: float) -> tuple[float, float, float]:
        return self._fn(zeta)

    def __call__(self, state: MotionState) -> AccelTriple:
        return AccelTriple(*self._fn(state.zeta))


def _accel_function(sc: Scenario):
    sphere, pole, fric = sc.sphere, sc.pole, sc.friction
    if sc.regime is Regime.CONSTANT_A:
        A = ConstantA(sc.drive_constant)
        return lambda zeta: A.accel(0.0, zeta, 0.0)
    if sc.regime is Regime.OBSTACLE:
        return lambda zeta: push.obstacle_accels(zeta, pole.F_p, sphere, fric.mu_rs).as_tuple()
    if sc.regime is Regime.FULL_SLIP:
        return lambda zeta: push.full_slip_accels(zeta, pole.F_p, sphere).as_tuple()
    if sc.regime is Regime.FRICTION:
        return lambda zeta: push.friction_push_accels(
            zeta, pole.F_p, sphere, fric, sc.convention).as_tuple()
    return lambda zeta: leverage.leverage_accels(zeta, sphere, pole, fric.mu_rs).as_tuple()


# --- file parsing -----------------------------------------------------------

_SCHEMA: dict[str, dict[str, type | tuple]] = {
    "scenario": {"regime": str, "convention": str, "A": float},
    "sphere": {"r_m": float, "m_robot": float, "I": float, "g": float, "gravity": str},
    "pole": {"l_max": float, "l_dot_max": float, "F_p": float, "m_lever": float, "r_c": float},
    "friction": {"mu_rs": float, "mu_s_pole": float},
    "initial": {k: float for k in ("zeta", "omega", "x", "v_h", "z", "v_v", "t")},
    "integrator": {"dt": float, "t_end": float, "method": str},
    "envelope": {"zeta_start": float, "zeta_stop": float, "count": int, "configurations": list},
    "sweep": {"parameter": str, "start": float, "stop": float, "count": int},
    "output": {"path": str},
}
_REQUIRED = {"scenario": ("regime",), "sphere": ("r_m", "m_robot"), "pole": ("l_max", "l_dot_max")}
_GRAVITY = {"earth": EARTH_GRAVITY, "moon": MOON_GRAVITY}
_TOML_POS = re.compile(r"\(at line (\d+), column (\d+)\)")


class _Locator:
    """Maps section/key names back to positions in the source text."""

    def __init__(self, text: str):
        self.sections: dict[str, int] = {}
        self.keys: dict[tuple[str, str], tuple[int, int]] = {}
        current = ""
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            m = re.match(r"\[\s*([^\]]+?)\s*\]", line)
            if m:
                current = m.group(1)
                self.sections[current] = lineno
                continue
            m = re.match(r"\s*([A-Za-z0-9_\-\"']+)\s*=", raw)
            if m:
                self.keys[(current, m.group(1).strip("\"'"))] = (lineno, m.start(1) + 1)

    def key(self, section: str, key: str) -> tuple[int | None, int | None]:
        return self.keys.get((section, key), (self.sections.get(section), 1))


def parse_scenario(text: str, path: str | None = None) -> Scenario:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        m = _TOML_POS.search(str(exc))
        line, col = (int(m.group(1)), int(m.group(2))) if m else (None, None)
        msg = _TOML_POS.sub("", str(exc)).strip()
        raise ScenarioError(msg, line, col, path) from None
    loc = _Locator(text)

    def fail(msg: str, section: str, key: str | None = None):
        line, col = loc.key(section, key) if key else (loc.sections.get(section), 1)
        raise ScenarioError(msg, line, col, path)

    for section, body in doc.items():
        if section not in _SCHEMA:
            fail(f"unknown section [{section}]", section)
        if not isinstance(body, dict):
            line, col = loc.key("", section)
            raise ScenarioError(f"'{section}' must be a [section]", line, col, path)
        for key, value in body.items():
            expected = _SCHEMA[section].get(key)
            if expected is None:
                fail(f"unknown key '{key}' in [{section}]", section, key)
            ok = (isinstance(value, (int, float)) and not isinstance(value, bool)
                  if expected is float else
                  isinstance(value, int) and not isinstance(value, bool)
                  if expected is int else isinstance(value, expected))
            if not ok:
                fail(f"[{section}] {key} must be {expected.__name__}, got {value!r}", section, key)
    for section, keys in _REQUIRED.items():
        for key in keys:
            if key not in doc.get(section, {}):
                fail(f"missing required key '{key}' in [{section}]", section)

    def build(section: str, fn):
        # attribute constructor errors to the first key of the section
        try:
            return fn(doc.get(section, {}))
        except (ParameterError, ValueError, TypeError) as exc:
            bad = _guess_key(str(exc), doc.get(section, {}))
            fail(str(exc), section, bad)

    def make_sphere(d):
        d = dict(d)
        if "gravity" in d and "g" in d:
            raise ParameterError("give either g or gravity, not both")
        if "gravity" in d:
            name = d.pop("gravity").lower()
            if name not in _GRAVITY:
                raise ParameterError(f"gravity must be 'earth' or 'moon', got {name!r}")
            d["g"] = _GRAVITY[name]
        if "I" not in d:
            d["I"] = solid_sphere_inertia(d["m_robot"], d["r_m"])
        return SphereParams(**{k: float(v) for k, v in d.items()})

    def make_settings(d):
        d = dict(d)
        if "method" in d:
            d["method"] = Method(d["method"].lower())
        defaults = {"dt": 1e-3, "t_end": 10.0}
        return IntegratorSettings(**{**defaults, **d})

    def make_envelope(d):
        d = dict(d)
        if "configurations" in d:
            d["configurations"] = tuple((float(a), float(b)) for a, b in d["configurations"])
        return EnvelopeSpec(**d)

    sphere = build("sphere", make_sphere)
    pole = build("pole", lambda d: PoleParams(**{k: float(v) for k, v in d.items()}))
    friction = build("friction", lambda d: FrictionParams(**d))
    initial = build("initial", lambda d: MotionState(**{"zeta": 0.01, **d}))
    settings = build("integrator", make_settings)
    envelope = build("envelope", make_envelope)
    head = doc["scenario"]
    regime = build("scenario", lambda d: Regime(d["regime"].lower()))
    convention = build("scenario", lambda d: LeverArmConvention.parse(d.get("convention", "consistent")))
    sweep = doc.get("sweep")
    out = doc.get("output", {}).get("path")
    return build("scenario", lambda d: Scenario(
        regime=regime, sphere=sphere, pole=pole, friction=friction, convention=convention,
        initial=initial, settings=settings, A=float(head["A"]) if "A" in head else None,
        envelope=envelope, sweep=sweep, output=out, source=path))


def _guess_key(message: str, section: dict) -> str | None:
    for key in section:
        if re.search(rf"\b{re.escape(key)}\b", message):
            return key
    return None


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario: {exc.strerror}", path=str(path)) from None
    return parse_scenario(text, str(path))
