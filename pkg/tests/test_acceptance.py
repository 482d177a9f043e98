"""Exit criteria for the package; each test prints one PASS/FAIL line."""
import math
import time
from pathlib import Path

import numpy as np

from conftest import quadratic_threshold
from rodsphere.analysis import force_vs_geometry, verify_reductions
from rodsphere.cli import main
from rodsphere.geometry import max_reach_angle, pole_extension_at
from rodsphere.integrator import ConstantA, IntegratorSettings, integrate
from rodsphere.leverage import leverage_accels, leverage_torques, min_friction_for_forward
from rodsphere.push import friction_push_accels
from rodsphere.scenario import Regime, Scenario
from rodsphere.types import FrictionParams, MotionState, PoleParams, SphereParams

SCENARIOS = Path(__file__).resolve().parents[1] / "scenarios"


def test_1_min_friction(accept):
    sphere = SphereParams(r_m=0.4, m_robot=25.0, I=0.4 * 25.0 * 0.4**2)
    pole = PoleParams(l_max=0.5, l_dot_max=0.1, m_lever=0.1, r_c=0.9)
    mu = min_friction_for_forward(sphere, pole)
    runs = []
    for _ in range(50):
        t0 = time.perf_counter()
        min_friction_for_forward(sphere, pole)
        runs.append(time.perf_counter() - t0)
    elapsed = min(runs)
    oracle = quadratic_threshold(sphere, pole)
    ok = abs(mu - 0.012) <= 0.001 and elapsed < 1e-3 and abs(mu - oracle) <= 1e-6
    accept(1, "minimum mu_rs 0.012 +- 0.001, < 1 ms, matches quadratic to 1e-6", ok,
           f"mu={mu:.6f}, oracle={oracle:.9f}, |diff|={abs(mu - oracle):.1e}, t={elapsed * 1e6:.1f} us")


def test_2_reduction_identities(accept):
    rep = verify_reductions(samples=1000, seed=2024, convention="consistent")
    verb = verify_reductions(samples=1000, seed=2024, convention="verbatim")
    ok = (rep.check("no_slip").status == "pass" and rep.check("full_slip").status == "pass"
          and rep.check("no_slip").max_error <= 1e-12 and rep.check("full_slip").max_error <= 1e-12
          and rep.check("no_slip").samples >= 1000
          and verb.check("full_slip").status == "known-discrepancy")
    accept(2, "(1,1) and (0,0) reductions to 1e-12 over 1000 samples; verbatim (0,0) flagged", ok,
           f"no_slip={rep.check('no_slip').max_error:.1e}, full_slip={rep.check('full_slip').max_error:.1e}, "
           f"verbatim full_slip={verb.check('full_slip').status}")


def test_3_zero_angle(accept):
    rng = np.random.default_rng(3)
    sphere = SphereParams(0.4, 25.0, 1.6)
    forces = list(rng.uniform(0.0, 1000.0, 99)) + [sphere.m_robot * sphere.g]
    bad = 0
    for F in forces:
        fric = FrictionParams(float(rng.random()), float(rng.random()))
        acc = friction_push_accels(0.0, float(F), sphere, fric)
        excess = F / sphere.m_robot - sphere.g
        expected = excess if excess > 0 else 0.0
        if not (acc.a_h == 0.0 and acc.omega_dot == 0.0 and acc.a_v == expected):
            bad += 1
    accept(3, "zeta=0 gives a_h = omega_dot = 0 exactly and stepped a_v", bad == 0,
           f"{len(forces)} forces, {bad} failures")


def test_4_leverage_positivity(accept):
    rng = np.random.default_rng(4)
    failures = 0
    n = 10_000
    for _ in range(n):
        zeta = float(rng.uniform(math.pi, 2 * math.pi))
        if not math.pi < zeta < 2 * math.pi:
            continue
        mu = float(rng.uniform(0.0, 1.0))
        r_m = float(rng.uniform(0.05, 2.0))
        m = float(rng.uniform(1.0, 100.0))
        sphere = SphereParams(r_m, m, 0.4 * m * r_m**2 * float(rng.uniform(0.5, 2.0)))
        pole = PoleParams(1.0, 0.1, m_lever=float(rng.uniform(0.01, 5.0)),
                          r_c=r_m * float(rng.uniform(1.01, 4.0)))
        t = leverage_torques(zeta, pole.m_lever, sphere, pole, mu)
        acc = leverage_accels(zeta, sphere, pole, mu)
        a1 = leverage_accels(zeta, sphere, pole, 1.0).a_h
        a0 = leverage_accels(zeta, sphere, pole, 0.0).a_h
        ok = t.tau_r > 0 and acc.omega_dot > 0 and a1 >= 0
        ok = ok and (a0 < 0 if zeta < 1.5 * math.pi else a0 >= 0)
        failures += not ok
    # the boundary itself, where cos vanishes
    sphere, pole = SphereParams(0.4, 25.0, 1.6), PoleParams(0.5, 0.1, m_lever=0.1, r_c=0.9)
    failures += leverage_accels(1.5 * math.pi, sphere, pole, 0.0).a_h < 0
    accept(4, "leverage tau_r > 0, omega_dot > 0, mu=1 forward, mu=0 sign split at 1.5 pi",
           failures == 0, f"{n} samples, {failures} failures")


def test_5_constant_a_solution(accept):
    t0 = time.perf_counter()
    results = []
    for A in (0.15, 10.0):
        rhs = ConstantA(A)
        tr = integrate(rhs, MotionState(zeta=0.01, omega=0.0), IntegratorSettings(1e-3, 10.0))
        inside = (tr.zeta > 0) & (tr.zeta < math.pi)
        both = inside[:-1] & inside[1:]
        increasing = bool(both.any() and np.all(np.diff(tr.omega)[both] > 0))
        E = rhs.energy(tr.zeta, tr.omega)
        drift = float(np.max(np.abs(E - E[0])) / abs(E[0]))
        results.append((A, increasing, drift))
    elapsed = time.perf_counter() - t0
    ok = all(inc and d < 1e-6 for _, inc, d in results) and elapsed < 1.0
    accept(5, "omega increasing on (0, pi), energy drift < 1e-6 over 10 s, < 1 s", ok,
           ", ".join(f"A={A}: drift={d:.1e}" for A, _, d in results) + f", t={elapsed:.2f} s")


def test_6_force_vs_geometry(accept):
    sphere = SphereParams(0.4, 25.0, 1.6)
    grid = list(np.linspace(0.0, 1.5, 301))
    step = grid[1] - grid[0]
    sc = Scenario(regime=Regime.CONSTANT_A, sphere=sphere,
                  pole=PoleParams(l_max=0.1, l_dot_max=0.1), A=0.15)
    rows = force_vs_geometry(sc, grid, [(0.1, 0.025), (0.1, 0.05), (0.1, 0.1)])
    reach = math.acos(0.8)
    cut_ok = True
    for k in range(3):
        block = [r for r in rows if r.config == k]
        last = max(r.zeta for r in block if r.omega_geom > 0)
        cut_ok &= abs(last - reach) <= step
    exceeds = [r.zeta for r in rows if r.omega_force > r.omega_geom]
    zs = np.linspace(1e-3, math.pi / 2 - 0.01, 2000)
    roundtrip = max(abs(max_reach_angle(pole_extension_at(z, 0.4), 0.4) - z) for z in zs)
    ok = cut_ok and len(exceeds) > 0 and roundtrip < 1e-10
    accept(6, "reach cutoff at arccos(0.8) +- one step, force exceeds envelope, round trip < 1e-10",
           ok, f"{len(exceeds)} exceeding points, round-trip {roundtrip:.1e}")


def test_7_rk4_order(accept):
    rhs, T, start = ConstantA(10.0), 3.0, MotionState(zeta=0.01)
    dt = 0.01
    ref = integrate(rhs, start, IntegratorSettings(dt / 8, T))
    e1 = np.max(np.abs(integrate(rhs, start, IntegratorSettings(dt, T)).zeta - ref.zeta[::8]))
    e2 = np.max(np.abs(integrate(rhs, start, IntegratorSettings(dt / 2, T)).zeta - ref.zeta[::4]))
    ratio = e1 / e2
    accept(7, "RK4 error shrinks >= 8x when dt halves", ratio >= 8.0, f"ratio={ratio:.1f}")


def test_8_determinism(accept, tmp_path, capsys):
    same = True
    for cmd, scen in (("simulate", "friction_push"), ("simulate", "leverage"),
                      ("envelope", "envelope_fig"), ("sweep", "sweep_leverage_mu")):
        outs = []
        for i in range(2):
            p = tmp_path / f"{cmd}-{scen}-{i}.csv"
            assert main([cmd, "--scenario", str(SCENARIOS / f"{scen}.toml"), "--out", str(p)]) == 0
            outs.append(p.read_bytes())
        same &= outs[0] == outs[1]
    reports = []
    for i in range(2):
        p = tmp_path / f"verify-{i}.csv"
        main(["verify", "--seed", "99", "--samples", "300", "--out", str(p)])
        reports.append(p.read_bytes())
    same &= reports[0] == reports[1]
    capsys.readouterr()
    accept(8, "identical scenario + seed give byte-identical CSV", same)
