import math

import pytest

from rodsphere.types import PoleParams, SphereParams

# prototype-scale numbers used throughout the leverage analysis
R_M = 0.4
R_C = 0.9
M_ROBOT = 25.0
M_LEVER = 0.1


@pytest.fixture
def sphere():
    return SphereParams(r_m=R_M, m_robot=M_ROBOT, I=1.6)


@pytest.fixture
def lever_pole():
    return PoleParams(l_max=0.5, l_dot_max=0.1, m_lever=M_LEVER, r_c=R_C)


@pytest.fixture
def fig_pole():
    return PoleParams(l_max=0.1, l_dot_max=0.1, F_p=10.0)


def quadratic_threshold(sphere, pole):
    """Smaller root of k r_m mu^2 - (k r_c + 1) mu + 1 = 0, k = 2 pi m / I.

    Independent closed form of the forward-motion equality at zeta = pi.
    """
    k = 2 * math.pi * sphere.m_robot / sphere.I
    a, b, c = k * sphere.r_m, -(k * pole.r_c + 1.0), 1.0
    disc = b * b - 4 * a * c
    # numerically stable small root
    q = -0.5 * (b - math.sqrt(disc))
    return c / q


ACCEPTANCE_LINES = []


@pytest.fixture
def accept(request):
    """Record a pass/fail line for an acceptance criterion."""
    def record(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
