import math

import pytest

from rodsphere.types import (AccelTriple, ForceSplit, FrictionParams, LeverArmConvention,
                             MotionState, ParameterError, PoleParams, SphereParams,
                             solid_sphere_inertia)


@pytest.mark.parametrize("m, r, expected", [(25, 0.4, 1.6), (1, 1, 0.4)])
def test_solid_sphere_inertia(m, r, expected):
    assert solid_sphere_inertia(m, r) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("m, r", [(0, 0.4), (-1, 0.4), (25, 0), (25, -0.1)])
def test_solid_sphere_inertia_rejects_nonpositive(m, r):
    with pytest.raises(ParameterError):
        solid_sphere_inertia(m, r)


def test_solid_helper_is_exact():
    s = SphereParams.solid(r_m=0.4, m_robot=25)
    assert s.I == 0.4 * 25 * 0.4**2
    assert s.g == 9.81


@pytest.mark.parametrize("field", ["r_m", "m_robot", "I", "g"])
@pytest.mark.parametrize("bad", [0.0, -1.0, math.nan, math.inf])
def test_sphere_rejects(field, bad):
    kwargs = dict(r_m=0.4, m_robot=25.0, I=1.6, g=9.81)
    kwargs[field] = bad
    with pytest.raises(ParameterError, match=field):
        SphereParams(**kwargs)


@pytest.mark.parametrize("kwargs", [
    dict(l_max=0.0, l_dot_max=0.1),
    dict(l_max=0.1, l_dot_max=0.0),
    dict(l_max=0.1, l_dot_max=0.1, F_p=-1.0),
    dict(l_max=0.1, l_dot_max=0.1, m_lever=-0.1),
    dict(l_max=0.1, l_dot_max=0.1, r_c=math.nan),
])
def test_pole_rejects(kwargs):
    with pytest.raises(ParameterError):
        PoleParams(**kwargs)


def test_pole_lever_must_clear_shell():
    sphere = SphereParams.solid(0.4, 25)
    PoleParams(0.1, 0.1, r_c=0.9).check_against(sphere)
    for r_c in (0.4, 0.3):
        with pytest.raises(ParameterError, match="r_c"):
            PoleParams(0.1, 0.1, r_c=r_c).check_against(sphere)
    with pytest.raises(ParameterError):
        PoleParams(0.1, 0.1).check_against(sphere)


@pytest.mark.parametrize("mu_rs, mu_p", [(-0.1, 0.5), (1.1, 0.5), (0.5, -1e-9), (0.5, 2.0)])
def test_friction_range(mu_rs, mu_p):
    with pytest.raises(ParameterError):
        FrictionParams(mu_rs, mu_p)


def test_state_and_accel_must_be_finite():
    with pytest.raises(ParameterError):
        MotionState(zeta=math.nan)
    with pytest.raises(ParameterError):
        AccelTriple(0.0, math.inf, 0.0)


def test_values_are_immutable():
    s = SphereParams.solid(0.4, 25)
    with pytest.raises(AttributeError):
        s.r_m = 1.0


def test_force_split_magnitude():
    assert ForceSplit(3.0, 4.0).magnitude == 5.0


def test_convention_parse():
    assert LeverArmConvention.parse("Verbatim") is LeverArmConvention.VERBATIM
    assert LeverArmConvention.parse(LeverArmConvention.CONSISTENT) is LeverArmConvention.CONSISTENT
    with pytest.raises(ParameterError):
        LeverArmConvention.parse("bogus")
