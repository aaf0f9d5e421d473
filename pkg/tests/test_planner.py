import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from landing_simplex.planner import LandingPlanner
from landing_simplex.scene import LandingTarget, VehicleState, vec3

TARGET = LandingTarget(vec3(0, 0, 0))
DT = 0.005


def follow(planner, start, v_limit, a_brake=1.34, until=None, t0=0.0, steps=40000):
    """Drive a vehicle that tracks the setpoint perfectly; yields (t, p, v)."""
    veh = VehicleState(vec3(0, 0, start))
    t = t0
    for _ in range(steps):
        p, v = planner.plan_targets(veh, TARGET, v_limit(t) if callable(v_limit) else v_limit, t,
                                    a_brake=a_brake)
        yield t, p, v
        if until is not None and until(t, p, v):
            return
        veh = veh.at_altitude(p, v)
        t += DT


def test_cruise_at_limit():
    pl = LandingPlanner()
    samples = [(p, v) for _, p, v in follow(pl, 130.0, 8.19, until=lambda t, p, v: p <= 100.0)]
    p, v = samples[-1]
    assert p == pytest.approx(100.0, abs=0.1)
    assert v == pytest.approx(-8.19)


def test_touchdown_speed_floor():
    pl = LandingPlanner()
    last = None
    for _, p, v in follow(pl, 30.0, 5.0, until=lambda t, p, v: p <= 0.45):
        last = (p, v)
    assert last[1] == pytest.approx(-0.5)


def test_profile_ends_on_target_and_is_monotone():
    pl = LandingPlanner()
    rows = np.array([(t, p, v) for t, p, v in follow(pl, 100.0, 8.0, until=lambda t, p, v: p <= 0.0)])
    assert rows[-1, 1] == pytest.approx(0.0)
    assert np.all(np.diff(rows[:, 1]) <= 1e-12)
    assert np.all(-rows[:, 2] <= 8.0 + 1e-12)
    # cruise plateau at the limit before the flare
    assert np.any(np.isclose(rows[:, 2], -8.0))


def test_hover_freezes_setpoint():
    pl = LandingPlanner()
    veh = VehicleState(vec3(0, 0, 60), vertical_velocity=-3.0)
    pl.plan_targets(veh, TARGET, 8.0, 0.0)
    # while still moving the setpoint follows the vehicle
    for k, (z, v) in enumerate([(60.0, -3.0), (59.5, -1.0), (59.4, -0.3)], start=1):
        p, tv = pl.plan_targets(veh.at_altitude(z, v), TARGET, 8.0, k * DT, hover=True)
        assert (p, tv) == (z, 0.0)
    # once stopped it freezes, whatever the vehicle does next
    for k, (z, v) in enumerate([(59.39, -0.05), (59.385, 0.02), (59.41, 0.05)], start=4):
        p, tv = pl.plan_targets(veh.at_altitude(z, v), TARGET, 8.0, k * DT, hover=True)
        assert (p, tv) == (59.4, 0.0)
    # leaving hover restarts the profile from the vehicle state
    p, tv = pl.plan_targets(veh.at_altitude(59.41, 0.0), TARGET, 8.0, 8 * DT)
    assert tv == pytest.approx(-pl.accel * 2 * DT)
    assert p == pytest.approx(59.41 + 0.5 * tv * 2 * DT)


def test_limit_drop_slows_at_brake_rate():
    pl = LandingPlanner()
    limit = lambda t: 14.0 if t < 10.0 else 7.0
    rows = np.array([(t, p, v) for t, p, v in follow(pl, 300.0, limit, a_brake=1.0,
                                                     until=lambda t, p, v: t >= 20.0)])
    after = rows[rows[:, 0] >= 10.0]
    dv = np.diff(after[:, 2]) / DT
    assert np.max(np.abs(dv)) <= 0.9 + 1e-9
    assert after[-1, 2] == pytest.approx(-7.0)


def test_rejects_nonpositive_limit():
    with pytest.raises(ValueError):
        LandingPlanner().plan_targets(VehicleState(vec3(0, 0, 10)), TARGET, 0.0, 0.0)


@settings(max_examples=40, deadline=None)
@given(h=st.floats(5, 120), limit=st.floats(2, 20), a=st.floats(0.5, 5))
def test_flare_respects_brake(h, limit, a):
    pl = LandingPlanner()
    rows = np.array([(t, p, v) for t, p, v in follow(pl, h, limit, a_brake=a, until=lambda t, p, v: p <= 0.0)])
    assert rows[-1, 1] == pytest.approx(0.0)
    dv = np.diff(rows[:, 2]) / DT
    # slowing (dv > 0 while descending) at most at the flare brake, speeding up at the cruise rate
    assert np.all(dv <= 0.9 * a + 1e-6)
    assert np.all(dv >= -pl.accel - 1e-6)
    assert np.all(-rows[:, 2] <= limit + 1e-9)
