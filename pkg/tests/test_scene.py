import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from landing_simplex.scene import (LandingTarget, ObstacleBox, Scene, VehicleState, clearance,
                                   collision_check, in_landing_path, mirror_x, vec3)

TARGET = LandingTarget(vec3(0, 0, 0))
UNIT_BOX = vec3(1, 1, 1)


def box(x, y=0.0, z=50.0, he=UNIT_BOX, id=None):
    return ObstacleBox(vec3(x, y, z), he, id=id)


def test_far_above_obstacle_no_collision():
    v = VehicleState(vec3(0, 0, 100))
    assert not collision_check(v, Scene((box(0),)))


def test_overlap_collides():
    v = VehicleState(vec3(0, 0, 50.5), footprint_radius=1.0)
    assert collision_check(v, Scene((box(0),)))


def test_horizontal_clearance_no_collision():
    v = VehicleState(vec3(3, 0, 50), footprint_radius=1.0)
    assert not collision_check(v, Scene((box(0),)))
    # analytic cylinder/box gap: 3 - 1 - 1
    assert clearance(v, box(0)) == pytest.approx(1.0)


def test_below_ground_collides():
    assert collision_check(VehicleState(vec3(0, 0, -0.1)), Scene())
    assert not collision_check(VehicleState(vec3(0, 0, 0.0)), Scene())


@pytest.mark.parametrize("x,expected", [(0, True), (2, True), (3, False)])
def test_landing_path_examples(x, expected):
    v = VehicleState(vec3(0, 0, 100), footprint_radius=1.0)
    assert in_landing_path(box(x), v, TARGET) is expected


def test_default_footprint_splits_builtin_obstacles():
    v = VehicleState(vec3(0, 0, 100))
    assert in_landing_path(box(2), v, TARGET)
    assert not in_landing_path(box(3), v, TARGET)


def test_obstacle_above_vehicle_not_in_path():
    v = VehicleState(vec3(0, 0, 10))
    assert not in_landing_path(box(0, z=20), v, TARGET)


def test_duplicate_ids_rejected():
    with pytest.raises(ValueError):
        Scene((box(0, id="a"), box(5, id="a")))


def test_nonpositive_extents_rejected():
    with pytest.raises(ValueError):
        ObstacleBox(vec3(0, 0, 0), vec3(1, 0, 1))


coord = st.floats(-6, 6, allow_nan=False)
extent = st.floats(0.1, 3, allow_nan=False)


@settings(max_examples=200, deadline=None)
@given(x=coord, y=coord, z=st.floats(0, 20), hx=extent, hy=extent, hz=extent, grow=st.floats(0, 2),
       vz=st.floats(0, 25), r=st.floats(0.3, 3))
def test_collision_monotone_in_extents(x, y, z, hx, hy, hz, grow, vz, r):
    v = VehicleState(vec3(0, 0, vz), footprint_radius=r)
    small = ObstacleBox(vec3(x, y, z), vec3(hx, hy, hz))
    big = ObstacleBox(vec3(x, y, z), vec3(hx + grow, hy + grow, hz + grow))
    if collision_check(v, Scene((small,))):
        assert collision_check(v, Scene((big,)))


@settings(max_examples=200, deadline=None)
@given(x=coord, y=coord, z=st.floats(0.5, 30), hx=extent, hy=extent, hz=extent,
       vx=coord, vy=coord, r=st.floats(0.3, 3))
def test_in_path_implies_descent_collision(x, y, z, hx, hy, hz, vx, vy, r):
    o = ObstacleBox(vec3(x, y, z), vec3(hx, hy, hz))
    start = z + hz + 5.0
    v = VehicleState(vec3(vx, vy, start), footprint_radius=r)
    if not in_landing_path(o, v, TARGET):
        return
    scene = Scene((o,))
    # dense vertical sweep down to the target; step below the smallest box height
    heights = np.arange(start, -1e-9, -0.05)
    assert any(collision_check(v.at_altitude(h), scene) for h in heights)


@settings(max_examples=200, deadline=None)
@given(x=coord, y=coord, z=st.floats(0, 30), hx=extent, hy=extent, hz=extent,
       vx=coord, vy=coord, vz=st.floats(0, 40), r=st.floats(0.3, 3))
def test_mirror_symmetry(x, y, z, hx, hy, hz, vx, vy, vz, r):
    o = ObstacleBox(vec3(x, y, z), vec3(hx, hy, hz))
    v = VehicleState(vec3(vx, vy, vz), footprint_radius=r)
    om = ObstacleBox(mirror_x(o.center), o.half_extents)
    vm = VehicleState(mirror_x(v.position), footprint_radius=r)
    tm = LandingTarget(mirror_x(TARGET.center))
    assert collision_check(v, Scene((o,))) == collision_check(vm, Scene((om,), target=tm))
    assert in_landing_path(o, v, TARGET) == in_landing_path(om, vm, tm)
