import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from landing_simplex.detector import (DetectorConfig, Projection, ReturnLabel, classify_returns,
                                      cluster_obstacles, compute_alpha, compute_delta_alpha, detect,
                                      detections_to_csv, labels_to_csv)
from landing_simplex.lidar import LidarSpec, RangeImage, render_range_image
from landing_simplex.scene import LandingTarget, ObstacleBox, Scene, VehicleState, vec3

SPEC = LidarSpec()
CFG = DetectorConfig()
TARGET = LandingTarget(vec3(0, 0, 0))


def _run(vehicle, obstacles=()):
    img = render_range_image(SPEC, vehicle, Scene(tuple(obstacles)))
    labels, clusters = detect(img, SPEC, CFG, vehicle, TARGET)
    return img, labels, clusters


def test_alpha_flat_ground_two_lasers():
    r1 = 10 / np.sin(np.deg2rad(80))
    assert r1 == pytest.approx(10.154, abs=1e-3)
    img = RangeImage(np.array([[10.0], [r1]]))
    spec = LidarSpec(inclinations=np.array([90.0, 80.0]), rotation_step=360.0)
    alpha = compute_alpha(img, spec)
    assert alpha[0, 0] == 0.0
    assert alpha[1, 0] == pytest.approx(0.0, abs=1e-9)


def test_alpha_vertical_wall():
    spec = LidarSpec(inclinations=np.array([90.0, 80.0, 70.0]), rotation_step=360.0)
    d = 7.0
    img = RangeImage(np.array([[10.0], [d / np.cos(np.deg2rad(80))], [d / np.cos(np.deg2rad(70))]]))
    alpha = compute_alpha(img, spec)
    assert alpha[2, 0] == pytest.approx(90.0, abs=1e-6)


def test_alpha_row_zero_always_zero():
    v = VehicleState(vec3(0, 0, 60))
    img = render_range_image(SPEC, v, Scene((ObstacleBox(vec3(5, 5, 20), vec3(3, 3, 3)),)))
    alpha = compute_alpha(img, SPEC)
    assert np.all(alpha[0] == 0.0)
    assert np.all(compute_delta_alpha(alpha)[0] == 0.0)


def test_empty_scene_all_ground():
    img, labels, clusters = _run(VehicleState(vec3(0, 0, 100)))
    assert np.all(labels[img.valid] == ReturnLabel.GROUND)
    assert np.all(labels[~img.valid] == ReturnLabel.INVALID)
    assert clusters == []


def test_obstacle_below_flags_row_zero():
    img, labels, clusters = _run(VehicleState(vec3(0, 0, 100)), [ObstacleBox(vec3(0, 0, 50), vec3(1, 1, 1))])
    assert np.all(labels[0] == ReturnLabel.OBSTACLE)
    assert len(clusters) == 1
    assert np.any(clusters[0].cells[:, 0] == 0)
    assert clusters[0].closest_range == pytest.approx(49.0)
    assert clusters[0].projection.azimuth_width == 360.0


def test_target_out_of_range_every_valid_return_is_obstacle():
    v = VehicleState(vec3(0, 0, 150))
    tower = ObstacleBox(vec3(40, 0, 100), vec3(5, 5, 100))
    img, labels, clusters = _run(v, [tower])
    assert img.valid.any()
    assert not img.valid[0].any()
    assert np.all(labels[img.valid] == ReturnLabel.OBSTACLE)
    assert len(clusters) >= 1


def test_no_obstacle_cells_no_clusters():
    labels = np.full((SPEC.n_lasers, SPEC.n_columns), ReturnLabel.GROUND, dtype=np.int8)
    img = RangeImage(np.full(labels.shape, 10.0))
    assert cluster_obstacles(labels, img, SPEC) == []


def _clusters_by_box(img, clusters):
    """Map scene obstacle index -> clusters holding its returns."""
    out = {}
    for cl in clusters:
        ids = set(img.hit_ids[cl.cells[:, 0], cl.cells[:, 1]].tolist()) - {-1}
        assert len(ids) <= 1, "a cluster mixes two obstacles"
        for i in ids:
            out.setdefault(i, []).append(cl)
    return out


def test_two_boxes_opposite_azimuths_two_clusters():
    v = VehicleState(vec3(0, 0, 40))
    boxes = [ObstacleBox(vec3(15, 0, 1.5), vec3(1.5, 1.5, 1.5)),
             ObstacleBox(vec3(-15, 0, 1.5), vec3(1.5, 1.5, 1.5))]
    img, labels, clusters = _run(v, boxes)
    by_box = _clusters_by_box(img, clusters)
    assert sorted(by_box) == [0, 1]
    assert all(len(v) == 1 for v in by_box.values())
    # the angle test also trips on the first ground returns past each
    # occlusion edge; those form ground-level clusters of their own
    rest = [cl for cl in clusters if all(cl is not c for v in by_box.values() for c in v)]
    for cl in rest:
        assert np.all(img.hit_ids[cl.cells[:, 0], cl.cells[:, 1]] == -1)
        assert np.allclose(cl.points[:, 2], 0.0, atol=1e-9)


def test_wraparound_merge():
    # a box straddling azimuth 0 must form one cluster, not two
    v = VehicleState(vec3(0, 0, 40))
    img, labels, clusters = _run(v, [ObstacleBox(vec3(15, 0, 1.5), vec3(1.5, 1.5, 1.5))])
    (cl,) = _clusters_by_box(img, clusters)[0]
    cols = np.unique(cl.cells[:, 1])
    assert 0 in cols and SPEC.n_columns - 1 in cols
    p = cl.projection
    assert p.azimuth_width < 30
    assert min(p.azimuth_center, 360 - p.azimuth_center) < 1.0


def test_projection_containment():
    p = Projection(10.0, 20.0, 80.0, 4.0, 30.0)
    assert p.contains(p)
    assert not Projection(5.0, 10.0, 80.0, 4.0, 30.0).contains(p)
    wrap = Projection(0.0, 40.0, 80.0, 10.0, 30.0)
    assert wrap.contains(Projection(355.0, 6.0, 80.0, 2.0, 30.0))
    assert not wrap.contains(Projection(340.0, 6.0, 80.0, 2.0, 30.0))
    assert Projection(180.0, 360.0, 80.0, 10.0, 30.0).contains(Projection(90.0, 30.0, 80.0, 2.0, 1.0))


def test_csv_outputs(tmp_path):
    img, labels, clusters = _run(VehicleState(vec3(0, 0, 100)), [ObstacleBox(vec3(0, 0, 50), vec3(1, 1, 1))])
    labels_to_csv(labels, tmp_path / "labels.csv")
    detections_to_csv(clusters, tmp_path / "det.csv")
    lines = (tmp_path / "labels.csv").read_text().splitlines()
    assert lines[0] == "row,column,label"
    assert len(lines) == 1 + labels.size
    assert len((tmp_path / "det.csv").read_text().splitlines()) == 1 + len(clusters)


def test_config_validation():
    with pytest.raises(ValueError):
        DetectorConfig(alpha_threshold=0)
    with pytest.raises(ValueError):
        DetectorConfig(h_threshold=-1)


@settings(max_examples=80, deadline=None)
@given(h=st.floats(10, 120), x=st.floats(-3, 3), y=st.floats(-3, 3))
def test_flat_ground_no_false_positives(h, x, y):
    v = VehicleState(vec3(x, y, h))
    img = render_range_image(SPEC, v, Scene())
    labels = classify_returns(img, SPEC, CFG, v, TARGET)
    assert not np.any(labels == ReturnLabel.OBSTACLE)


@settings(max_examples=30, deadline=None)
@given(x=st.floats(4, 25), y=st.floats(-10, 10), s=st.floats(1, 4), h=st.floats(30, 90),
       k=st.sampled_from([90, 180, 270]))
def test_labels_rotate_with_scene(x, y, s, h, k):
    x, y = x + 1e-3 * np.sqrt(2), y + 1e-3 * np.sqrt(3)
    o = ObstacleBox(vec3(x, y, s), vec3(s, s, s))
    ang = np.deg2rad(k)
    c, sn = round(np.cos(ang)), round(np.sin(ang))
    r = ObstacleBox(vec3(c * x - sn * y, sn * x + c * y, s), vec3(s, s, s))
    v = VehicleState(vec3(0, 0, h))
    la = classify_returns(render_range_image(SPEC, v, Scene((o,))), SPEC, CFG, v, TARGET)
    lb = classify_returns(render_range_image(SPEC, v, Scene((r,))), SPEC, CFG, v, TARGET)
    np.testing.assert_array_equal(lb, np.roll(la, k, axis=1))
