import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from landing_simplex.detectability import (DetectabilityConfigError, DetectabilityModel,
                                           detectability_curve, detection_range,
                                           min_detectable_dimension)
from landing_simplex.lidar import LidarSpec


@pytest.mark.parametrize("R,gap,dim", [(28.6479, 1.0, 1.0), (57.2958, 1.0, 2.0)])
def test_min_dimension_examples(R, gap, dim):
    assert min_detectable_dimension(R, gap) == pytest.approx(dim, abs=1e-5)


def test_min_dimension_vanishes_at_zero_range():
    assert min_detectable_dimension(1e-12, 1.0) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("E,gap,D", [(1.0, 1.0, 28.6479), (2.0, 1.0, 57.2958), (1.0, 2.0, 14.3239)])
def test_detection_range_examples(E, gap, D):
    assert detection_range(DetectabilityModel(gap, E)) == pytest.approx(D, abs=1e-4)


def test_oracle_constant():
    # independent evaluation: one radian per 2 degrees of gap
    assert detection_range(DetectabilityModel(1.0, 1.0)) == pytest.approx(90.0 / math.pi, rel=1e-15)


def test_h_threshold_follows_policy():
    assert DetectabilityModel.for_lidar(LidarSpec(), 1.7).h_threshold == 1.7


def test_range_beyond_sensor_is_config_error():
    with pytest.raises(DetectabilityConfigError):
        detection_range(DetectabilityModel(1.0, 5.0), max_range=120.0)
    assert detection_range(DetectabilityModel(1.0, 4.0), max_range=120.0) < 120.0


def test_invalid_model():
    with pytest.raises(ValueError):
        DetectabilityModel(0.0, 1.0)
    with pytest.raises(ValueError):
        DetectabilityModel(1.0, -1.0)


def test_curve_is_linear():
    d, dim = detectability_curve(1.0, 120.0, 13)
    np.testing.assert_allclose(dim, 2 * d * np.pi / 180)


@given(E=st.floats(0.01, 100), gap=st.floats(0.01, 20))
def test_round_trip(E, gap):
    D = detection_range(DetectabilityModel(gap, E))
    assert min_detectable_dimension(D, gap) == pytest.approx(E, rel=1e-12)
