"""Builders shared by the monitor and acceptance tests."""

import numpy as np

from landing_simplex.detector import DetectedObstacle, Projection
from landing_simplex.envelope import EnvelopeParams
from landing_simplex.monitor import DecisionContext, MonitorConfig
from landing_simplex.scene import LandingTarget, VehicleState, vec3

D_DET = 90.0 / np.pi
TARGET = LandingTarget(vec3(0, 0, 0))


def obstacle(lo, hi, closest_range, projection=None):
    """A detection whose points are the corners of the box [lo, hi]."""
    lo, hi = np.asarray(lo, float), np.asarray(hi, float)
    corners = np.array([[x, y, z] for x in (lo[0], hi[0]) for y in (lo[1], hi[1]) for z in (lo[2], hi[2])])
    proj = projection or Projection(0.0, 10.0, 80.0, 4.0, closest_range)
    return DetectedObstacle(cells=np.zeros((8, 2), int), closest_range=float(closest_range),
                            projection=proj, points=corners)


def context(altitude=100.0, speed=0.0, a_max=1.34, L_max=0.15, footprint=1.5, config=None, xy=(0.0, 0.0)):
    v = VehicleState(vec3(xy[0], xy[1], altitude), vertical_velocity=-speed, footprint_radius=footprint)
    env = EnvelopeParams(D_det=D_DET, D_stop_max=25.0, L_max=L_max, a_max=a_max)
    return DecisionContext(v, TARGET, env, config or MonitorConfig())
