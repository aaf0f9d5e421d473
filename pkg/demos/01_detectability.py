"""How small an obstacle the LiDAR is guaranteed to see, and the range that buys.

Renders a cube at the edge of the guaranteed range and shows the detector
flagging it, then shrinks the cube below the bound, where detection
is possible but no longer promised.
"""

import numpy as np

from landing_simplex.detectability import DetectabilityModel, detection_range, min_detectable_dimension
from landing_simplex.detector import DetectorConfig, ReturnLabel, classify_returns
from landing_simplex.lidar import LidarSpec, beam_gap, render_range_image
from landing_simplex.scene import LandingTarget, ObstacleBox, Scene, VehicleState, vec3

spec = LidarSpec()
gap = beam_gap(spec)
model = DetectabilityModel.for_lidar(spec, policy_size=1.0)
D_det = detection_range(model, spec.max_range)
print(f"beam gap {gap:.1f} deg -> a 1 m obstacle is always seen out to {D_det:.2f} m")
for R in (10, 25, D_det, 60, 120):
    print(f"  at {R:6.2f} m the guaranteed size is {min_detectable_dimension(R, gap):.3f} m")

vehicle = VehicleState(vec3(0, 0, 25))
target = LandingTarget(vec3(0, 0, 0))
for size in (1.0, 0.25):
    # cube resting on the ground, 8 m off the landing axis
    cube = ObstacleBox(vec3(8, 3, size / 2), vec3(size / 2, size / 2, size / 2))
    img = render_range_image(spec, vehicle, Scene((cube,)))
    labels = classify_returns(img, spec, DetectorConfig(h_threshold=model.h_threshold), vehicle, target)
    hits = img.hit_ids == 0
    flagged = np.count_nonzero((labels == ReturnLabel.OBSTACLE) & hits)
    R = float(np.min(img.ranges[hits])) if hits.any() else float("nan")
    print(f"{size:.2f} m cube at {R:.1f} m: {np.count_nonzero(hits)} returns, {flagged} flagged "
          f"(bound there {min_detectable_dimension(R, gap):.2f} m)")
