"""Classical range-image obstacle detector.

Ground/obstacle separation follows the depth-clustering angle test: the
inclination ``alpha`` of the segment joining two vertically neighbouring
returns, and its change ``delta_alpha`` between neighbours. A flat surface
seen from above gives ``alpha == 0`` for every pair, so only surface
discontinuities raise ``delta_alpha`` above the threshold.

The straight-down laser (row 0) decides which analysis a column gets:

* row 0 missing: the landing target is out of range, so every valid return
  in the column is an obstacle;
* row 0 shorter than the expected height above the target by more than
  ``h_threshold``: something sits on the target;
* otherwise the angle test applies from row 0 upward.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import IntEnum

import numpy as np
from scipy import ndimage

from .lidar import LidarSpec, RangeImage, returns_to_points
from .scene import LandingTarget, ObstacleBox, VehicleState


class ReturnLabel(IntEnum):
    INVALID = 0
    GROUND = 1
    OBSTACLE = 2


@dataclass(frozen=True)
class DetectorConfig:
    alpha_threshold: float = 10.0
    h_threshold: float = 1.0

    def __post_init__(self):
        if not 0 < self.alpha_threshold < 90:
            raise ValueError("alpha_threshold must lie in (0, 90) degrees")
        if self.h_threshold <= 0:
            raise ValueError("h_threshold must be positive")


@dataclass(frozen=True)
class Projection:
    """Angular rectangle as seen from the sensor, all angles in degrees.

    ``azimuth_center`` / ``azimuth_width`` describe a circular arc;
    inclination is degrees below the horizon.
    """

    azimuth_center: float
    azimuth_width: float
    inclination_center: float
    inclination_height: float
    distance: float

    @property
    def inclination_bounds(self) -> tuple[float, float]:
        h = self.inclination_height / 2.0
        return self.inclination_center - h, self.inclination_center + h

    def contains(self, other: "Projection", margin: float = 0.0) -> bool:
        lo, hi = self.inclination_bounds
        olo, ohi = other.inclination_bounds
        if olo < lo - margin - 1e-9 or ohi > hi + margin + 1e-9:
            return False
        if self.azimuth_width + 2 * margin >= 360.0:
            return True
        if other.azimuth_width >= 360.0:
            return False
        # offset of the other arc's start/end inside ours, measured from our start
        start = self.azimuth_center - self.azimuth_width / 2.0 - margin
        width = self.azimuth_width + 2 * margin
        o_start = (other.azimuth_center - other.azimuth_width / 2.0 - start) % 360.0
        return o_start + other.azimuth_width <= width + 1e-9


@dataclass(frozen=True)
class DetectedObstacle:
    cells: np.ndarray          # (k, 2) int array of (row, column)
    closest_range: float
    projection: Projection
    points: np.ndarray          # (k, 3) world coordinates of the returns

    @property
    def box(self) -> ObstacleBox:
        """Axis-aligned hull of the returns."""
        return ObstacleBox.from_bounds(self.points.min(axis=0), self.points.max(axis=0))


def compute_alpha(image: RangeImage, spec: LidarSpec) -> np.ndarray:
    """Segment inclination per cell in degrees; NaN where a neighbour is missing."""
    xi = np.deg2rad(spec.inclinations)[:, None]
    dz = image.ranges * np.sin(xi)
    dh = image.ranges * np.cos(xi)
    alpha = np.full(image.ranges.shape, np.nan)
    alpha[0] = 0.0
    num = np.abs(dz[:-1] - dz[1:])
    den = np.abs(dh[:-1] - dh[1:])
    alpha[1:] = np.degrees(np.arctan2(num, den))
    return alpha


def compute_delta_alpha(alpha: np.ndarray) -> np.ndarray:
    delta = np.empty_like(alpha)
    delta[0] = 0.0
    delta[1:] = np.abs(alpha[1:] - alpha[:-1])
    return delta


def classify_returns(image: RangeImage, spec: LidarSpec, cfg: DetectorConfig,
                     vehicle: VehicleState, target: LandingTarget) -> np.ndarray:
    ranges = image.ranges
    valid = np.isfinite(ranges)
    delta = compute_delta_alpha(compute_alpha(image, spec))
    angle_obstacle = delta > cfg.alpha_threshold   # NaN compares False

    labels = np.where(valid, ReturnLabel.GROUND, ReturnLabel.INVALID).astype(np.int8)
    expected = vehicle.altitude - target.altitude
    # once a column has a gap, later rows cannot be ground: flat-ground ranges
    # grow with the row index, so ground beyond a miss is out of range too
    after_gap = np.cumsum(~valid, axis=0) > 0

    obst = angle_obstacle | (after_gap & valid)
    # target occupied: the surface seen by row 0 continues until the first
    # angle break; above that the angle test resumes
    occupied = valid[0] & (expected - np.where(valid[0], ranges[0], np.inf) > cfg.h_threshold)
    smooth = valid & ~angle_obstacle
    smooth[0] = True
    run = np.logical_and.accumulate(smooth, axis=0)
    obst |= run & occupied[None, :]
    # no target return: everything valid in the column is an obstacle
    obst |= valid & ~valid[0][None, :]
    labels[obst & valid] = ReturnLabel.OBSTACLE
    return labels


def _merge_wraparound(components: np.ndarray) -> np.ndarray:
    parent: dict[int, int] = {}

    def find(a: int) -> int:
        while parent.get(a, a) != a:
            a = parent[a]
        return a

    for a, b in zip(components[:, 0], components[:, -1]):
        if a and b:
            ra, rb = find(int(a)), find(int(b))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    if not parent:
        return components
    lut = np.arange(components.max() + 1)
    for k in range(1, lut.size):
        lut[k] = find(k)
    return lut[components]


def _azimuth_arc(columns: np.ndarray, n_columns: int, step: float) -> tuple[float, float]:
    """Smallest arc (center, width) in degrees covering the occupied columns."""
    cols = np.unique(columns)
    if cols.size == n_columns:
        return 180.0, 360.0
    gaps = np.diff(np.concatenate([cols, [cols[0] + n_columns]]))
    k = int(np.argmax(gaps))
    start = cols[(k + 1) % cols.size]
    span = n_columns - gaps[k]           # columns from start to end, exclusive of the end
    width = (span + 1) * step
    center = ((start + span / 2.0) * step) % 360.0
    return float(center), float(width)


def cluster_obstacles(labels: np.ndarray, image: RangeImage, spec: LidarSpec,
                      origin=None) -> list[DetectedObstacle]:
    """4-connected components of obstacle cells, columns wrapping around.

    ``origin`` is the sensor position used to place returns in the world;
    defaults to the sensor frame.
    """
    mask = labels == ReturnLabel.OBSTACLE
    if not mask.any():
        return []
    components, _ = ndimage.label(mask)
    components = _merge_wraparound(components)
    origin = np.zeros(3) if origin is None else np.asarray(origin, dtype=float)
    points = returns_to_points(image, spec, origin)
    xi = spec.inclinations

    found = []
    for k in np.unique(components[mask]):
        rows, cols = np.nonzero(components == k)
        rng = image.ranges[rows, cols]
        if np.any(rows == 0):
            az_c, az_w = 180.0, 360.0
        else:
            az_c, az_w = _azimuth_arc(cols, spec.n_columns, spec.rotation_step)
        inc_lo, inc_hi = float(xi[rows].min()), float(xi[rows].max())
        proj = Projection(az_c, az_w, (inc_lo + inc_hi) / 2.0, inc_hi - inc_lo, float(rng.min()))
        found.append(DetectedObstacle(
            cells=np.column_stack([rows, cols]),
            closest_range=float(rng.min()),
            projection=proj,
            points=points[rows, cols],
        ))
    found.sort(key=lambda o: o.closest_range)
    return found


def detect(image: RangeImage, spec: LidarSpec, cfg: DetectorConfig, vehicle: VehicleState,
           target: LandingTarget) -> tuple[np.ndarray, list[DetectedObstacle]]:
    labels = classify_returns(image, spec, cfg, vehicle, target)
    return labels, cluster_obstacles(labels, image, spec, origin=vehicle.position)


def labels_to_csv(labels: np.ndarray, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["row", "column", "label"])
        for (r, c), value in np.ndenumerate(labels):
            w.writerow([r, c, ReturnLabel(int(value)).name])


def detections_to_csv(obstacles: list[DetectedObstacle], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "n_cells", "closest_range", "azimuth_center", "azimuth_width",
                    "inclination_center", "inclination_height"])
        for i, o in enumerate(obstacles):
            p = o.projection
            w.writerow([i, len(o.cells), o.closest_range, p.azimuth_center, p.azimuth_width,
                        p.inclination_center, p.inclination_height])
