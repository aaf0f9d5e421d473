"""World model for the vertical landing problem.

Inertial frame, z up, flat ground at ``z = ground_z`` (0 by default). The
vehicle is a vertical cylinder whose bottom face carries the LiDAR; its
``position`` is the centre of that bottom face.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Hashable, Sequence

import numpy as np

DEFAULT_FOOTPRINT_RADIUS = 1.5
DEFAULT_BODY_HEIGHT = 2.0


def vec3(x: float, y: float = 0.0, z: float = 0.0) -> np.ndarray:
    v = np.array([x, y, z], dtype=float)
    if not np.all(np.isfinite(v)):
        raise ValueError(f"non-finite vector {v}")
    return v


def _as_vec3(v) -> np.ndarray:
    return vec3(*np.asarray(v, dtype=float).reshape(3))


@dataclass(frozen=True)
class VehicleState:
    position: np.ndarray
    vertical_velocity: float = 0.0
    footprint_radius: float = DEFAULT_FOOTPRINT_RADIUS
    body_height: float = DEFAULT_BODY_HEIGHT

    def __post_init__(self):
        object.__setattr__(self, "position", _as_vec3(self.position))
        if self.footprint_radius <= 0 or self.body_height <= 0:
            raise ValueError("footprint_radius and body_height must be positive")

    @property
    def altitude(self) -> float:
        return float(self.position[2])

    def at_altitude(self, z: float, vertical_velocity: float | None = None) -> "VehicleState":
        p = self.position.copy()
        p[2] = z
        v = self.vertical_velocity if vertical_velocity is None else vertical_velocity
        return replace(self, position=p, vertical_velocity=float(v))


@dataclass(frozen=True)
class ObstacleBox:
    center: np.ndarray
    half_extents: np.ndarray
    id: Hashable = None

    def __post_init__(self):
        object.__setattr__(self, "center", _as_vec3(self.center))
        he = _as_vec3(self.half_extents)
        if np.any(he <= 0):
            raise ValueError(f"half_extents must be positive, got {he}")
        object.__setattr__(self, "half_extents", he)

    @property
    def lo(self) -> np.ndarray:
        return self.center - self.half_extents

    @property
    def hi(self) -> np.ndarray:
        return self.center + self.half_extents

    @classmethod
    def from_bounds(cls, lo, hi, id=None, min_half_extent: float = 1e-3) -> "ObstacleBox":
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        he = np.maximum((hi - lo) / 2.0, min_half_extent)
        return cls(center=(lo + hi) / 2.0, half_extents=he, id=id)


@dataclass(frozen=True)
class LandingTarget:
    center: np.ndarray
    radius: float = 5.0

    def __post_init__(self):
        object.__setattr__(self, "center", _as_vec3(self.center))
        if self.radius <= 0:
            raise ValueError("target radius must be positive")

    @property
    def altitude(self) -> float:
        return float(self.center[2])


@dataclass(frozen=True)
class Scene:
    obstacles: tuple[ObstacleBox, ...] = ()
    target: LandingTarget = field(default_factory=lambda: LandingTarget(vec3(0, 0, 0)))
    ground_z: float = 0.0

    def __post_init__(self):
        obstacles = tuple(self.obstacles)
        ids = [o.id for o in obstacles if o.id is not None]
        if len(ids) != len(set(ids)):
            raise ValueError("obstacle ids must be unique")
        object.__setattr__(self, "obstacles", obstacles)

    def with_obstacles(self, obstacles: Sequence[ObstacleBox]) -> "Scene":
        return replace(self, obstacles=tuple(obstacles))


def _disc_box_gap(center_xy: np.ndarray, radius: float, lo: np.ndarray, hi: np.ndarray) -> float:
    """Signed-ish horizontal gap between a disc and a rectangle (<= 0 means overlap)."""
    nearest = np.clip(center_xy, lo[:2], hi[:2])
    return float(np.hypot(*(center_xy - nearest))) - radius


CONTACT_TOLERANCE = 1e-12


def collision_check(vehicle: VehicleState, scene: Scene) -> bool:
    """True if the vehicle cylinder touches an obstacle or sinks into the ground.

    Contact with a box counts, so this agrees with the closed landing prism
    of ``in_landing_path``. Resting on the ground or target does not.
    """
    bottom = vehicle.altitude
    top = bottom + vehicle.body_height
    if bottom < min(scene.ground_z, scene.target.altitude) - 1e-9:
        return True
    xy = vehicle.position[:2]
    for box in scene.obstacles:
        lo, hi = box.lo, box.hi
        if bottom > hi[2] + CONTACT_TOLERANCE or top < lo[2] - CONTACT_TOLERANCE:
            continue
        if _disc_box_gap(xy, vehicle.footprint_radius, lo, hi) <= CONTACT_TOLERANCE:
            return True
    return False


def in_landing_path(obstacle: ObstacleBox, vehicle: VehicleState, target: LandingTarget) -> bool:
    """True if ``obstacle`` touches the prism swept by the footprint down to the target.

    The prism is closed, so tangency counts as in-path.
    """
    lo, hi = obstacle.lo, obstacle.hi
    z_low, z_high = target.altitude, vehicle.altitude + vehicle.body_height
    if hi[2] < z_low or lo[2] > z_high:
        return False
    return _disc_box_gap(vehicle.position[:2], vehicle.footprint_radius, lo, hi) <= CONTACT_TOLERANCE


def mirror_x(v: np.ndarray) -> np.ndarray:
    out = np.array(v, dtype=float)
    out[0] = -out[0]
    return out


def clearance(vehicle: VehicleState, box: ObstacleBox) -> float:
    """Euclidean gap between the vehicle cylinder and a box (0 when touching or overlapping)."""
    bottom = vehicle.altitude
    top = bottom + vehicle.body_height
    lo, hi = box.lo, box.hi
    dz = max(lo[2] - top, bottom - hi[2], 0.0)
    dh = max(_disc_box_gap(vehicle.position[:2], vehicle.footprint_radius, lo, hi), 0.0)
    return float(np.hypot(dz, dh))
