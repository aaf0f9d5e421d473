"""Synthetic downward-facing rotating LiDAR.

Rays are cast analytically against the ground plane and every axis-aligned
obstacle. Row ``r`` is laser ``r`` (inclination ``xi[r]`` degrees below the
horizon, ``xi[0] == 90`` points straight down); column ``c`` is azimuth
``c * rotation_step`` degrees, measured counter-clockwise from +x.

Within ``max_range`` a missing return means the ray hit nothing. Real
hardware only approximates this (absorbent surfaces, weather); the
detectability guarantee assumes it.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .scene import Scene, VehicleState

NO_RETURN = np.nan
GROUND_ID = -1
NO_HIT_ID = -2


def default_inclinations(n: int = 32, step: float = 1.0) -> np.ndarray:
    return 90.0 - step * np.arange(n, dtype=float)


@dataclass(frozen=True)
class LidarSpec:
    inclinations: np.ndarray = field(default_factory=default_inclinations)
    rotation_step: float = 1.0
    rotation_period: float = 0.1
    max_range: float = 120.0

    def __post_init__(self):
        xi = np.asarray(self.inclinations, dtype=float)
        object.__setattr__(self, "inclinations", xi)
        if xi.ndim != 1 or xi.size < 2:
            raise ValueError("need at least two lasers")
        if xi[0] != 90.0:
            raise ValueError("lowest laser must point straight down (xi_0 = 90)")
        if np.any(np.diff(xi) >= 0):
            raise ValueError("inclinations must be strictly decreasing")
        if not 0 < self.rotation_step <= 360:
            raise ValueError("rotation_step must lie in (0, 360]")
        if abs(360.0 / self.rotation_step - round(360.0 / self.rotation_step)) > 1e-9:
            raise ValueError("rotation_step must divide 360")
        if self.max_range <= 0 or self.rotation_period <= 0:
            raise ValueError("max_range and rotation_period must be positive")

    @property
    def n_lasers(self) -> int:
        return int(self.inclinations.size)

    @property
    def n_columns(self) -> int:
        return int(round(360.0 / self.rotation_step))

    @property
    def azimuths(self) -> np.ndarray:
        return self.rotation_step * np.arange(self.n_columns, dtype=float)

    def ray_directions(self) -> np.ndarray:
        """Unit ray directions, shape (N, C, 3)."""
        xi = np.deg2rad(self.inclinations)[:, None]
        az = np.deg2rad(self.azimuths)[None, :]
        d = np.empty((self.n_lasers, self.n_columns, 3))
        d[..., 0] = np.cos(xi) * np.cos(az)
        d[..., 1] = np.cos(xi) * np.sin(az)
        d[..., 2] = -np.sin(xi) * np.ones_like(az)
        # straight-down rays: kill the round-off horizontal component
        d[np.isclose(np.broadcast_to(xi, d.shape[:2]), np.pi / 2), :2] = 0.0
        return d


@dataclass(frozen=True)
class RangeImage:
    """N x C ranges in metres, NaN where there was no return.

    ``hit_ids`` records what each ray struck (obstacle index into the scene,
    ``GROUND_ID`` or ``NO_HIT_ID``); the detector never reads it, tests do.
    """

    ranges: np.ndarray
    timestamp: float = 0.0
    hit_ids: np.ndarray | None = None

    @property
    def valid(self) -> np.ndarray:
        return np.isfinite(self.ranges)

    @property
    def shape(self) -> tuple[int, int]:
        return self.ranges.shape

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["row", "column", "range"])
            for (r, c), value in np.ndenumerate(self.ranges):
                w.writerow([r, c, "" if not np.isfinite(value) else repr(float(value))])

    @classmethod
    def from_csv(cls, path, timestamp: float = 0.0) -> "RangeImage":
        with open(Path(path), newline="") as fh:
            rows = list(csv.DictReader(fh))
        n = max(int(x["row"]) for x in rows) + 1
        c = max(int(x["column"]) for x in rows) + 1
        ranges = np.full((n, c), NO_RETURN)
        for x in rows:
            if x["range"]:
                ranges[int(x["row"]), int(x["column"])] = float(x["range"])
        return cls(ranges=ranges, timestamp=timestamp)


def _ray_box_entry(origin: np.ndarray, dirs: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Slab test; returns entry distance per ray (inf on miss). dirs: (..., 3)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = 1.0 / dirs
        t1 = (lo - origin) * inv
        t2 = (hi - origin) * inv
    # zero direction components: inside the slab -> unbounded, outside -> miss
    parallel = dirs == 0.0
    inside = (origin >= lo) & (origin <= hi)
    t_near = np.where(parallel, np.where(inside, -np.inf, np.inf), np.minimum(t1, t2))
    t_far = np.where(parallel, np.where(inside, np.inf, -np.inf), np.maximum(t1, t2))
    t_enter = t_near.max(axis=-1)
    t_exit = t_far.min(axis=-1)
    hit = (t_enter <= t_exit) & (t_exit > 0)
    # sensor inside a box: the surface is right there
    t = np.where(t_enter > 0, t_enter, 0.0)
    return np.where(hit, t, np.inf)


def render_range_image(spec: LidarSpec, vehicle: VehicleState, scene: Scene,
                       timestamp: float = 0.0) -> RangeImage:
    origin = vehicle.position
    if origin[2] < scene.ground_z:
        raise ValueError("sensor is below the ground plane")
    dirs = spec.ray_directions()

    height = origin[2] - scene.ground_z
    best = np.where(dirs[..., 2] < 0, height / -np.minimum(dirs[..., 2], -1e-300), np.inf)
    ids = np.full(best.shape, GROUND_ID, dtype=int)
    for k, box in enumerate(scene.obstacles):
        t = _ray_box_entry(origin, dirs, box.lo, box.hi)
        closer = t < best
        best = np.where(closer, t, best)
        ids[closer] = k

    out_of_range = ~(best <= spec.max_range)
    ranges = np.where(out_of_range, NO_RETURN, best)
    ids[out_of_range] = NO_HIT_ID
    return RangeImage(ranges=ranges, timestamp=timestamp, hit_ids=ids)


def returns_to_points(image: RangeImage, spec: LidarSpec, origin) -> np.ndarray:
    """World coordinates of every cell, shape (N, C, 3); NaN where invalid."""
    return np.asarray(origin, dtype=float) + spec.ray_directions() * image.ranges[..., None]


def beam_gap(spec: LidarSpec) -> float:
    """Largest angular gap between neighbouring samples, in degrees."""
    return float(max(spec.rotation_step, np.max(np.abs(np.diff(spec.inclinations)))))
