"""Closed-form detectability limits of the range-image detector.

An obstacle is always detected once two consecutive samples land on it, so
every surface dimension must span two of the widest angular gaps at its
range. Inverting that for a policy size gives the guaranteed range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lidar import LidarSpec, beam_gap


class DetectabilityConfigError(ValueError):
    pass


def min_detectable_dimension(distance, gap_deg: float):
    """Smallest surface dimension (m) guaranteed to be detected at ``distance``."""
    dim = 2.0 * gap_deg * np.asarray(distance, dtype=float) * math.pi / 180.0
    return dim if dim.ndim else float(dim)


@dataclass(frozen=True)
class DetectabilityModel:
    beam_gap: float
    policy_size: float = 1.0

    def __post_init__(self):
        if self.beam_gap <= 0 or self.policy_size <= 0:
            raise ValueError("beam_gap and policy_size must be positive")

    @classmethod
    def for_lidar(cls, spec: LidarSpec, policy_size: float = 1.0) -> "DetectabilityModel":
        return cls(beam_gap=beam_gap(spec), policy_size=policy_size)

    @property
    def h_threshold(self) -> float:
        return self.policy_size


def detection_range(model: DetectabilityModel, max_range: float | None = None) -> float:
    """Distance within which obstacles of the policy size are always detected.

    With ``max_range`` given, raises if the sensor cannot deliver that range.
    """
    d = 180.0 * model.policy_size / (2.0 * math.pi * model.beam_gap)
    if max_range is not None and d > max_range:
        raise DetectabilityConfigError(
            f"detection range {d:.3f} m exceeds the sensor range {max_range:.3f} m; "
            "reduce the policy size or use a denser sensor")
    return d


def detectability_curve(gap_deg: float, max_distance: float = 120.0, n: int = 121):
    """(distance, minimum dimension) samples for plotting."""
    d = np.linspace(0.0, max_distance, n)
    return d, min_detectable_dimension(d, gap_deg)
