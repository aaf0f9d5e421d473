"""Trapezoidal vertical landing profile.

Accelerate down to the current safe speed, hold it, then brake along a
constant-deceleration flare so the profile reaches the touchdown speed
``touchdown_height`` above the target. The safe speed and brake authority
are re-read every step, so a capability change reshapes the profile on the
fly. Under a hover override the setpoint follows the vehicle down while it
brakes and is frozen once it has stopped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .scene import LandingTarget, VehicleState


@dataclass
class Setpoint:
    p: float
    v: float
    a: float = 0.0


class LandingPlanner:
    def __init__(self, accel: float = 3.0, brake_fraction: float = 0.9,
                 touchdown_speed: float = 0.5, touchdown_height: float = 0.5,
                 stopped_speed: float = 0.1):
        if accel <= 0 or not 0 < brake_fraction <= 1 or touchdown_speed <= 0:
            raise ValueError("accel, brake_fraction and touchdown_speed must be positive")
        self.accel = accel
        self.brake_fraction = brake_fraction
        self.touchdown_speed = touchdown_speed
        self.touchdown_height = touchdown_height
        self.stopped_speed = stopped_speed
        self.setpoint: Setpoint | None = None
        self.hovering = False
        self._t: float | None = None

    @property
    def target_a(self) -> float:
        return self.setpoint.a if self.setpoint is not None else 0.0

    def reset(self) -> None:
        self.setpoint = None
        self.hovering = False
        self._t = None

    def _hover(self, vehicle: VehicleState) -> Setpoint:
        sp = self.setpoint
        if not self.hovering or abs(vehicle.vertical_velocity) > self.stopped_speed:
            sp.p = vehicle.altitude
        sp.v, sp.a = 0.0, 0.0
        self.hovering = True
        return sp

    def flare_speed(self, height: float, a_brake: float) -> float:
        """Descent speed of the flare curve ``height`` above the target."""
        h = max(height - self.touchdown_height, 0.0)
        return math.sqrt(self.touchdown_speed ** 2 + 2.0 * a_brake * h)

    def plan_targets(self, vehicle: VehicleState, target: LandingTarget, v_limit: float,
                     t: float, a_brake: float | None = None,
                     hover: bool = False) -> tuple[float, float]:
        if v_limit <= 0:
            raise ValueError("v_limit must be positive")
        dt = 0.0 if self._t is None else max(t - self._t, 0.0)
        self._t = t
        if self.setpoint is None or (self.hovering and not hover):
            # (re)start from the vehicle's own state
            self.setpoint = Setpoint(vehicle.altitude, vehicle.vertical_velocity)
            self.hovering = False
        if hover:
            sp = self._hover(vehicle)
            return sp.p, sp.v

        sp = self.setpoint
        brake = self.brake_fraction * (a_brake if a_brake is not None else 1.0)
        height = sp.p - target.altitude
        speed = -sp.v

        cap = min(v_limit, self.flare_speed(height, brake))
        if height <= self.touchdown_height:
            cap = self.touchdown_speed
        if speed < cap:
            new_speed = min(speed + self.accel * dt, cap)
        else:
            # never slow faster than the brake, even where the sampled curve is steeper
            new_speed = max(speed - brake * dt, cap)
        new_v = -new_speed
        sp.a = (new_v - sp.v) / dt if dt > 0 else 0.0
        sp.p = max(sp.p + 0.5 * (sp.v + new_v) * dt, target.altitude)
        sp.v = new_v
        return sp.p, sp.v
