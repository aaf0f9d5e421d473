"""Fault detection, fault criticality and the override decision."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .detector import DetectedObstacle, Projection
from .envelope import EnvelopeParams, stopping_distance, v_safe_max
from .scene import LandingTarget, ObstacleBox, VehicleState, in_landing_path

logger = logging.getLogger(__name__)

MissionDetectionSet = Sequence[Projection]


class Decision(enum.Enum):
    NO_OVERRIDE = "no_override"
    CONTROL_OVERRIDE = "control_override"
    HOVER = "hover"


@dataclass(frozen=True)
class OverrideDecision:
    kind: Decision
    cause: DetectedObstacle | None = None

    def __post_init__(self):
        if self.kind is Decision.HOVER and self.cause is None:
            raise ValueError("a hover decision needs a cause")


@dataclass(frozen=True)
class MonitorConfig:
    coverage_margin: float = 0.0      # degrees
    v_obs_max: float = 0.0            # m/s, existence-region growth rate
    horizon: float = 10.0             # s
    reaction_time: float = 0.2        # s of travel added: one scan plus one scan of speed growth
    hazard_tolerance: float = 0.05    # fraction above v_safe before control override
    association_tolerance: float = 1.0  # m, to re-identify a latched obstacle


@dataclass(frozen=True)
class DecisionContext:
    vehicle: VehicleState
    target: LandingTarget
    envelope: EnvelopeParams
    config: MonitorConfig = field(default_factory=MonitorConfig)

    @property
    def descent_speed(self) -> float:
        return max(-self.vehicle.vertical_velocity, 0.0)

    def stopping_reach(self) -> float:
        v = self.descent_speed
        env = self.envelope
        return stopping_distance(v, env.a_max, env.L_max) + v * self.config.reaction_time


def is_detected(obs: DetectedObstacle, mission: MissionDetectionSet, margin: float = 0.0) -> bool:
    """True if a mission-layer rectangle fully covers the obstacle's projection."""
    return any(m.contains(obs.projection, margin) for m in mission)


def _inflate(box: ObstacleBox, r: float) -> ObstacleBox:
    return ObstacleBox(box.center, box.half_extents + r, box.id) if r > 0 else box


def is_collision_risk(obs: DetectedObstacle, ctx: DecisionContext) -> bool:
    vehicle, target, cfg = ctx.vehicle, ctx.target, ctx.config
    reach = ctx.stopping_reach()
    box = obs.box
    if in_landing_path(box, vehicle, target):
        return obs.closest_range <= reach
    # off-path: grow the obstacle by how far it could move within the horizon
    # (box inflation over-approximates the swept sphere) and test it against
    # the stretch of descent corridor the vehicle covers in that time
    region = _inflate(box, cfg.v_obs_max * cfg.horizon)
    z_low = max(target.altitude, vehicle.altitude - ctx.descent_speed * cfg.horizon - reach)
    corridor_target = LandingTarget(np.array([*target.center[:2], z_low]), target.radius)
    return in_landing_path(region, vehicle, corridor_target)


def is_control_hazard(ctx: DecisionContext) -> bool:
    env = ctx.envelope
    limit = v_safe_max(env.a_max, env.L_max, env.D_stop_max)
    return ctx.descent_speed > limit * (1.0 + ctx.config.hazard_tolerance)


def decide(mission: MissionDetectionSet, safety: Iterable[DetectedObstacle],
           ctx: DecisionContext) -> OverrideDecision:
    for obs in sorted(safety, key=lambda o: o.closest_range):
        if is_detected(obs, mission, ctx.config.coverage_margin):
            continue
        if is_collision_risk(obs, ctx):
            return OverrideDecision(Decision.HOVER, obs)
    if is_control_hazard(ctx):
        return OverrideDecision(Decision.CONTROL_OVERRIDE)
    return OverrideDecision(Decision.NO_OVERRIDE)


def _boxes_touch(a: ObstacleBox, b: ObstacleBox, tol: float) -> bool:
    return bool(np.all(a.lo - tol <= b.hi) and np.all(b.lo - tol <= a.hi))


@dataclass
class Transition:
    t: float
    previous: Decision
    current: Decision
    cause_range: float | None
    stopping_reach: float


class OverrideMonitor:
    """Runs ``decide`` per detection update and latches hover.

    A hover stays latched until its cause is matched by the mission layer,
    disappears from the safety detections, or stops being a risk. An
    obstacle inside the landing path stays a risk to the landing
    trajectory even once the vehicle has stopped.
    """

    def __init__(self):
        self.latched: DetectedObstacle | None = None
        self.current = OverrideDecision(Decision.NO_OVERRIDE)
        self.transitions: list[Transition] = []

    def _associate(self, safety: Sequence[DetectedObstacle], tol: float) -> list[DetectedObstacle]:
        # the cause's cluster can split or shift between scans at close range
        ref = self.latched.box
        close = [o for o in safety if _boxes_touch(ref, o.box, tol)]
        return sorted(close, key=lambda o: o.closest_range)

    def _hold(self, mission, safety, ctx) -> DetectedObstacle | None:
        for obs in self._associate(safety, ctx.config.association_tolerance):
            if is_detected(obs, mission, ctx.config.coverage_margin):
                continue
            if in_landing_path(obs.box, ctx.vehicle, ctx.target) or is_collision_risk(obs, ctx):
                return obs
        return None

    def update(self, mission: MissionDetectionSet, safety: Sequence[DetectedObstacle],
               ctx: DecisionContext, t: float = 0.0) -> OverrideDecision:
        decision = decide(mission, safety, ctx)
        if decision.kind is not Decision.HOVER and self.latched is not None:
            held = self._hold(mission, safety, ctx)
            if held is not None:
                decision = OverrideDecision(Decision.HOVER, held)
        self.latched = decision.cause if decision.kind is Decision.HOVER else None

        if decision.kind is not self.current.kind:
            cause_range = decision.cause.closest_range if decision.cause is not None else None
            tr = Transition(t, self.current.kind, decision.kind, cause_range, ctx.stopping_reach())
            self.transitions.append(tr)
            logger.info("t=%.3f %s -> %s (cause range %s, stopping reach %.2f m)",
                        t, tr.previous.value, tr.current.value, cause_range, tr.stopping_reach)
        self.current = decision
        return decision
