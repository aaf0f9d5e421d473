"""Deterministic fixed-step software-in-the-loop landing simulation.

One clock drives everything: the controller runs every ``T_s`` and the
LiDAR/detector/override chain once per sensor rotation. The mission layer
is a stub that reports no detections unless the scenario injects some, so
every safety-layer detection counts as a mission-layer miss.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .control import L1Config, L1Controller, PlantParams, PlantState, default_worst_case, plant_step
from .detectability import DetectabilityModel, detection_range
from .detector import DetectorConfig, detect
from .envelope import Envelope, EnvelopeParams, SlidingWindow, envelope_check
from .lidar import LidarSpec, render_range_image
from .monitor import Decision, DecisionContext, MonitorConfig, OverrideMonitor
from .planner import LandingPlanner
from .scenario import AMaxMode, ScenarioConfig, ScenarioError
from .scene import Scene, VehicleState, clearance, collision_check, in_landing_path

logger = logging.getLogger(__name__)

TOUCHDOWN_SPEED_LIMIT = 0.6
HOVER_SPEED = 0.05
HOVER_SETTLE = 1.0
MIN_A_MAX = 1e-3

TRACE_COLUMNS = ("t", "p", "v", "target_p", "target_v", "v_safe_max", "a_max", "a_max_dc",
                 "sigma", "sigma_hat", "sigma_bar", "v_hat", "u_b", "u_ad", "u_total",
                 "decision", "D_obs", "envelope")


@dataclass
class RunMetrics:
    scenario: str
    mode: str
    landed: bool = False
    collided: bool = False
    hovered: bool = False
    timeout: bool = False
    landing_time: float | None = None
    end_time: float = 0.0
    touchdown_speed: float | None = None
    min_obstacle_clearance: float | None = None
    final_clearance: float | None = None
    envelope_violation_time: float = 0.0

    @property
    def terminal(self) -> str:
        if self.collided:
            return "collision"
        if self.landed:
            return "landed"
        if self.hovered:
            return "hover"
        return "timeout"


@dataclass
class RunResult:
    metrics: RunMetrics
    trace: dict[str, np.ndarray]
    transitions: list = field(default_factory=list)
    violations: list[tuple[float, float]] = field(default_factory=list)
    D_det: float = 0.0
    a_max_wc: float = 0.0


@dataclass(frozen=True)
class SimSettings:
    """Everything a scenario does not say, with the defaults used throughout."""

    plant: PlantParams = field(default_factory=PlantParams)
    l1: L1Config = field(default_factory=L1Config)
    lidar: LidarSpec = field(default_factory=LidarSpec)
    alpha_threshold: float = 10.0
    monitor: MonitorConfig = field(default_factory=MonitorConfig)
    a_max_wc: float | None = None


def _nearest_in_path(detections, vehicle, target) -> float | None:
    ranges = [o.closest_range for o in detections if in_landing_path(o.box, vehicle, target)]
    return min(ranges) if ranges else None


def run_scenario(cfg: ScenarioConfig, settings: SimSettings | None = None) -> RunResult:
    settings = settings or SimSettings()
    plant_params = settings.plant
    T_s = settings.l1.T_s
    spec = settings.lidar

    model = DetectabilityModel.for_lidar(spec, cfg.policy_size)
    try:
        D_det = detection_range(model, spec.max_range)
        a_wc = settings.a_max_wc if settings.a_max_wc is not None else default_worst_case(plant_params)
        base_env = EnvelopeParams(D_det=D_det, D_stop_max=cfg.D_stop_max, L_max=cfg.L_max, a_max=a_wc)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc

    det_cfg = DetectorConfig(alpha_threshold=settings.alpha_threshold, h_threshold=model.h_threshold)
    scene = Scene(obstacles=cfg.obstacles, target=cfg.target)
    dynamic = cfg.a_max_mode is AMaxMode.DYNAMIC_CONFIRMATION

    window = SlidingWindow(cfg.window_capacity)
    controller = L1Controller(plant_params, cfg=settings.l1)
    planner = LandingPlanner()
    monitor = OverrideMonitor()
    plant = PlantState(p=float(cfg.start[2]), v=0.0)
    controller.reset(plant.v)

    scan_every = max(int(round(spec.rotation_period / T_s)), 1)
    n_steps = int(math.ceil(cfg.duration / T_s))
    metrics = RunMetrics(scenario=cfg.name, mode=cfg.a_max_mode.value)
    rows = {k: [] for k in TRACE_COLUMNS}
    violations: list[tuple[float, float]] = []
    violation_start: float | None = None
    detections = []
    decision = monitor.current
    hover_since: float | None = None
    min_clear = math.inf

    def vehicle_at(state: PlantState) -> VehicleState:
        return VehicleState(position=(cfg.start[0], cfg.start[1], state.p), vertical_velocity=state.v,
                            footprint_radius=cfg.footprint_radius)

    t = 0.0
    for k in range(n_steps):
        t = k * T_s
        a_max = window.worst_or(a_wc) if dynamic else a_wc
        if a_max < MIN_A_MAX:
            # no confirmed braking authority: crawl instead of failing the envelope algebra
            a_max = MIN_A_MAX
        env = base_env.with_a_max(a_max)
        v_limit = env.v_safe
        vehicle = vehicle_at(plant)

        if k % scan_every == 0:
            image = render_range_image(spec, vehicle, scene, timestamp=t)
            _, detections = detect(image, spec, det_cfg, vehicle, cfg.target)
            mission = cfg.mission(t) if cfg.mission is not None else ()
            ctx = DecisionContext(vehicle, cfg.target, env, settings.monitor)
            decision = monitor.update(mission, detections, ctx, t)
        D_obs = _nearest_in_path(detections, vehicle, cfg.target)
        hover = decision.kind is Decision.HOVER

        target_p, target_v = planner.plan_targets(vehicle, cfg.target, v_limit, t,
                                                  a_brake=a_max, hover=hover)
        u, report = controller.control_step(plant, target_p, target_v, t, target_a=planner.target_a)
        if dynamic:
            window.insert(report.a_max_dc)

        status = envelope_check(abs(plant.v), D_obs, env)
        if status is Envelope.VIOLATION:
            metrics.envelope_violation_time += T_s
            if violation_start is None:
                violation_start = t
                logger.warning("t=%.3f envelope violation at v=%.2f m/s (v_safe %.2f)", t, plant.v, v_limit)
        elif violation_start is not None:
            violations.append((violation_start, t))
            violation_start = None

        sigma = cfg.disturbance(t)
        st = controller.state
        for key, val in (("t", t), ("p", plant.p), ("v", plant.v), ("target_p", target_p),
                         ("target_v", target_v), ("v_safe_max", v_limit), ("a_max", a_max),
                         ("a_max_dc", report.a_max_dc), ("sigma", sigma), ("sigma_hat", st.sigma_hat),
                         ("sigma_bar", st.sigma_bar), ("v_hat", st.v_hat), ("u_b", st.u_b),
                         ("u_ad", st.u_ad), ("u_total", u), ("decision", decision.kind.value),
                         ("D_obs", np.nan if D_obs is None else D_obs), ("envelope", status.value)):
            rows[key].append(val)

        plant = plant_step(plant, plant_params, u, sigma, T_s)
        t_next = (k + 1) * T_s
        nxt = vehicle_at(plant)
        for box in scene.obstacles:
            min_clear = min(min_clear, clearance(nxt, box))

        if plant.p <= cfg.target.altitude:
            metrics.touchdown_speed = abs(plant.v)
            if abs(plant.v) <= TOUCHDOWN_SPEED_LIMIT and not collision_check(
                    nxt.at_altitude(cfg.target.altitude), scene):
                metrics.landed = True
                metrics.landing_time = t_next
            else:
                metrics.collided = True
            t = t_next
            break
        if collision_check(nxt, scene):
            metrics.collided = True
            t = t_next
            break
        if hover and abs(plant.v) < HOVER_SPEED:
            hover_since = t_next if hover_since is None else hover_since
            if t_next - hover_since >= HOVER_SETTLE:
                metrics.hovered = True
                t = t_next
                break
        else:
            hover_since = None
    else:
        metrics.timeout = True
        t = n_steps * T_s

    if violation_start is not None:
        violations.append((violation_start, t))
    metrics.end_time = t
    if scene.obstacles:
        metrics.min_obstacle_clearance = min_clear
        metrics.final_clearance = min(clearance(vehicle_at(plant), b) for b in scene.obstacles)

    trace = {k: np.asarray(v) for k, v in rows.items()}
    return RunResult(metrics=metrics, trace=trace, transitions=list(monitor.transitions),
                     violations=violations, D_det=D_det, a_max_wc=a_wc)


def compare_modes(cfg: ScenarioConfig, settings: SimSettings | None = None) -> dict:
    """Run a scenario under both capability modes."""
    wc = run_scenario(cfg.with_mode(AMaxMode.STATIC_WC), settings)
    dc = run_scenario(cfg.with_mode(AMaxMode.DYNAMIC_CONFIRMATION), settings)
    ratio = None
    if wc.metrics.landing_time and dc.metrics.landing_time:
        ratio = wc.metrics.landing_time / dc.metrics.landing_time
    return {"wc": wc, "dc": dc, "time_ratio": ratio}
