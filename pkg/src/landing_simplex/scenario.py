"""Scenario configuration, built-in landing scenarios and the INI file format.

A scenario file is an INI document::

    [scenario]
    name = obstacle-below
    start = 0, 0, 100
    mode = dc                  ; wc | dc
    duration = 60

    [target]
    center = 0, 0, 0
    radius = 5

    [policy]
    policy_size = 1.0          ; smallest obstacle that must always be seen (m)
    d_stop_max = 25
    l_max = 0.15

    [disturbance]
    kind = constant            ; constant | step | sinusoid | composite
    amplitude = -440

    [obstacle.box1]
    center = 0, 0, 50
    half_extents = 1, 1, 1

A composite disturbance lists its parts, each in its own section::

    [disturbance]
    kind = composite
    parts = wind, gust
    [disturbance.wind]
    kind = constant
    ...
"""

from __future__ import annotations

import configparser
import enum
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .control import Composite, Constant, Sinusoid, Step
from .detector import Projection
from .scene import DEFAULT_FOOTPRINT_RADIUS, LandingTarget, ObstacleBox, vec3

# default lumped uncertainty: steady headwind-like force loss
DEFAULT_SIGMA = -440.0


class AMaxMode(enum.Enum):
    STATIC_WC = "wc"
    DYNAMIC_CONFIRMATION = "dc"


class ScenarioError(ValueError):
    """Inconsistent or unreadable scenario configuration."""


@dataclass(frozen=True)
class ScenarioConfig:
    name: str = "custom"
    start: np.ndarray = field(default_factory=lambda: vec3(0, 0, 100))
    obstacles: tuple[ObstacleBox, ...] = ()
    target: LandingTarget = field(default_factory=lambda: LandingTarget(vec3(0, 0, 0)))
    a_max_mode: AMaxMode = AMaxMode.DYNAMIC_CONFIRMATION
    disturbance: Callable[[float], float] = field(default_factory=lambda: Constant(DEFAULT_SIGMA))
    policy_size: float = 1.0
    D_stop_max: float = 25.0
    L_max: float = 0.15
    duration: float = 60.0
    seed: int = 0
    footprint_radius: float = DEFAULT_FOOTPRINT_RADIUS
    window_capacity: int = 400
    # hook for synthetic mission-layer detections; the default mission
    # layer sees nothing
    mission: Callable[[float], Sequence[Projection]] | None = None

    def __post_init__(self):
        object.__setattr__(self, "start", vec3(*np.asarray(self.start, dtype=float)))
        object.__setattr__(self, "obstacles", tuple(self.obstacles))
        if isinstance(self.a_max_mode, str):
            object.__setattr__(self, "a_max_mode", AMaxMode(self.a_max_mode))
        if self.start[2] <= self.target.altitude:
            raise ScenarioError("start altitude must be above the target")
        if self.duration <= 0:
            raise ScenarioError("duration must be positive")

    def with_mode(self, mode: AMaxMode | str) -> "ScenarioConfig":
        return replace(self, a_max_mode=AMaxMode(mode) if isinstance(mode, str) else mode)


def _box(x: float, y: float, z: float, name: str) -> ObstacleBox:
    return ObstacleBox(vec3(x, y, z), vec3(1, 1, 1), id=name)


BUILTIN = {
    "no-obstacle": ScenarioConfig(name="no-obstacle"),
    "obstacle-below": ScenarioConfig(name="obstacle-below", obstacles=(_box(0, 0, 50, "box"),)),
    "obstacle-in-path": ScenarioConfig(name="obstacle-in-path", obstacles=(_box(2, 0, 50, "box"),)),
    "obstacle-off-path": ScenarioConfig(name="obstacle-off-path", obstacles=(_box(3, 0, 50, "box"),)),
}


def capability_drop_scenario(drop_time: float = 10.0, a_after: float = 1.0, start_altitude: float = 250.0,
                             F_max: float = 14500.0, m: float = 1000.0, g: float = 9.81) -> ScenarioConfig:
    """Obstacle-free descent whose brake authority collapses mid-cruise."""
    sigma_after = (a_after + g) * m - F_max
    return ScenarioConfig(
        name="capability-drop",
        start=vec3(0, 0, start_altitude),
        disturbance=Step(before=DEFAULT_SIGMA, after=sigma_after, onset=drop_time),
        duration=60.0,
    )


def builtin(name: str) -> ScenarioConfig:
    if name == "capability-drop":
        return capability_drop_scenario()
    try:
        return BUILTIN[name]
    except KeyError:
        raise ScenarioError(f"unknown scenario {name!r}; built-ins: {sorted(BUILTIN)}") from None


# --- file format ----------------------------------------------------------

def _floats(text: str, n: int | None = None) -> list[float]:
    vals = [float(x) for x in text.replace(",", " ").split()]
    if n is not None and len(vals) != n:
        raise ScenarioError(f"expected {n} numbers, got {text!r}")
    return vals


def _disturbance(cp: configparser.ConfigParser, section: str):
    s = cp[section]
    kind = s.get("kind", "constant").strip().lower()
    if kind == "constant":
        return Constant(s.getfloat("amplitude", 0.0))
    if kind == "step":
        return Step(s.getfloat("before", 0.0), s.getfloat("after", 0.0), s.getfloat("onset", 0.0))
    if kind == "sinusoid":
        return Sinusoid(amplitude=s.getfloat("amplitude"), frequency=s.getfloat("frequency"),
                        offset=s.getfloat("offset", 0.0), phase=s.getfloat("phase", 0.0),
                        onset=s.getfloat("onset", 0.0))
    if kind == "composite":
        names = [p.strip() for p in s.get("parts", "").split(",") if p.strip()]
        return Composite(tuple(_disturbance(cp, f"{section}.{p}") for p in names))
    raise ScenarioError(f"unknown disturbance kind {kind!r}")


def parse_scenario(text: str) -> ScenarioConfig:
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ScenarioError(str(exc)) from exc
    sc = cp["scenario"] if cp.has_section("scenario") else {}
    kw = {}
    if "name" in sc:
        kw["name"] = sc["name"]
    if "start" in sc:
        kw["start"] = vec3(*_floats(sc["start"], 3))
    if "mode" in sc:
        kw["a_max_mode"] = AMaxMode(sc["mode"].strip().lower())
    for key, attr, conv in [("duration", "duration", float), ("seed", "seed", int),
                            ("footprint_radius", "footprint_radius", float),
                            ("window_capacity", "window_capacity", int)]:
        if key in sc:
            kw[attr] = conv(sc[key])
    if cp.has_section("target"):
        t = cp["target"]
        kw["target"] = LandingTarget(vec3(*_floats(t.get("center", "0 0 0"), 3)), t.getfloat("radius", 5.0))
    if cp.has_section("policy"):
        p = cp["policy"]
        for key, attr in [("policy_size", "policy_size"), ("d_stop_max", "D_stop_max"), ("l_max", "L_max")]:
            if key in p:
                kw[attr] = p.getfloat(key)
    if cp.has_section("disturbance"):
        kw["disturbance"] = _disturbance(cp, "disturbance")
    obstacles = []
    for sec in cp.sections():
        if sec.startswith("obstacle."):
            o = cp[sec]
            obstacles.append(ObstacleBox(vec3(*_floats(o["center"], 3)),
                                         vec3(*_floats(o.get("half_extents", "1 1 1"), 3)),
                                         id=sec.split(".", 1)[1]))
    kw["obstacles"] = tuple(obstacles)
    try:
        return ScenarioConfig(**kw)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc


def load_scenario(path_or_name: str | Path) -> ScenarioConfig:
    """Read a scenario file, or fall back to a built-in scenario name."""
    path = Path(path_or_name)
    if path.is_file():
        return parse_scenario(path.read_text())
    return builtin(str(path_or_name))


def _disturbance_lines(d, section: str) -> list[str]:
    if isinstance(d, Constant):
        return [f"[{section}]", "kind = constant", f"amplitude = {d.amplitude!r}"]
    if isinstance(d, Step):
        return [f"[{section}]", "kind = step", f"before = {d.before!r}", f"after = {d.after!r}",
                f"onset = {d.onset!r}"]
    if isinstance(d, Sinusoid):
        return [f"[{section}]", "kind = sinusoid", f"amplitude = {d.amplitude!r}",
                f"frequency = {d.frequency!r}", f"offset = {d.offset!r}", f"phase = {d.phase!r}",
                f"onset = {d.onset!r}"]
    if isinstance(d, Composite):
        names = [f"part{i}" for i in range(len(d.parts))]
        lines = [f"[{section}]", "kind = composite", f"parts = {', '.join(names)}"]
        for n, part in zip(names, d.parts):
            lines += [""] + _disturbance_lines(part, f"{section}.{n}")
        return lines
    raise ScenarioError(f"cannot serialise disturbance {d!r}")


def dump_scenario(cfg: ScenarioConfig) -> str:
    fmt = lambda v: ", ".join(repr(float(x)) for x in v)
    lines = ["[scenario]", f"name = {cfg.name}", f"start = {fmt(cfg.start)}",
             f"mode = {cfg.a_max_mode.value}", f"duration = {cfg.duration!r}", f"seed = {cfg.seed}",
             f"footprint_radius = {cfg.footprint_radius!r}", f"window_capacity = {cfg.window_capacity}",
             "", "[target]", f"center = {fmt(cfg.target.center)}", f"radius = {cfg.target.radius!r}",
             "", "[policy]", f"policy_size = {cfg.policy_size!r}", f"d_stop_max = {cfg.D_stop_max!r}",
             f"l_max = {cfg.L_max!r}", ""]
    lines += _disturbance_lines(cfg.disturbance, "disturbance")
    for i, box in enumerate(cfg.obstacles):
        name = box.id if box.id is not None else f"box{i}"
        lines += ["", f"[obstacle.{name}]", f"center = {fmt(box.center)}",
                  f"half_extents = {fmt(box.half_extents)}"]
    return "\n".join(lines) + "\n"
