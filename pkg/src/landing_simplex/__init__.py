"""Runtime-assured vertical landing: LiDAR obstacle detection, a safe-speed
envelope, an override monitor and an L1 adaptive controller, closed in a
deterministic simulation loop."""

from .control import L1Config, L1Controller, PlantParams, PlantState, default_worst_case
from .detectability import DetectabilityModel, detection_range, min_detectable_dimension
from .detector import DetectorConfig, ReturnLabel, detect
from .envelope import EnvelopeParams, SlidingWindow, envelope_check, stopping_distance, v_safe_max
from .harness import RunMetrics, RunResult, compare_modes, run_scenario
from .lidar import LidarSpec, RangeImage, render_range_image
from .monitor import Decision, OverrideMonitor, decide
from .scenario import AMaxMode, ScenarioConfig, ScenarioError, builtin, load_scenario
from .scene import LandingTarget, ObstacleBox, Scene, VehicleState

__version__ = "0.1.0"
