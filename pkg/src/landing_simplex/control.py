"""Vertical-axis plant and L1 adaptive controller.

Plant::

    p' = v
    v' = -g + (u + sigma) / m

with ``u`` saturated to ``[0, F_max]`` and ``sigma`` the lumped uncertainty
(wind, mass error, engine loss) expressed as a force.

The controller is a PD baseline with gravity feedforward plus an L1
augmentation: a velocity predictor, the piecewise-constant adaptation law
and a first-order low-pass filter. The filtered estimate doubles as the
confirmed climb/brake authority ``(F_max + sigma_bar) / m - g``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

G = 9.81


@dataclass(frozen=True)
class PlantParams:
    m: float = 1000.0
    F_max: float = 14500.0
    g: float = G

    def __post_init__(self):
        if self.m <= 0:
            raise ValueError("mass must be positive")
        if self.F_max <= self.m * self.g:
            raise ValueError("F_max must exceed the weight, otherwise hover is infeasible")

    @property
    def ideal_a_max(self) -> float:
        return self.F_max / self.m - self.g


@dataclass(frozen=True)
class PlantState:
    p: float
    v: float = 0.0


def plant_step(state: PlantState, params: PlantParams, u_total: float, sigma: float,
               dt: float) -> PlantState:
    """Advance one step holding the acceleration constant (exact for ZOH input)."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    a = -params.g + (u_total + sigma) / params.m
    return PlantState(p=state.p + state.v * dt + 0.5 * a * dt * dt, v=state.v + a * dt)


# --- uncertainty profiles -------------------------------------------------

@dataclass(frozen=True)
class Constant:
    amplitude: float = 0.0

    def __call__(self, t: float) -> float:
        return self.amplitude


@dataclass(frozen=True)
class Step:
    before: float = 0.0
    after: float = 0.0
    onset: float = 0.0

    def __call__(self, t: float) -> float:
        return self.after if t >= self.onset else self.before


@dataclass(frozen=True)
class Sinusoid:
    amplitude: float
    frequency: float
    offset: float = 0.0
    phase: float = 0.0
    onset: float = 0.0

    def __call__(self, t: float) -> float:
        if t < self.onset:
            return self.offset
        return self.offset + self.amplitude * math.sin(2 * math.pi * self.frequency * (t - self.onset) + self.phase)


@dataclass(frozen=True)
class Composite:
    parts: tuple = ()

    def __call__(self, t: float) -> float:
        return float(sum(part(t) for part in self.parts))


# --- worst-case capability -----------------------------------------------

class InfeasibleCapability(ValueError):
    pass


# 10 % extra mass at full load and a 2235 N lumped force loss (strong wind,
# two engines out) on the default airframe
WORST_CASE_MASS_FACTOR = 1.10
WORST_CASE_DISTURBANCE = 2235.0


def a_max_worst_case(F_max: float, d_max: float, m_max: float, g: float = G) -> float:
    if m_max <= 0:
        raise ValueError("m_max must be positive")
    a = (F_max - abs(d_max)) / m_max - g
    if a <= 0:
        raise InfeasibleCapability(f"worst-case deceleration {a:.3f} m/s^2 is not positive")
    return a


def default_worst_case(params: PlantParams) -> float:
    return a_max_worst_case(params.F_max, WORST_CASE_DISTURBANCE,
                            WORST_CASE_MASS_FACTOR * params.m, params.g)


# --- controller -----------------------------------------------------------

@dataclass(frozen=True)
class Gains:
    k_p: float
    k_v: float

    @classmethod
    def default(cls, params: PlantParams) -> "Gains":
        return cls(k_p=2.0 * params.m, k_v=2.8 * params.m)


@dataclass(frozen=True)
class L1Config:
    A_s: float = -50.0
    T_s: float = 0.005
    cutoff_hz: float = 100.0
    # feed the filter with the interval uncertainty recovered from the
    # prediction error rather than the raw law output; the raw output carries
    # a steady gain of exp(A_s*T_s)
    compensate_hold_bias: bool = True

    def __post_init__(self):
        if self.A_s >= 0:
            raise ValueError("A_s must be negative (Hurwitz)")
        if self.T_s <= 0 or self.cutoff_hz <= 0:
            raise ValueError("T_s and cutoff must be positive")

    @property
    def omega(self) -> float:
        return 2 * math.pi * self.cutoff_hz

    @property
    def decay(self) -> float:
        return math.exp(self.A_s * self.T_s)

    @property
    def phi(self) -> float:
        return (self.decay - 1.0) / self.A_s


@dataclass
class ControllerState:
    v_hat: float = 0.0
    sigma_hat: float = 0.0
    sigma_bar: float = 0.0
    u_b: float = 0.0
    u_ad: float = 0.0
    u_total: float = 0.0
    v_meas: float | None = None


@dataclass(frozen=True)
class CapabilityReport:
    a_max_dc: float
    timestamp: float


def baseline_input(state: PlantState, target_p: float, target_v: float, gains: Gains,
                   params: PlantParams, target_a: float = 0.0) -> float:
    """PD on position/velocity error plus weight (and optional acceleration) feedforward."""
    return (params.m * (params.g + target_a)
            + gains.k_p * (target_p - state.p)
            + gains.k_v * (target_v - state.v))


def adaptation_update(cfg: L1Config, v_tilde: float, params: PlantParams) -> float:
    """Piecewise-constant law: cancel the predictor error carried into the next step."""
    mu = cfg.decay * v_tilde
    return -params.m * mu / cfg.phi


def step_residual(cfg: L1Config, v_tilde: float, sigma_hat: float, params: PlantParams) -> float:
    """exp(A_s T_s) v_tilde + Phi B sigma_hat; zero when sigma_hat comes from the law."""
    return cfg.decay * v_tilde + cfg.phi * sigma_hat / params.m


def lowpass_step(cfg: L1Config, sigma_bar: float, sigma_in: float) -> tuple[float, float]:
    sigma_bar = sigma_bar + (1.0 - math.exp(-cfg.omega * cfg.T_s)) * (sigma_in - sigma_bar)
    return sigma_bar, -sigma_bar


def predictor_step(cfg: L1Config, ctrl: ControllerState, v_meas: float,
                   params: PlantParams) -> float:
    """Advance the velocity predictor across the last sample interval.

    Uses the input and estimate held over that interval and the two velocity
    measurements bracketing it. The plant acceleration is constant across a
    sample, so the error dynamics ``v_tilde' = A_s v_tilde + (pred_acc - acc)``
    integrate exactly.
    """
    if ctrl.v_meas is None:
        return v_meas
    v_tilde = ctrl.v_hat - ctrl.v_meas
    acc_model = -params.g + (ctrl.u_total + ctrl.sigma_hat) / params.m
    acc_meas = (v_meas - ctrl.v_meas) / cfg.T_s
    return v_meas + cfg.decay * v_tilde + cfg.phi * (acc_model - acc_meas)


class L1Controller:
    """Baseline + L1 augmentation, stepped once per ``cfg.T_s``."""

    def __init__(self, params: PlantParams | None = None, gains: Gains | None = None,
                 cfg: L1Config | None = None):
        self.params = params or PlantParams()
        self.gains = gains or Gains.default(self.params)
        self.cfg = cfg or L1Config()
        self.state = ControllerState()

    def reset(self, v0: float = 0.0) -> None:
        self.state = ControllerState(v_hat=v0)

    def control_step(self, plant: PlantState, target_p: float, target_v: float, t: float,
                     target_a: float = 0.0) -> tuple[float, CapabilityReport]:
        cfg, params, st = self.cfg, self.params, self.state

        st.v_hat = predictor_step(cfg, st, plant.v, params)
        st.v_meas = plant.v
        v_tilde = st.v_hat - plant.v

        st.sigma_hat = adaptation_update(cfg, v_tilde, params)
        if cfg.compensate_hold_bias:
            sigma_in = st.sigma_hat / cfg.decay
        else:
            sigma_in = st.sigma_hat
        st.sigma_bar, st.u_ad = lowpass_step(cfg, st.sigma_bar, sigma_in)

        st.u_b = baseline_input(plant, target_p, target_v, self.gains, params, target_a)
        st.u_total = float(np.clip(st.u_b + st.u_ad, 0.0, params.F_max))

        a_max_dc = (params.F_max + st.sigma_bar) / params.m - params.g
        return st.u_total, CapabilityReport(a_max_dc=a_max_dc, timestamp=t)
