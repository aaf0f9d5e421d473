"""The adaptive controller estimates the lumped disturbance and, from it, how
hard the vehicle can still brake.

A hovering vehicle is hit by a 20 % loss of thrust at t = 1 s.
"""

from landing_simplex.control import (L1Controller, PlantParams, PlantState, Step, default_worst_case,
                                     plant_step)

params = PlantParams()
ctrl = L1Controller(params)
sigma = -0.2 * params.F_max
disturbance = Step(before=0.0, after=sigma, onset=1.0)
plant = PlantState(p=50.0, v=0.0)

print(f"static worst-case braking authority: {default_worst_case(params):.2f} m/s^2")
print("   t     sigma   sigma_bar   a_max_dc   altitude")
T_s = ctrl.cfg.T_s
for k in range(int(3.0 / T_s)):
    t = k * T_s
    u, report = ctrl.control_step(plant, 50.0, 0.0, t)
    if k % 100 == 0 or k in (201, 202, 205, 210):
        print(f"{t:5.3f} {disturbance(t):9.1f} {ctrl.state.sigma_bar:10.1f} {report.a_max_dc:10.3f} {plant.p:10.4f}")
    plant = plant_step(plant, params, u, disturbance(t), T_s)
