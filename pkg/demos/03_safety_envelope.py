"""Safe descent speed as a function of confirmed braking authority.

Writes the four envelope curves (worst case vs confirmed, with and without
latency) into ./demo_out and prints the headline speeds.
"""

from pathlib import Path

from landing_simplex.control import PlantParams, default_worst_case
from landing_simplex.envelope import stopping_distance, v_safe_max
from landing_simplex.reports import write_envelope_csvs
from landing_simplex.scenario import DEFAULT_SIGMA

params = PlantParams()
a_wc = default_worst_case(params)
a_dc = (params.F_max + DEFAULT_SIGMA) / params.m - params.g
L, D_stop = 0.15, 25.0
for label, a in (("worst case", a_wc), ("confirmed", a_dc)):
    v = v_safe_max(a, L, D_stop)
    print(f"{label:10s}: a_max {a:.2f} m/s^2 -> v_safe {v:.2f} m/s, "
          f"stop in {stopping_distance(v, a, L):.2f} m")

out = Path("demo_out")
for path in write_envelope_csvs(out, a_wc, a_dc, L, 90 / 3.141592653589793):
    print("wrote", path)
