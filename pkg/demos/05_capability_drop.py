"""A sudden loss of braking authority mid-descent.

With dynamic confirmation the vehicle is cruising fast when the authority
drops from 4.25 to 1.0 m/s^2. The monitor flags the transient unsafe state
and the planner brakes down to the new safe speed. Under a worst-case
assumption that is no longer honest the same descent ends in a hard
touchdown.
"""

import logging

import numpy as np

from landing_simplex.harness import run_scenario
from landing_simplex.reports import emit_reports
from landing_simplex.scenario import builtin

logging.basicConfig(level=logging.WARNING, format="%(message)s")

dc = run_scenario(builtin("capability-drop").with_mode("dc"))
tr = dc.trace
for t in (9.9, 10.1, 12.0, 15.0, 17.3, 20.0):
    k = int(np.searchsorted(tr["t"], t))
    print(f"t={tr['t'][k]:5.2f}  v={tr['v'][k]:7.2f}  v_safe={tr['v_safe_max'][k]:6.2f}  "
          f"a_max={tr['a_max'][k]:5.2f}  {tr['decision'][k]:16s} {tr['envelope'][k]}")
print("violation intervals:", dc.violations, "->", dc.metrics.terminal)

wc = run_scenario(builtin("capability-drop").with_mode("wc"))
print(f"worst-case mode: {wc.metrics.terminal} (touchdown {wc.metrics.touchdown_speed:.1f} m/s)")
print("reports:", emit_reports(dc, "demo_out"))
