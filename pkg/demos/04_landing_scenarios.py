"""Full landings with and without dynamic confirmation.

The confirmed capability lets the free descent run faster; an obstacle
below the vehicle triggers stop-and-hover in both modes, the worst-case run
stopping farther away.
"""

from landing_simplex.harness import compare_modes, run_scenario
from landing_simplex.scenario import builtin

res = compare_modes(builtin("no-obstacle"))
for key in ("wc", "dc"):
    m = res[key].metrics
    print(f"no-obstacle [{key}]: landed at {m.landing_time:.2f} s, touchdown {m.touchdown_speed:.2f} m/s")
print(f"worst-case / confirmed landing time: {res['time_ratio']:.3f}")

for name in ("obstacle-below", "obstacle-in-path", "obstacle-off-path"):
    for mode in ("wc", "dc"):
        r = run_scenario(builtin(name).with_mode(mode))
        m = r.metrics
        hover = next((tr for tr in r.transitions if tr.current.value == "hover"), None)
        trig = f", hover at {hover.t:.1f} s with the obstacle {hover.cause_range:.1f} m away" if hover else ""
        print(f"{name} [{mode}]: {m.terminal}, clearance {m.final_clearance:.2f} m{trig}")
