"""Generalized GHZ states: where two-setting inequalities go blind.

States cos(L)|0000> + sin(L)|1111> violate the four-party two-setting
MABK inequality only above a critical angle (sin 2L = 1/sqrt 8, about
10.35 degrees), while the three-setting four-party inequality sees a
violation at every sampled angle in (0, pi/4].  Along the way the sum of
squared correlation-tensor entries follows 5 - 4 cos(4L) exactly.
"""

import math

from bellift import (
    SeesawConfig,
    four_party_19,
    mabk,
    mabk_critical_lambda,
    make_state,
    seesaw_maximize,
    sum_squared_correlations,
)

fp = four_party_19()
m4 = mabk(4)
cfg = SeesawConfig(restarts=12, seed=0)

print(" L (deg)   sum T^2   5-4cos4L   mabk(4)    3-setting")
for k in range(1, 10):
    lam = (k / 10) * (math.pi / 4)
    state = make_state("generalized-ghz", lam)
    s2 = sum_squared_correlations(state)
    closed = 5 - 4 * math.cos(4 * lam)
    v2 = seesaw_maximize(m4, state, cfg).value
    v3 = seesaw_maximize(fp, state, cfg).value
    print(
        f"  {math.degrees(lam):6.2f}   {s2:7.4f}   {closed:7.4f}   "
        f"{v2:8.6f}   {v3:8.6f}"
    )

lam_c = mabk_critical_lambda(SeesawConfig(restarts=20, seed=0))
print(f"\ncritical angle for mabk(4): {lam_c:.4f} degrees")
print(f"sin(2L) there: {math.sin(2 * math.radians(lam_c)):.6f}  (1/sqrt8 = {1 / math.sqrt(8):.6f})")

lam = math.radians(1.4324)
res = seesaw_maximize(fp, make_state("generalized-ghz", lam), SeesawConfig(restarts=50, seed=0))
print(f"\nthree-setting violation at 1.4324 degrees: {res.value:.6f} (above 1)")
