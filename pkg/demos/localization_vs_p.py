"""
How much of the walker stays at the origin
==========================================

The limit measure of the pseudovelocity ``(X_t/t, Y_t/t)`` carries a point
mass ``Delta`` at the origin. Here we scan ``Delta`` against the coin
parameter for the two Grover-type qudits and for the p-dependent qudit that
never localizes.
"""

import math

import numpy as np

from qwalk2d.limitdist import localization_delta
from qwalk2d.presets import PRESETS, special_qudit

ps = np.linspace(0.05, 0.95, 19)

# symmetric qudit (1,1,1,1)/2: largest trapping at the Grover point
sym = [localization_delta(float(p), PRESETS["grover-sym"]) for p in ps]
# antisymmetric qudit (1,1,-1,-1)/2: no trapping at the Grover point
anti = [localization_delta(float(p), PRESETS["grover-antisym"]) for p in ps]
# qudit chosen per p so the weight function has no constant-free part
ext = [localization_delta(float(p), special_qudit(float(p))) for p in ps]

print(f"{'p':>5}  {'sym':>8}  {'antisym':>8}  {'special':>9}")
for p, a, b, c in zip(ps, sym, anti, ext):
    print(f"{p:5.2f}  {a:8.5f}  {b:8.5f}  {c:9.1e}")

print("\nmaximum at p=1/2:", sym[9], "vs 2(pi-2)/pi =", 2 * (math.pi - 2) / math.pi)
