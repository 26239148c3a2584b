"""
Two ways to the same limit moments
==================================

The absolutely continuous part of the limit can be integrated in the
velocity plane (density times weight) or straight over the Brillouin zone
(group velocity powers times spectral weights). They must agree.
"""

from qwalk2d.limitdist import limit_moment
from qwalk2d.presets import PRESETS
from qwalk2d.spectral import limit_moment_kspace

for name in ("fig3", "fig4", "fig5", "fig6"):
    phi = PRESETS[name]
    for ab in [(0, 0), (2, 0), (1, 1), (0, 2)]:
        v = limit_moment(0.25, phi, *ab, include_atom=False)
        k = limit_moment_kspace(0.25, phi, *ab, N=256)
        print(f"{name} {ab}: velocity plane {v:.8f}  k-space {k:.8f}  diff {abs(v - k):.1e}")
