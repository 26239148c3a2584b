"""
Exact lattice evolution against the weak limit
==============================================

Run the walk on the lattice, rescale positions by ``t`` and watch the
low-order moments approach those of the limit measure.
"""

from qwalk2d import realspace
from qwalk2d.limitdist import limit_distribution
from qwalk2d.presets import PRESETS

p = 0.25
phi = PRESETS["fig6"]
dist = limit_distribution(p, phi)
print("symmetry of the limit density:", dist.symmetry.label)
print("point mass at the origin:", round(dist.delta, 6))

orders = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
limits = {ab: dist.moment(*ab) for ab in orders}

state = realspace.init_state(phi, p)
for t in (25, 50, 100, 200):
    while state.t < t:
        state = realspace.step(state)
    sim = realspace.normalized_moments(state)
    errs = "  ".join(f"{a}{b}:{abs(sim[(a, b)] - limits[(a, b)]):.1e}" for a, b in orders)
    print(f"t={t:4d}  {errs}")

# the atom shows up as mass piling into the cell around v = 0
print("mass with |v| <= 0.05 at t=200:", round(realspace.origin_cell_mass(state, 0.05), 4))
