"""
Exact lattice evolution of the walk.

States are stored densely on the square ``[-t, t]^2`` as an array of shape
``(2t+1, 2t+1, 4)`` indexed ``[x + t, y + t, component]``. Every step grows
the array by one site on each side, so the walk never wraps.

Direction convention (fixed by the Fourier pair with phase ``e^{+i k.r}``):
component 1 hops toward -x, 2 toward +x, 3 toward -y and 4 toward +y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from numpy.typing import NDArray

from .core import CoinParams, as_params, as_qudit, coin_matrix
from .errors import ZeroTime

__all__ = [
    "LatticeState",
    "ProbField",
    "PseudovelocityHistogram",
    "init_state",
    "step",
    "evolve",
    "probability_map",
    "joint_moment",
    "normalized_moments",
    "pseudovelocity_histogram",
    "origin_cell_mass",
]


@dataclass(frozen=True)
class LatticeState:
    t: int
    params: CoinParams
    amps: NDArray[np.complex128]

    def __post_init__(self):
        n = 2 * self.t + 1
        if self.amps.shape != (n, n, 4):
            raise ValueError(f"amplitude array must have shape {(n, n, 4)}, got {self.amps.shape}")
        self.amps.flags.writeable = False

    def amplitude(self, x: int, y: int) -> NDArray[np.complex128]:
        t = self.t
        if abs(x) > t or abs(y) > t:
            return np.zeros(4, dtype=np.complex128)
        return self.amps[x + t, y + t].copy()

    @property
    def coords(self) -> NDArray[np.int64]:
        return np.arange(-self.t, self.t + 1)


@dataclass(frozen=True)
class ProbField:
    """Site probabilities ``P(x, y, t)`` on ``[-t, t]^2``."""

    t: int
    probs: NDArray[np.float64]

    def __getitem__(self, site: tuple[int, int]) -> float:
        x, y = site
        if abs(x) > self.t or abs(y) > self.t:
            return 0.0
        return float(self.probs[x + self.t, y + self.t])

    def items(self) -> Iterator[tuple[int, int, float]]:
        """Yield ``(x, y, prob)`` for sites with nonzero probability, x-major."""
        ix, iy = np.nonzero(self.probs)
        for i, j in zip(ix, iy):
            yield int(i) - self.t, int(j) - self.t, float(self.probs[i, j])

    def as_dict(self) -> dict[tuple[int, int], float]:
        return {(x, y): pr for x, y, pr in self.items()}

    def total(self) -> float:
        return math.fsum(self.probs.ravel())


def init_state(phi0, params) -> LatticeState:
    """Walker at the origin with internal state ``phi0`` at ``t = 0``."""
    amps = as_qudit(phi0).vector.reshape(1, 1, 4)
    return LatticeState(0, as_params(params), amps)


def _coin(amps: NDArray, A: NDArray) -> NDArray:
    return amps @ A.T


def step(state: LatticeState) -> LatticeState:
    """Apply coin then shift once; returns a new state at ``t + 1``."""
    A = coin_matrix(state.params)
    c = _coin(state.amps, A)
    n = c.shape[0]
    new = np.zeros((n + 2, n + 2, 4), dtype=np.complex128)
    # old site (x, y) lives at new index (x + t + 1, y + t + 1)
    new[0:n, 1 : n + 1, 0] = c[:, :, 0]
    new[2 : n + 2, 1 : n + 1, 1] = c[:, :, 1]
    new[1 : n + 1, 0:n, 2] = c[:, :, 2]
    new[1 : n + 1, 2 : n + 2, 3] = c[:, :, 3]
    return LatticeState(state.t + 1, state.params, new)


def evolve(phi0, params, t: int) -> LatticeState:
    """Run `step` ``t`` times from `init_state`."""
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    state = init_state(phi0, params)
    for _ in range(t):
        state = step(state)
    return state


def probability_map(state: LatticeState) -> ProbField:
    a = state.amps
    probs = (a.real**2 + a.imag**2).sum(axis=-1)
    return ProbField(state.t, probs)


def joint_moment(state: LatticeState, alpha: int, beta: int) -> float:
    """Exact ``<X_t^alpha Y_t^beta>`` summed over the support."""
    if alpha < 0 or beta < 0:
        raise ValueError("moment orders must be non-negative")
    P = probability_map(state).probs
    x = state.coords.astype(float)
    # sum over y first, then over x; numpy reductions are pairwise
    row = (P * x[None, :] ** beta).sum(axis=1)
    return float((row * x**alpha).sum())


def normalized_moments(state: LatticeState, max_order: int = 2) -> dict[tuple[int, int], float]:
    """``<X^a Y^b>/t^(a+b)`` for every ``a + b <= max_order``."""
    if state.t == 0:
        raise ZeroTime("pseudovelocity moments need t >= 1")
    out = {}
    for order in range(max_order + 1):
        for a in range(order, -1, -1):
            b = order - a
            out[(a, b)] = joint_moment(state, a, b) / state.t**order
    return out


@dataclass(frozen=True)
class PseudovelocityHistogram:
    """
    Mass of ``(X_t/t, Y_t/t)`` on square cells centred on multiples of ``cell``.

    ``masses[i, j]`` is the mass of the cell centred at ``(centers[i], centers[j])``.
    One cell is always centred on the origin, so a localized peak lands in a
    single bin.
    """

    t: int
    cell: float
    centers: NDArray[np.float64]
    masses: NDArray[np.float64]

    def items(self) -> Iterator[tuple[float, float, float]]:
        for i, cx in enumerate(self.centers):
            for j, cy in enumerate(self.centers):
                yield float(cx), float(cy), float(self.masses[i, j])

    def mass_at(self, vx: float, vy: float) -> float:
        n = (len(self.centers) - 1) // 2
        i = int(math.floor(vx / self.cell + 0.5)) + n
        j = int(math.floor(vy / self.cell + 0.5)) + n
        return float(self.masses[i, j])


def pseudovelocity_histogram(state: LatticeState, cell: float) -> PseudovelocityHistogram:
    """
    Bin ``P(x, y, t)`` by pseudovelocity ``(x/t, y/t)``.

    Cells have side ``cell`` and centres ``j * cell`` for ``|j| <= n`` with
    ``n = ceil(1/cell - 1/2)``, which is the fewest cells covering ``[-1, 1]^2``.
    A velocity exactly on a cell edge goes to the cell on its positive side.
    """
    if state.t == 0:
        raise ZeroTime("pseudovelocity is undefined at t = 0")
    if not cell > 0:
        raise ValueError(f"cell must be positive, got {cell!r}")
    n = max(0, math.ceil(1.0 / cell - 0.5 - 1e-12))
    centers = np.arange(-n, n + 1) * cell
    v = state.coords / state.t
    idx = np.clip(np.floor(v / cell + 0.5).astype(int) + n, 0, 2 * n)
    P = probability_map(state).probs
    masses = np.zeros((2 * n + 1, 2 * n + 1))
    np.add.at(masses, (idx[:, None], idx[None, :]), P)
    return PseudovelocityHistogram(state.t, float(cell), centers, masses)


def origin_cell_mass(state: LatticeState, half_width: float) -> float:
    """Probability that ``|X_t/t| <= half_width`` and ``|Y_t/t| <= half_width``."""
    if state.t == 0:
        raise ZeroTime("pseudovelocity is undefined at t = 0")
    v = np.abs(state.coords / state.t) <= half_width + 1e-15
    P = probability_map(state).probs
    return float(P[np.ix_(v, v)].sum())
