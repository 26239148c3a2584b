"""
Coin family, shift phases and the one-step evolution matrix.

The walker carries four internal components. Components 1 and 2 are tied to
the x direction, 3 and 4 to the y direction. The coin is the real symmetric
one-parameter generalization of the 4x4 Grover coin,

    A(p) = [[-p,  q,  s,  s],
            [ q, -p,  s,  s],
            [ s,  s, -q,  p],
            [ s,  s,  p, -q]],   q = 1 - p,  s = sqrt(p q),

and in wave-number space one step is V(k) = S(k) A with
S(k) = diag(e^{i kx}, e^{-i kx}, e^{i ky}, e^{-i ky}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np
from numpy.typing import NDArray

from .errors import NormError

__all__ = [
    "CoinParams",
    "Qudit",
    "WaveNumber",
    "as_params",
    "as_qudit",
    "as_wavenumber",
    "coin_matrix",
    "evolution_matrix",
    "is_unitary",
    "validate_qudit",
    "NORM_TOL",
    "UNITARY_TOL",
]

NORM_TOL = 1e-9
UNITARY_TOL = 1e-12


@dataclass(frozen=True)
class CoinParams:
    """Coin parameter ``p`` in (0, 1); ``q = 1 - p`` is fixed at construction."""

    p: float
    q: float = field(init=False)

    def __post_init__(self):
        p = float(self.p)
        if not (0.0 < p < 1.0) or not math.isfinite(p):
            raise ValueError(f"coin parameter p must lie in (0, 1), got {self.p!r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", 1.0 - p)

    @property
    def sqrt_pq(self) -> float:
        return math.sqrt(self.p * self.q)


@dataclass(frozen=True)
class Qudit:
    """
    Unit-norm four-component initial internal state.

    Construction rejects vectors whose squared norm differs from 1 by more
    than ``NORM_TOL``; it never renormalizes.
    """

    amps: tuple[complex, complex, complex, complex]

    def __post_init__(self):
        amps = tuple(complex(a) for a in self.amps)
        if len(amps) != 4:
            raise ValueError(f"a qudit has four components, got {len(amps)}")
        for a in amps:
            if not (math.isfinite(a.real) and math.isfinite(a.imag)):
                raise ValueError(f"non-finite qudit component {a!r}")
        norm = math.fsum(abs(a) ** 2 for a in amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise NormError(norm)
        object.__setattr__(self, "amps", amps)

    q1 = property(lambda self: self.amps[0])
    q2 = property(lambda self: self.amps[1])
    q3 = property(lambda self: self.amps[2])
    q4 = property(lambda self: self.amps[3])

    @property
    def vector(self) -> NDArray[np.complex128]:
        return np.array(self.amps, dtype=np.complex128)

    @classmethod
    def normalized(cls, raw: Iterable[complex]) -> "Qudit":
        """Build a qudit from an unnormalized vector, e.g. ``(1, -1, 1, 1)``."""
        v = np.asarray(list(raw), dtype=np.complex128)
        return cls(tuple(v / np.linalg.norm(v)))


@dataclass(frozen=True)
class WaveNumber:
    """
    Point of the Brillouin zone ``[-pi, pi)^2``.

    Inputs are reduced modulo 2 pi, so ``WaveNumber(pi, pi)`` is stored as
    ``(-pi, -pi)``; every quantity in this package is 2 pi periodic.
    """

    kx: float
    ky: float

    def __post_init__(self):
        for name in ("kx", "ky"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
            w = (v + math.pi) % (2.0 * math.pi) - math.pi
            if w >= math.pi:
                w -= 2.0 * math.pi
            object.__setattr__(self, name, w)


ParamsLike = Union[CoinParams, float]
QuditLike = Union[Qudit, Sequence[complex]]
WaveNumberLike = Union[WaveNumber, Sequence[float]]


def as_params(params: ParamsLike) -> CoinParams:
    return params if isinstance(params, CoinParams) else CoinParams(params)


def as_qudit(phi0: QuditLike) -> Qudit:
    return phi0 if isinstance(phi0, Qudit) else Qudit(tuple(phi0))


def as_wavenumber(k: WaveNumberLike) -> WaveNumber:
    return k if isinstance(k, WaveNumber) else WaveNumber(*k)


def validate_qudit(raw: Sequence[complex]) -> Qudit:
    """
    Check a raw four-vector and return it as a `Qudit`.

    Raises
    ------
    NormError
        If ``|sum |q_j|^2 - 1| > 1e-9``. The vector is not renormalized.
    """
    return Qudit(tuple(raw))


def coin_matrix(params: ParamsLike) -> NDArray[np.complex128]:
    """Return the 4x4 coin ``A(p)``. At p = 1/2 this is the Grover coin."""
    cp = as_params(params)
    p, q, s = cp.p, cp.q, cp.sqrt_pq
    return np.array(
        [
            [-p, q, s, s],
            [q, -p, s, s],
            [s, s, -q, p],
            [s, s, p, -q],
        ],
        dtype=np.complex128,
    )


def shift_phases(kx, ky):
    """Diagonal of S(k), stacked on the last axis; broadcasts over arrays of k."""
    kx, ky = np.broadcast_arrays(np.asarray(kx, dtype=float), np.asarray(ky, dtype=float))
    ex, ey = np.exp(1j * kx), np.exp(1j * ky)
    return np.stack([ex, ex.conj(), ey, ey.conj()], axis=-1)


def evolution_matrix(params: ParamsLike, k: WaveNumberLike) -> NDArray[np.complex128]:
    """Return ``V(k) = S(k) A(p)``."""
    wk = as_wavenumber(k)
    return shift_phases(wk.kx, wk.ky)[:, None] * coin_matrix(params)


def evolution_matrices(params: ParamsLike, kx, ky) -> NDArray[np.complex128]:
    """Vectorized `evolution_matrix` over arrays of wave numbers; shape ``(..., 4, 4)``."""
    return shift_phases(kx, ky)[..., :, None] * coin_matrix(params)


def is_unitary(U: NDArray, tol: float = UNITARY_TOL) -> bool:
    U = np.asarray(U)
    return bool(np.max(np.abs(U @ U.conj().T - np.eye(U.shape[0]))) <= tol)
