"""
Wave-number space: dispersion, eigensystem of V(k), a Fourier evolution
oracle, and the k-space form of the long-time moments.

The eigenvalues of ``V(k)`` are ``1, -1, e^{i omega}, e^{-i omega}`` with
``cos omega = -(p cos kx + q cos ky)``. The eigenvectors are built from the
closed column formulas and scaled to unit length; their phase is left as the
formula produces it, since only ``|C_j|^2 = |v_j^dagger phi0|^2`` is ever used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .core import (
    CoinParams,
    as_params,
    as_qudit,
    as_wavenumber,
    evolution_matrices,
    evolution_matrix,
)
from .errors import DegeneratePoint, GridTooSmall
from .realspace import LatticeState, init_state

__all__ = [
    "Eigensystem",
    "SpectralWeights",
    "dispersion",
    "group_velocity",
    "eigensystem",
    "spectral_weights",
    "spectral_evolve",
    "limit_moment_kspace",
    "DEGENERATE_TOL",
]

DEGENERATE_TOL = 1e-10
_GRADIENT_TOL = 1e-14
_FALLBACK_NORM = 1e-10


def _cos_sum(cp: CoinParams, kx, ky):
    return cp.p * np.cos(kx) + cp.q * np.cos(ky)


def dispersion(params, k) -> float:
    """``omega(k) = arccos(-(p cos kx + q cos ky))`` in ``[0, pi]``."""
    cp, wk = as_params(params), as_wavenumber(k)
    c = float(np.clip(_cos_sum(cp, wk.kx, wk.ky), -1.0, 1.0))
    return math.acos(-c)


def group_velocity(params, k) -> tuple[float, float]:
    """
    Gradient of `dispersion`.

    Raises
    ------
    DegeneratePoint
        At ``k = (0, 0)`` and ``(pi, pi)`` where ``sin omega = 0``.
    """
    cp, wk = as_params(params), as_wavenumber(k)
    c = _cos_sum(cp, wk.kx, wk.ky)
    den = math.sqrt(max(0.0, 1.0 - c * c))
    if den < _GRADIENT_TOL:
        raise DegeneratePoint(f"omega gradient undefined at k=({wk.kx}, {wk.ky})")
    return -cp.p * math.sin(wk.kx) / den, -cp.q * math.sin(wk.ky) / den


def _formula_vectors(cp: CoinParams, kx, ky, lam):
    """Unnormalized eigenvector columns for eigenvalue(s) ``lam``; last axis is the component."""
    ex, ey = np.exp(1j * np.asarray(kx)), np.exp(1j * np.asarray(ky))
    a = ey * lam + 1.0  # (e^{i ky} lam + 1)
    b = ex * lam + 1.0  # (e^{i kx} lam + 1)
    c = ex.conj() * lam + 1.0  # (e^{-i kx} lam + 1)
    d = ey.conj() * lam + 1.0  # (e^{-i ky} lam + 1)
    s = cp.sqrt_pq
    return np.stack([cp.q * a * b * d, cp.q * a * c * d, s * a * c * b, s * c * b * d], axis=-1)


def _projector_vectors(V, lams, j):
    """
    Eigenvectors for ``lams[j]`` taken from the spectral projector of ``V``.

    ``V`` has shape ``(n, 4, 4)`` and ``lams`` is a list of four ``(n,)`` arrays.
    The projector column of largest norm is returned, normalized.
    """
    n = V.shape[0]
    eye = np.eye(4)
    P = np.broadcast_to(eye, V.shape).astype(np.complex128)
    for i in range(4):
        if i == j:
            continue
        P = P @ ((V - lams[i][:, None, None] * eye) / (lams[j] - lams[i])[:, None, None])
    col = np.linalg.norm(P, axis=-2).argmax(axis=-1)
    v = P[np.arange(n), :, col]
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


@dataclass(frozen=True)
class Eigensystem:
    """Eigenpairs of ``V(k)``; ``vectors[:, j]`` belongs to ``lambdas[j]``."""

    lambdas: NDArray[np.complex128]
    vectors: NDArray[np.complex128]
    omega: float
    fallback_used: bool = False

    def reconstruct(self) -> NDArray[np.complex128]:
        R = self.vectors
        return (R * self.lambdas) @ R.conj().T


def eigensystem(params, k) -> Eigensystem:
    """
    Diagonalize ``V(k)`` with the closed eigenvector formulas.

    If a formula column has norm below 1e-10 (this happens on lines such as
    ``omega = pi - kx``), that column is replaced by an eigenvector taken from
    the spectral projector of ``V(k)`` and ``fallback_used`` is set.

    Raises
    ------
    DegeneratePoint
        If ``omega`` is within 1e-10 of 0 or pi.
    """
    cp, wk = as_params(params), as_wavenumber(k)
    omega = dispersion(cp, wk)
    if omega < DEGENERATE_TOL or math.pi - omega < DEGENERATE_TOL:
        raise DegeneratePoint(f"eigenvalues collide at k=({wk.kx}, {wk.ky}), omega={omega}")
    lambdas = np.array([1.0, -1.0, np.exp(1j * omega), np.exp(-1j * omega)], dtype=np.complex128)
    cols = []
    fallback = False
    V = None
    for j, lam in enumerate(lambdas):
        v = _formula_vectors(cp, wk.kx, wk.ky, lam)
        nrm = np.linalg.norm(v)
        if nrm < _FALLBACK_NORM:
            if V is None:
                V = evolution_matrix(cp, wk)[None]
            v = _projector_vectors(V, [np.array([l]) for l in lambdas], j)[0]
            fallback = True
        else:
            v = v / nrm
        cols.append(v)
    return Eigensystem(lambdas, np.stack(cols, axis=1), omega, fallback)


@dataclass(frozen=True)
class SpectralWeights:
    """``c_j = v_j^dagger phi0`` for j = 1..4."""

    c: NDArray[np.complex128]

    @property
    def probabilities(self) -> NDArray[np.float64]:
        return np.abs(self.c) ** 2


def spectral_weights(eig: Eigensystem, phi0) -> SpectralWeights:
    return SpectralWeights(eig.vectors.conj().T @ as_qudit(phi0).vector)


def spectral_evolve(params, phi0, t: int, N: int) -> LatticeState:
    """
    Evolve by sampling ``V(k)^t phi0`` on an N x N grid and Fourier inverting.

    The grid is ``k_j = -pi + 2 pi j / N``. ``V(k)^t phi0`` is formed by
    ``t`` matrix-vector products, so degenerate wave numbers need no care.
    Since the walk occupies at most ``2t + 1`` sites per axis, any
    ``N >= 2t + 3`` reproduces the lattice evolution without aliasing.

    Raises
    ------
    GridTooSmall
        If ``N < 2t + 3``.
    """
    cp, q0 = as_params(params), as_qudit(phi0)
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    if t == 0:
        return init_state(q0, cp)
    if N < 2 * t + 3:
        raise GridTooSmall(f"need N >= 2t+3 = {2 * t + 3}, got {N}")
    k = -math.pi + 2.0 * math.pi * np.arange(N) / N
    V = evolution_matrices(cp, k[:, None], k[None, :])
    psi = np.broadcast_to(q0.vector, (N, N, 4)).copy()
    for _ in range(t):
        psi = np.einsum("abij,abj->abi", V, psi)
    # Psi(x) = N^-1 sum_j e^{i k_j x} psihat(k_j) and e^{i k_j x} = (-1)^x e^{2 pi i j x / N}
    lat = np.fft.ifft2(psi, axes=(0, 1))
    x = np.arange(-t, t + 1)
    sign = np.where(x % 2 == 0, 1.0, -1.0)
    idx = x % N
    amps = lat[np.ix_(idx, idx)] * (sign[:, None] * sign[None, :])[..., None]
    return LatticeState(t, cp, np.ascontiguousarray(amps))


def _c34_squared(cp: CoinParams, phi: NDArray, kx, ky):
    """``|C_3|^2``, ``|C_4|^2`` and the gradient of omega on flat arrays of k."""
    c = _cos_sum(cp, kx, ky)
    omega = np.arccos(np.clip(-c, -1.0, 1.0))
    den = np.sqrt(1.0 - c * c)
    wx = -cp.p * np.sin(kx) / den
    wy = -cp.q * np.sin(ky) / den
    lams = [np.ones_like(kx, dtype=complex), -np.ones_like(kx, dtype=complex),
            np.exp(1j * omega), np.exp(-1j * omega)]
    out = []
    for j in (2, 3):
        v = _formula_vectors(cp, kx, ky, lams[j])
        nrm = np.linalg.norm(v, axis=-1)
        bad = nrm < _FALLBACK_NORM
        v = v / np.where(bad, 1.0, nrm)[:, None]
        if bad.any():
            V = evolution_matrices(cp, kx[bad], ky[bad])
            v[bad] = _projector_vectors(V, [l[bad] for l in lams], j)
        out.append(np.abs(v.conj() @ phi) ** 2)
    return out[0], out[1], wx, wy


def limit_moment_kspace(params, phi0, alpha: int, beta: int, N: int = 512) -> float:
    """
    Absolutely continuous part of ``lim <(X_t/t)^a (Y_t/t)^b>`` as a k-space integral.

    Integrates ``((-1)^(a+b) |C_3|^2 + |C_4|^2) (d omega/d kx)^a (d omega/d ky)^b``
    over the Brillouin zone with the midpoint rule on the half-offset grid
    ``k_j = -pi + (2 pi / N)(j + 1/2)``, which never hits ``(0, 0)`` or ``(pi, pi)``.
    For ``a = b = 0`` the result is ``1 - Delta``.
    """
    if N < 64:
        raise GridTooSmall(f"k-space quadrature needs N >= 64, got {N}")
    if alpha < 0 or beta < 0:
        raise ValueError("moment orders must be non-negative")
    cp, phi = as_params(params), as_qudit(phi0).vector
    k = -math.pi + (2.0 * math.pi / N) * (np.arange(N) + 0.5)
    sign = -1.0 if (alpha + beta) % 2 else 1.0
    total = 0.0
    # row blocks keep memory flat for large N; summation order is fixed
    block = max(1, 65536 // N)
    for start in range(0, N, block):
        kx, ky = np.meshgrid(k[start : start + block], k, indexing="ij")
        kx, ky = kx.ravel(), ky.ravel()
        c3, c4, wx, wy = _c34_squared(cp, phi, kx, ky)
        total += float(np.sum((sign * c3 + c4) * wx**alpha * wy**beta))
    return total / (N * N)
