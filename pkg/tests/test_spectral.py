import math

import numpy as np
import pytest

from qwalk2d.core import CoinParams, evolution_matrix
from qwalk2d.errors import DegeneratePoint, GridTooSmall
from qwalk2d.limitdist import kxy_constants, limit_moment, localization_delta
from qwalk2d.presets import PRESETS
from qwalk2d.realspace import evolve, init_state, probability_map
from qwalk2d.spectral import (
    _c34_squared,
    dispersion,
    eigensystem,
    group_velocity,
    limit_moment_kspace,
    spectral_evolve,
    spectral_weights,
)

from conftest import random_qudit


def test_dispersion_special_points():
    assert dispersion(0.3, (0, 0)) == pytest.approx(math.pi)
    assert dispersion(0.3, (math.pi, math.pi)) == pytest.approx(0.0)
    assert dispersion(0.3, (math.pi / 2, math.pi / 2)) == pytest.approx(math.pi / 2)


def test_dispersion_range(rng):
    for _ in range(200):
        p = rng.uniform(0.01, 0.99)
        w = dispersion(p, rng.uniform(-math.pi, math.pi, 2))
        assert 0.0 <= w <= math.pi


@pytest.mark.parametrize("p", [0.2, 0.5])
def test_group_velocity_closed_points(p):
    assert group_velocity(p, (math.pi / 2, math.pi / 2)) == pytest.approx((-p, -(1 - p)))
    assert group_velocity(p, (-math.pi / 2, -math.pi / 2)) == pytest.approx((p, 1 - p))


def _fd_gradient(p, k, h=1e-5):
    kx, ky = k
    gx = (dispersion(p, (kx + h, ky)) - dispersion(p, (kx - h, ky))) / (2 * h)
    gy = (dispersion(p, (kx, ky + h)) - dispersion(p, (kx, ky - h))) / (2 * h)
    return gx, gy


def test_group_velocity_finite_difference(rng):
    assert group_velocity(0.3, (0.7, -1.1)) == pytest.approx(_fd_gradient(0.3, (0.7, -1.1)), abs=1e-6)
    for _ in range(100):
        p = rng.uniform(0.05, 0.95)
        k = rng.uniform(-3.0, 3.0, 2)
        if abs(math.sin(dispersion(p, k))) < 0.05:
            continue
        assert group_velocity(p, k) == pytest.approx(_fd_gradient(p, k), abs=1e-6)


@pytest.mark.parametrize("k", [(0.0, 0.0), (math.pi, math.pi), (-math.pi, math.pi)])
def test_group_velocity_degenerate(k):
    with pytest.raises(DegeneratePoint):
        group_velocity(0.4, k)


def test_eigensystem_reconstruction_and_orthonormality(rng):
    for _ in range(100):
        p = rng.uniform(0.02, 0.98)
        k = rng.uniform(-math.pi, math.pi, 2)
        eig = eigensystem(p, k)
        assert np.allclose(np.abs(eig.lambdas), 1.0, atol=1e-12)
        R = eig.vectors
        assert np.max(np.abs(R.conj().T @ R - np.eye(4))) < 1e-10
        assert np.max(np.abs(eig.reconstruct() - evolution_matrix(p, k))) < 1e-10


def test_eigensystem_quarter_turn():
    eig = eigensystem(0.5, (math.pi / 2, math.pi / 2))
    assert eig.lambdas[2] == pytest.approx(1j)
    assert eig.lambdas[3] == pytest.approx(-1j)
    assert eig.lambdas[0] == 1 and eig.lambdas[1] == -1


def test_eigensystem_fallback_on_vanishing_formula():
    # at p = 1/2 and kx = ky the formula columns for lambda_3,4 vanish
    eig = eigensystem(0.5, (0.8, 0.8))
    assert eig.fallback_used
    assert np.max(np.abs(eig.reconstruct() - evolution_matrix(0.5, (0.8, 0.8)))) < 1e-10
    assert not eigensystem(0.3, (0.8, -1.3)).fallback_used


@pytest.mark.parametrize("k", [(0.0, 0.0), (math.pi, math.pi)])
def test_eigensystem_degenerate(k):
    with pytest.raises(DegeneratePoint):
        eigensystem(0.3, k)


def test_spectral_weights(rng):
    eig = eigensystem(0.25, (0.4, 1.9))
    w = spectral_weights(eig, tuple(eig.vectors[:, 2]))
    assert w.probabilities[2] == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(np.delete(w.probabilities, 2), 0.0, atol=1e-12)
    for _ in range(20):
        w = spectral_weights(eig, random_qudit(rng))
        assert w.probabilities.sum() == pytest.approx(1.0, abs=1e-10)
    eig = eigensystem(0.5, (math.pi / 2, math.pi / 2))
    P = spectral_weights(eig, (0.5, 0.5, 0.5, 0.5)).probabilities
    assert P[0] + P[1] == pytest.approx(1 - P[2] - P[3], abs=1e-12)


def test_spectral_evolve_t1():
    s = spectral_evolve(0.25, (1, 0, 0, 0), 1, 8)
    P = probability_map(s)
    assert P[-1, 0] == pytest.approx(1 / 16, abs=1e-12)
    assert P[1, 0] == pytest.approx(9 / 16, abs=1e-12)
    assert P[0, 1] == pytest.approx(3 / 16, abs=1e-12)
    assert P[0, -1] == pytest.approx(3 / 16, abs=1e-12)


def test_spectral_evolve_t0():
    s = spectral_evolve(0.3, PRESETS["fig3"], 0, 64)
    assert np.array_equal(s.amps, init_state(PRESETS["fig3"], 0.3).amps)


@pytest.mark.parametrize("t", [1, 5, 30])
def test_spectral_evolve_matches_lattice(t):
    phi = PRESETS["fig3"]
    a = spectral_evolve(0.25, phi, t, 64)
    b = evolve(phi, 0.25, t)
    assert np.max(np.abs(a.amps - b.amps)) < 1e-10


def test_spectral_evolve_grid_too_small():
    with pytest.raises(GridTooSmall):
        spectral_evolve(0.3, PRESETS["fig3"], 10, 22)


def test_kspace_total_mass_is_one_minus_delta():
    for p, name in [(0.5, "grover-sym"), (0.25, "fig3"), (0.7, "grover-antisym")]:
        phi = PRESETS[name]
        assert limit_moment_kspace(p, phi, 0, 0, 512) == pytest.approx(
            1 - localization_delta(p, phi), abs=2e-4)


def test_kspace_odd_moment_vanishes_with_reflection_symmetry():
    assert abs(limit_moment_kspace(0.25, PRESETS["fig5"], 1, 0, 512)) < 2e-4
    assert abs(limit_moment_kspace(0.25, PRESETS["fig4"], 1, 0, 512)) < 2e-4
    assert abs(limit_moment_kspace(0.25, PRESETS["fig3"], 0, 1, 512)) < 2e-4


def test_kspace_second_moment_matches_ellipse_route():
    phi = PRESETS["grover-sym"]
    kx, _ = kxy_constants(0.5)
    # m4 = -2 and m5 = -2 at p = 1/2; m1 = 1
    assert limit_moment_kspace(0.5, phi, 2, 0, 512) == pytest.approx(limit_moment(0.5, phi, 2, 0), abs=2e-4)
    assert limit_moment(0.5, phi, 2, 0) < kx


def test_kspace_resolution_doubling():
    phi = PRESETS["fig6"]
    for ab in [(0, 0), (1, 1), (2, 0)]:
        a = limit_moment_kspace(0.25, phi, *ab, N=512)
        b = limit_moment_kspace(0.25, phi, *ab, N=1024)
        assert abs(a - b) < 2e-4


def test_kspace_fallback_points_are_finite():
    cp = CoinParams(0.5)
    k = np.linspace(-3, 3, 8)
    c3, c4, _, _ = _c34_squared(cp, PRESETS["grover-sym"].vector, k, k)
    assert np.all(np.isfinite(c3)) and np.all(np.isfinite(c4))
    assert np.all(c3 + c4 <= 1 + 1e-12)


def test_kspace_needs_grid():
    with pytest.raises(GridTooSmall):
        limit_moment_kspace(0.3, PRESETS["fig3"], 1, 0, 32)
