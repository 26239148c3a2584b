"""
Analytic long-time limit of the pseudovelocity ``(X_t/t, Y_t/t)``.

The limit measure is

    nu(vx, vy) = mu_p(vx, vy) M(vx, vy) + Delta delta(vx) delta(vy),

where ``mu_p`` is the qudit-independent fundamental density on the ellipse
``vx^2/p + vy^2/q < 1``, ``M`` is a quadratic polynomial whose six
coefficients depend on the initial qudit, and ``Delta`` is the localization
probability (a point mass at the origin).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .core import CoinParams, Qudit, as_params, as_qudit
from .errors import NegativeMass, OutsideDomain
from .quadrature import ellipse_rule
from .spectral import group_velocity

__all__ = [
    "WeightCoefficients",
    "LimitDistribution",
    "SymmetryClass",
    "square_product",
    "mu_p",
    "velocity_map",
    "inverse_map_trig",
    "jacobian",
    "weight_coeffs",
    "weight_matrices",
    "kxy_constants",
    "localization_delta",
    "limit_density",
    "limit_moment",
    "limit_distribution",
    "classify_symmetry",
]

_CLAMP = 1e-9


def square_product(vx, vy):
    """``(vx+vy+1)(vx-vy+1)(vx+vy-1)(vx-vy-1)``, positive inside the ellipse."""
    return (vx + vy + 1.0) * (vx - vy + 1.0) * (vx + vy - 1.0) * (vx - vy - 1.0)


def _inside(cp: CoinParams, vx, vy):
    return vx * vx / cp.p + vy * vy / cp.q < 1.0


def mu_p(params, vx, vy):
    """
    Fundamental density ``2 / (pi^2 D(vx, vy))`` inside the ellipse, 0 outside.

    Accepts scalars or arrays.
    """
    cp = as_params(params)
    vx, vy = np.asarray(vx, dtype=float), np.asarray(vy, dtype=float)
    inside = _inside(cp, vx, vy)
    D = np.where(inside, square_product(vx, vy), 1.0)
    out = np.where(inside, 2.0 / (math.pi**2 * D), 0.0)
    return float(out) if out.ndim == 0 else out


def velocity_map(params, k) -> tuple[float, float]:
    """
    ``(vx, vy) = -grad omega(k)``, the velocity carried by the ``e^{-i omega}`` branch.

    Two wave numbers, ``k`` and ``(pi - kx, pi - ky)``, share each image.

    Raises
    ------
    DegeneratePoint
        Where the gradient is undefined.
    """
    wx, wy = group_velocity(params, k)
    return -wx, -wy


def inverse_map_trig(params, vx: float, vy: float) -> tuple[float, float, float, float]:
    """
    ``(sin kx, cos kx, sin ky, cos ky)`` of a preimage of ``(vx, vy)``.

    Of the two preimages this returns the one with ``cos kx <= cos ky``; the
    other is ``(pi - kx, pi - ky)``. ``sign(sin kx) = sign(vx)`` holds on both.

    Raises
    ------
    OutsideDomain
        If ``(vx, vy)`` is not strictly inside the ellipse.
    """
    cp = as_params(params)
    p, q = cp.p, cp.q
    inner = p * q - q * vx * vx - p * vy * vy
    D = square_product(vx, vy)
    if not _inside(cp, vx, vy) or inner <= 0.0 or D <= 0.0:
        raise OutsideDomain(f"({vx}, {vy}) is not inside vx^2/{p} + vy^2/{q} < 1")
    root_inner, root_D = math.sqrt(inner), math.sqrt(D)
    sin_kx = 2.0 * vx * root_inner / (p * root_D)
    cos_kx = ((1.0 + q) * vx * vx + p * vy * vy - p) / (p * root_D)
    sin_ky = 2.0 * vy * root_inner / (q * root_D)
    cos_ky = -(q * vx * vx + (1.0 + p) * vy * vy - q) / (q * root_D)
    return sin_kx, cos_kx, sin_ky, cos_ky


def jacobian(vx, vy):
    """``|d(vx, vy)/d(kx, ky)| = |D(vx, vy)| / 4``."""
    return 0.25 * np.abs(square_product(vx, vy))


@dataclass(frozen=True)
class WeightCoefficients:
    """Coefficients of ``M = m1 + m2 vx + m3 vy + m4 vx^2 + m5 vy^2 + m6 vx vy``."""

    m1: float
    m2: float
    m3: float
    m4: float
    m5: float
    m6: float

    def as_tuple(self) -> tuple[float, ...]:
        return (self.m1, self.m2, self.m3, self.m4, self.m5, self.m6)

    def polynomial(self) -> dict[tuple[int, int], float]:
        """``{(a, b): coefficient of vx^a vy^b}``."""
        return {
            (0, 0): self.m1,
            (1, 0): self.m2,
            (0, 1): self.m3,
            (2, 0): self.m4,
            (0, 2): self.m5,
            (1, 1): self.m6,
        }

    def evaluate(self, vx, vy):
        return (
            self.m1
            + self.m2 * vx
            + self.m3 * vy
            + self.m4 * vx * vx
            + self.m5 * vy * vy
            + self.m6 * vx * vy
        )


def weight_coeffs(params, phi0) -> WeightCoefficients:
    cp, qd = as_params(params), as_qudit(phi0)
    p, q, s = cp.p, cp.q, cp.sqrt_pq
    q1, q2, q3, q4 = qd.amps

    def re(a, b):
        return (a * b.conjugate()).real

    n1, n2, n3, n4 = (abs(z) ** 2 for z in qd.amps)
    r12, r34 = re(q1, q2), re(q3, q4)
    r13, r14, r23, r24 = re(q1, q3), re(q1, q4), re(q2, q3), re(q2, q4)

    m1 = 0.5 + r12 + r34
    m2 = -(n1 - n2) + (q / s) * (r13 + r14 - r23 - r24)
    m3 = -(n3 - n4) + (p / s) * (r13 - r14 + r23 - r24)
    m4 = (
        0.5 * (n1 + n2 - n3 - n4)
        - (1.0 + q) / p * r12
        - r34
        - (q / s) * (r13 + r14 + r23 + r24)
    )
    m5 = (
        -0.5 * (n1 + n2 - n3 - n4)
        - r12
        - (1.0 + p) / q * r34
        - (p / s) * (r13 + r14 + r23 + r24)
    )
    m6 = -(1.0 / s) * (r13 - r14 - r23 + r24)
    return WeightCoefficients(m1, m2, m3, m4, m5, m6)


def weight_matrices(params) -> tuple[NDArray[np.float64], ...]:
    """
    Real symmetric ``M_1 .. M_6`` with ``m_n = phi0^dagger M_n phi0``.
    """
    cp = as_params(params)
    p, q, s = cp.p, cp.q, cp.sqrt_pq
    M1 = 0.5 * np.array([[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, 1]], dtype=float)
    M2 = -1.0 / (2 * s) * np.array(
        [[2 * s, 0, -q, -q], [0, -2 * s, q, q], [-q, q, 0, 0], [-q, q, 0, 0]]
    )
    M3 = -1.0 / (2 * s) * np.array(
        [[0, 0, -p, p], [0, 0, -p, p], [-p, -p, 2 * s, 0], [p, p, 0, -2 * s]]
    )
    a, b = (1 + q) / p, q / s
    M4 = -0.5 * np.array([[-1, a, b, b], [a, -1, b, b], [b, b, 1, 1], [b, b, 1, 1]])
    c, d = p / s, (1 + p) / q
    M5 = -0.5 * np.array([[1, 1, c, c], [1, 1, c, c], [c, c, -1, d], [c, c, d, -1]])
    M6 = 1.0 / (2 * s) * np.array(
        [[0, 0, -1, 1], [0, 0, 1, -1], [-1, 1, 0, 0], [1, -1, 0, 0]], dtype=float
    )
    return M1, M2, M3, M4, M5, M6


def kxy_constants(params) -> tuple[float, float]:
    """Second moments ``K_x, K_y`` of ``mu_p`` in closed form."""
    cp = as_params(params)
    s = cp.sqrt_pq
    kx = (2.0 / math.pi) * (math.asin(math.sqrt(cp.p)) - s)
    ky = (2.0 / math.pi) * (math.asin(math.sqrt(cp.q)) - s)
    return kx, ky


def _clamp_delta(delta: float) -> float:
    if delta < -_CLAMP:
        raise NegativeMass(delta)
    return max(delta, 0.0)


def localization_delta(params, phi0, method: str = "closed") -> float:
    """
    Weight ``Delta`` of the point mass at the origin.

    ``method="closed"`` uses ``1 - m1 - K_x m4 - K_y m5`` and clamps values in
    ``[-1e-9, 0)`` to 0. ``method="quadrature"`` returns ``1 - int mu_p M``
    from the elliptic-polar rule, unclamped, for cross-checking.

    Raises
    ------
    NegativeMass
        If the closed form falls below ``-1e-9``.
    """
    cp = as_params(params)
    w = weight_coeffs(cp, phi0)
    if method == "closed":
        kx, ky = kxy_constants(cp)
        return _clamp_delta(1.0 - w.m1 - kx * w.m4 - ky * w.m5)
    if method == "quadrature":
        return 1.0 - ellipse_rule(cp).integrate(w.evaluate)
    raise ValueError(f"method must be 'closed' or 'quadrature', got {method!r}")


def limit_density(params, phi0, vx, vy):
    """
    Smooth part ``mu_p M`` of the limit measure at ``(vx, vy)`` and the point mass ``Delta``.

    Returns ``(density, delta)``; ``density`` has the shape of the inputs.
    """
    cp = as_params(params)
    w = weight_coeffs(cp, phi0)
    dens = mu_p(cp, vx, vy) * w.evaluate(np.asarray(vx, dtype=float), np.asarray(vy, dtype=float))
    if np.ndim(dens) == 0:
        dens = float(dens)
    return dens, localization_delta(cp, phi0)


def limit_moment(params, phi0, alpha: int, beta: int, include_atom: bool = True) -> float:
    """
    ``lim <(X_t/t)^alpha (Y_t/t)^beta>`` from the limit measure.

    The smooth part is integrated with the elliptic-polar rule of
    `qwalk2d.quadrature`. The point mass only contributes to the ``(0, 0)``
    moment and is left out when ``include_atom`` is false.
    """
    if alpha < 0 or beta < 0:
        raise ValueError("moment orders must be non-negative")
    cp = as_params(params)
    w = weight_coeffs(cp, phi0)
    value = ellipse_rule(cp).integrate(lambda x, y: x**alpha * y**beta * w.evaluate(x, y))
    if include_atom and alpha == 0 and beta == 0:
        value += localization_delta(cp, phi0)
    return value


@dataclass(frozen=True)
class SymmetryClass:
    reflect_x: bool
    reflect_y: bool
    reflect_both: bool
    birotational: bool

    @property
    def none(self) -> bool:
        return not (self.reflect_x or self.reflect_y or self.reflect_both or self.birotational)

    @property
    def flags(self) -> list[str]:
        names = ["reflect_x", "reflect_y", "reflect_both", "birotational"]
        out = [n for n in names if getattr(self, n)]
        return out or ["none"]

    @property
    def label(self) -> str:
        """The strongest symmetry present; the weaker ones can only co-occur with ``reflect_both``."""
        for name in ("reflect_both", "reflect_x", "reflect_y", "birotational"):
            if getattr(self, name):
                return name
        return "none"


def classify_symmetry(coeffs: WeightCoefficients, tol: float = 1e-12) -> SymmetryClass:
    """
    Symmetry of the limit density read off from vanishing weight coefficients.

    reflect_x: nu(vx, -vy) = nu(vx, vy), when m3 = m6 = 0.
    reflect_y: nu(-vx, vy) = nu(vx, vy), when m2 = m6 = 0.
    birotational: nu(-vx, -vy) = nu(vx, vy), when m2 = m3 = 0.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    z2, z3, z6 = (abs(v) <= tol for v in (coeffs.m2, coeffs.m3, coeffs.m6))
    return SymmetryClass(
        reflect_x=z3 and z6,
        reflect_y=z2 and z6,
        reflect_both=z2 and z3 and z6,
        birotational=z2 and z3,
    )


@dataclass(frozen=True)
class LimitDistribution:
    params: CoinParams
    phi0: Qudit
    coeffs: WeightCoefficients
    delta: float

    def density(self, vx, vy):
        return mu_p(self.params, vx, vy) * self.coeffs.evaluate(
            np.asarray(vx, dtype=float), np.asarray(vy, dtype=float)
        )

    def continuous_mass(self) -> float:
        return ellipse_rule(self.params).integrate(self.coeffs.evaluate)

    @property
    def min_weight(self) -> float:
        """Smallest value of the weight polynomial over the quadrature nodes."""
        rule = ellipse_rule(self.params)
        return float(np.min(self.coeffs.evaluate(rule.vx, rule.vy)))

    def moment(self, alpha: int, beta: int) -> float:
        return limit_moment(self.params, self.phi0, alpha, beta)

    @property
    def symmetry(self) -> SymmetryClass:
        return classify_symmetry(self.coeffs)


def limit_distribution(params, phi0) -> LimitDistribution:
    """
    Bundle the coefficients, point mass and symmetry for one ``(p, phi0)``.

    A weight polynomial dipping below ``-1e-9`` on the ellipse is reported with
    a `RuntimeWarning`, not an error; only integrated masses are enforced.
    """
    cp, qd = as_params(params), as_qudit(phi0)
    dist = LimitDistribution(cp, qd, weight_coeffs(cp, qd), localization_delta(cp, qd))
    if dist.min_weight < -1e-9:
        warnings.warn(f"weight function reaches {dist.min_weight:.3e} on the ellipse", RuntimeWarning,
                      stacklevel=2)
    return dist
