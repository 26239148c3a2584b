"""
Quadrature rules for integrals against the fundamental density.

The density blows up at the four points ``(+-p, +-q)`` where the ellipse
``vx^2/p + vy^2/q = 1`` touches the square ``|vx +- vy| = 1``. We integrate
in elliptic polar coordinates

    vx = sqrt(p) r cos(theta),  vy = sqrt(q) r sin(theta),  r = sin(u),

so the area element is ``sqrt(pq) sin(u) cos(u) du dtheta``. Writing
``cos(phi) = sqrt(p)``, ``sin(phi) = sqrt(q)``, the singular denominator factors as

    D = (cos^2 u + sin^2 u sin^2(theta - phi)) (cos^2 u + sin^2 u sin^2(theta + phi)),

which peaks (width ~ cos u) at theta = +-phi, pi +- phi. The theta axis is
split at those four angles and each piece gets a tanh-sinh rule, whose
double-exponential clustering resolves the peaks for every u. After the
theta integral the u integrand is smooth, so Gauss-Legendre is used in u.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.typing import NDArray

from .core import as_params

__all__ = ["EllipseRule", "ellipse_rule", "tanh_sinh", "DEFAULT_NU", "DEFAULT_NTHETA"]

DEFAULT_NU = 192
DEFAULT_NTHETA = 60  # tanh-sinh half-width per angular piece; 4 * (2m + 1) nodes total


@lru_cache(maxsize=32)
def tanh_sinh(m: int, h: float | None = None):
    """
    Tanh-sinh nodes on [0, 1].

    Returns ``(left, right, w)``: distance of each node from 0, from 1, and its
    weight. Distances are computed without cancellation so endpoint-peaked
    integrands can be evaluated accurately.
    """
    if h is None:
        h = 4.0 / m
    k = np.arange(-m, m + 1) * h
    s = 0.5 * math.pi * np.sinh(k)
    x = np.tanh(s)
    e = np.exp(-2.0 * np.abs(s))
    one_minus_abs = 2.0 * e / (1.0 + e)
    w = 0.5 * h * 0.5 * math.pi * np.cosh(k) / np.cosh(s) ** 2
    left = 0.5 * np.where(x < 0, one_minus_abs, 1.0 + x)
    right = 0.5 * np.where(x > 0, one_minus_abs, 1.0 - x)
    return left, right, w


@dataclass(frozen=True)
class EllipseRule:
    """
    Nodes and weights for ``int int_{ellipse} mu_p(v) g(v) dv``.

    ``weights`` already include the density ``mu_p`` and the area element, so
    ``(weights * g(vx, vy)).sum()`` approximates the integral of ``mu_p * g``.
    """

    p: float
    vx: NDArray[np.float64]
    vy: NDArray[np.float64]
    weights: NDArray[np.float64]

    def integrate(self, g) -> float:
        """Integrate ``mu_p * g``; ``g`` is called once with the node arrays."""
        vals = np.broadcast_to(g(self.vx, self.vy), self.vx.shape)
        return float(np.sum(self.weights * vals))

    def integrate_poly(self, coeffs) -> float:
        """Integrate ``mu_p * sum c[a, b] vx^a vy^b`` given a dict ``{(a, b): c}``."""
        return self.integrate(lambda x, y: sum(c * x**a * y**b for (a, b), c in coeffs.items()))


@lru_cache(maxsize=64)
def _rule(p: float, nu: int, m: int) -> EllipseRule:
    q = 1.0 - p
    phi = math.atan2(math.sqrt(q), math.sqrt(p))
    gu, gw = np.polynomial.legendre.leggauss(nu)
    u = (gu + 1.0) * (math.pi / 4.0)
    uw = gw * (math.pi / 4.0)
    su, cu = np.sin(u), np.cos(u)

    left, right, tw = tanh_sinh(m)
    edges = [-phi, phi, math.pi - phi, math.pi + phi, 2.0 * math.pi - phi]
    vxs, vys, ws = [], [], []
    for i in range(4):
        lo, hi = edges[i], edges[i + 1]
        L = hi - lo
        theta = np.where(left <= right, lo + L * left, hi - L * right)
        # theta + phi and theta - phi are multiples of pi at the piece ends, so
        # their sines equal +-sin(offset from that end); using the offsets
        # keeps full relative precision next to the singular angles
        sin_lo, sin_hi = np.sin(L * left), np.sin(L * right)
        if i % 2 == 0:
            s_tp, s_tm = sin_lo, sin_hi
        else:
            s_tm, s_tp = sin_lo, sin_hi
        c2 = (cu**2)[:, None]
        s2 = (su**2)[:, None]
        D = (c2 + s2 * s_tm[None, :] ** 2) * (c2 + s2 * s_tp[None, :] ** 2)
        vx = math.sqrt(p) * su[:, None] * np.cos(theta)[None, :]
        vy = math.sqrt(q) * su[:, None] * np.sin(theta)[None, :]
        w = (2.0 / math.pi**2) * math.sqrt(p * q) * (uw * su * cu)[:, None] * (L * tw)[None, :] / D
        vxs.append(vx)
        vys.append(vy)
        ws.append(w)
    return EllipseRule(
        p,
        np.concatenate(vxs, axis=1),
        np.concatenate(vys, axis=1),
        np.concatenate(ws, axis=1),
    )


def ellipse_rule(params, nu: int = DEFAULT_NU, ntheta: int = DEFAULT_NTHETA) -> EllipseRule:
    """Cached `EllipseRule` for coin parameter ``p``."""
    return _rule(as_params(params).p, int(nu), int(ntheta))
