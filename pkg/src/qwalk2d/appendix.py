"""
Numeric checks of the integral identities behind the normalization of
``mu_p`` and the closed forms of ``K_x``, ``K_y``.

Each ``*_check`` returns a ``(numeric, closed_form)`` pair; deciding whether
they agree is left to the caller. One-dimensional integrals with endpoint
singularities are always taken after an ``x = a sin(u)`` substitution.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate

from .core import as_params
from .errors import PoleOnContour
from .quadrature import ellipse_rule

__all__ = [
    "konno_density",
    "line_density",
    "line_density_normalization",
    "arcsine_integral",
    "arcsine_integral_check",
    "contour_poles",
    "contour_integrand",
    "contour_J_check",
    "residue_check",
    "residue_symmetry",
    "identity1_check",
    "ix_iy_check",
    "total_integral_closed_form",
    "CONTOUR_NODES",
]

CONTOUR_NODES = 4096
_POLE_TOL = 1e-8


def konno_density(x, a: float):
    """
    One-dimensional limit density ``sqrt(1-a^2) / (pi (1-x^2) sqrt(a^2-x^2))`` on ``|x| < |a|``.
    """
    a = float(a)
    if not 0.0 < abs(a) < 1.0:
        raise ValueError(f"need 0 < |a| < 1, got {a}")
    x = np.asarray(x, dtype=float)
    inside = np.abs(x) < abs(a)
    xs = np.where(inside, x, 0.0)
    val = math.sqrt(1.0 - a * a) / (math.pi * (1.0 - xs * xs) * np.sqrt(a * a - xs * xs))
    out = np.where(inside, val, 0.0)
    return float(out) if out.ndim == 0 else out


line_density = konno_density


def line_density_normalization(a: float) -> float:
    """``int line_density(x; a) dx`` with ``x = |a| sin(u)``."""
    a = abs(float(a))
    c = math.sqrt(1.0 - a * a) / math.pi
    val, _ = integrate.quad(lambda u: c / (1.0 - (a * math.sin(u)) ** 2), -math.pi / 2, math.pi / 2,
                            epsabs=1e-13, epsrel=1e-13)
    return val


def arcsine_integral(a: float) -> float:
    """``int_0^1 x / ((1 - a^2 x^2) sqrt(1 - x^2)) dx`` with ``x = sin(u)``."""
    a2 = float(a) ** 2
    val, _ = integrate.quad(lambda u: math.sin(u) / (1.0 - a2 * math.sin(u) ** 2), 0.0, math.pi / 2,
                            epsabs=1e-14, epsrel=1e-13)
    return val


def arcsine_integral_check(a: float) -> tuple[float, float]:
    a = float(a)
    if not abs(a) < 1.0:
        raise ValueError(f"need |a| < 1, got {a}")
    closed = 1.0 if a == 0.0 else math.asin(a) / (a * math.sqrt(1.0 - a * a))
    return arcsine_integral(a), closed


def contour_poles(r: float, params) -> tuple[complex, complex]:
    """``z_+-`` = (sqrt p + i sqrt q)(1 +- sqrt(1 - r^2)) / r; only ``z_-`` lies inside the unit circle."""
    cp = as_params(params)
    w = complex(math.sqrt(cp.p), math.sqrt(cp.q)) / r
    s = math.sqrt(1.0 - r * r)
    return w * (1.0 + s), w * (1.0 - s)


def _all_poles(r: float, params) -> list[complex]:
    zp, zm = contour_poles(r, params)
    out = []
    for c in (zp, zm, zp.conjugate(), zm.conjugate()):
        out += [c, -c]
    return out


def contour_integrand(z, r: float, params):
    """``f(z) = z^3 / prod(z - pole)`` over the eight poles ``+-z_+-``, ``+-conj(z_+-)``."""
    z = np.asarray(z, dtype=complex)
    den = np.ones_like(z)
    for c in _all_poles(r, params):
        den = den * (z - c)
    return z**3 / den


def _check_r(r: float, params) -> None:
    if not 0.0 < r <= 1.0:
        raise ValueError(f"need 0 < r <= 1, got {r}")
    zp, zm = contour_poles(r, params)
    if abs(abs(zp) - 1.0) < _POLE_TOL or abs(abs(zm) - 1.0) < _POLE_TOL:
        raise PoleOnContour(f"a pole of f lies on |z| = 1 at r = {r}")


def contour_J_check(r: float, params, nodes: int = CONTOUR_NODES, weight=None) -> tuple[complex, complex]:
    """
    ``J(r) = oint_{|z|=1} f(z) dz`` by the periodic trapezoid rule, and its closed form.

    ``weight`` optionally multiplies the integrand (e.g. ``(z + 1/z)^2`` for ``J_x``);
    the closed form returned is then the matching one for ``J_x`` or ``J_y`` if
    ``weight`` is the string ``"x"`` or ``"y"``.
    """
    cp = as_params(params)
    _check_r(r, cp)
    theta = 2.0 * math.pi * np.arange(nodes) / nodes
    z = np.exp(1j * theta)
    s = math.sqrt(1.0 - r * r)
    g = 1.0
    if weight == "x":
        g = (z + 1.0 / z) ** 2
        closed = 1j * math.pi / 4 * r**4 / ((1.0 - cp.p * r * r) * s)
    elif weight == "y":
        g = (z - 1.0 / z) ** 2
        closed = -1j * math.pi / 4 * r**4 / ((1.0 - cp.q * r * r) * s)
    elif weight is None:
        closed = 1j * math.pi / 16 * r**4 / s * (1.0 / (1.0 - cp.p * r * r) + 1.0 / (1.0 - cp.q * r * r))
    else:
        raise ValueError(f"weight must be None, 'x' or 'y', got {weight!r}")
    # dz = i z dtheta
    numeric = complex(np.sum(contour_integrand(z, r, cp) * g * 1j * z) * (2.0 * math.pi / nodes))
    return numeric, complex(closed)


def _residue_at(pole: complex, r: float, params) -> complex:
    """Simple-pole residue with the vanishing factor divided out exactly."""
    others = [c for c in _all_poles(r, params) if abs(c - pole) > 1e-14 * max(1.0, abs(pole))]
    if len(others) != 7:
        raise ValueError("poles are not simple at this r")
    den = 1.0 + 0j
    for c in others:
        den *= pole - c
    return pole**3 / den


def residue_check(r: float, params) -> tuple[complex, complex]:
    """``Res(f, z_-)`` evaluated from the factored integrand vs the closed expression."""
    cp = as_params(params)
    _check_r(r, cp)
    _, zm = contour_poles(r, cp)
    numeric = _residue_at(zm, r, cp)
    s = math.sqrt(1.0 - r * r)
    sp, sq = math.sqrt(cp.p), math.sqrt(cp.q)
    closed = (
        r**4 / (2**7 * cp.sqrt_pq * s)
        * complex(sp, sq * s) * complex(sq, -sp * s)
        / ((1.0 - cp.p * r * r) * (1.0 - cp.q * r * r))
    )
    return numeric, closed


def residue_symmetry(r: float, params) -> dict[str, complex]:
    """Residues of ``f`` at the four poles inside the unit circle."""
    cp = as_params(params)
    _check_r(r, cp)
    _, zm = contour_poles(r, cp)
    return {
        "z-": _residue_at(zm, r, cp),
        "-z-": _residue_at(-zm, r, cp),
        "conj(z-)": _residue_at(zm.conjugate(), r, cp),
        "-conj(z-)": _residue_at(-zm.conjugate(), r, cp),
    }


def total_integral_closed_form(params) -> float:
    """``I = pi (arcsin sqrt p + arcsin sqrt q)``, which equals ``pi^2 / 2``."""
    cp = as_params(params)
    return math.pi * (math.asin(math.sqrt(cp.p)) + math.asin(math.sqrt(cp.q)))


def _half_line_moment(a: float) -> float:
    """``int_0^a r line_density(r; a) dr`` with ``r = a sin(u)``."""
    c = math.sqrt(1.0 - a * a) / math.pi
    val, _ = integrate.quad(lambda u: c * a * math.sin(u) / (1.0 - (a * math.sin(u)) ** 2),
                            0.0, math.pi / 2, epsabs=1e-14, epsrel=1e-13)
    return val


def identity1_check(params) -> tuple[float, float]:
    """
    Half the mass of ``mu_p`` against ``int_0^inf r mu(r; sqrt p) dr + int_0^inf r mu(r; sqrt q) dr``.
    """
    cp = as_params(params)
    lhs = 0.5 * ellipse_rule(cp).integrate(lambda x, y: 1.0)
    rhs = _half_line_moment(math.sqrt(cp.p)) + _half_line_moment(math.sqrt(cp.q))
    return lhs, rhs


def ix_iy_check(params) -> tuple[tuple[float, float], tuple[float, float]]:
    """
    ``I_x``, ``I_y``: integrals of ``vx^2 / D`` and ``vy^2 / D`` over the ellipse.

    The numeric values come from the elliptic-polar rule (whose weights carry
    ``2 / (pi^2 D)``), rescaled by ``pi^2 / 2``.
    """
    cp = as_params(params)
    rule = ellipse_rule(cp)
    scale = math.pi**2 / 2.0
    ix_num = scale * rule.integrate(lambda x, y: x * x)
    iy_num = scale * rule.integrate(lambda x, y: y * y)
    ix_closed = math.pi * (math.asin(math.sqrt(cp.p)) - cp.sqrt_pq)
    iy_closed = math.pi * (math.asin(math.sqrt(cp.q)) - cp.sqrt_pq)
    return (ix_num, ix_closed), (iy_num, iy_closed)
