"""Table of numeric-vs-closed-form checks run by ``qwalk2d verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import appendix, limitdist
from .errors import QWalkError
from .presets import PRESETS, special_qudit
from .quadrature import ellipse_rule

__all__ = ["CheckResult", "run_verification", "format_report", "P_GRID", "R_GRID"]

P_GRID = (0.1, 0.25, 0.5, 0.75, 0.9)
R_GRID = (0.1, 0.5, 0.9)
A_GRID = (1e-3, 0.3, 1.0 / math.sqrt(2.0), 0.9)


@dataclass(frozen=True)
class CheckResult:
    name: str
    numeric: float
    expected: float
    error: float
    tol: float

    @property
    def passed(self) -> bool:
        return math.isfinite(self.error) and self.error <= self.tol


def _abs(name, numeric, expected, tol):
    return CheckResult(name, float(numeric), float(expected), abs(numeric - expected), tol)


def _rel(name, numeric, expected, tol):
    err = abs(numeric - expected) / abs(expected)
    return CheckResult(name, abs(numeric), abs(expected), err, tol)


def _guarded(name, fn, tol) -> CheckResult:
    """Run ``fn() -> (numeric, expected)``; a raised model error counts as a failure."""
    try:
        numeric, expected = fn()
    except QWalkError:
        return CheckResult(name, math.nan, math.nan, math.nan, tol)
    return _abs(name, numeric, expected, tol)


def _delta_check(name, p, phi) -> CheckResult:
    return _guarded(name, lambda: (limitdist.localization_delta(p, phi, method="quadrature"),
                                   limitdist.localization_delta(p, phi)), 2e-4)


def run_verification() -> list[CheckResult]:
    out: list[CheckResult] = []
    for p in P_GRID:
        out.append(_abs(f"I = pi^2/2 identity p={p}", appendix.total_integral_closed_form(p), math.pi**2 / 2, 1e-12))
    for p in P_GRID:
        rule = ellipse_rule(p)
        out.append(_abs(f"mu_p normalization p={p}", rule.integrate(lambda x, y: 1.0), 1.0, 2e-4))
        kx, ky = limitdist.kxy_constants(p)
        out.append(_abs(f"K_x quadrature p={p}", rule.integrate(lambda x, y: x * x), kx, 2e-4))
        out.append(_abs(f"K_y quadrature p={p}", rule.integrate(lambda x, y: y * y), ky, 2e-4))
        (ixn, ixc), (iyn, iyc) = appendix.ix_iy_check(p)
        out.append(_rel(f"I_x p={p}", ixn, ixc, 1e-4))
        out.append(_rel(f"I_y p={p}", iyn, iyc, 1e-4))
        lhs, rhs = appendix.identity1_check(p)
        out.append(_abs(f"half-line identity p={p}", lhs, rhs, 1e-4))
    for a in A_GRID:
        num, closed = appendix.arcsine_integral_check(a)
        out.append(_abs(f"arcsine integral a={a:.6g}", num, closed, 1e-8))
    for a in A_GRID[1:]:
        out.append(_abs(f"1D density normalization a={a:.6g}", appendix.line_density_normalization(a), 1.0, 1e-8))
    for p in P_GRID:
        for r in R_GRID:
            num, closed = appendix.contour_J_check(r, p)
            out.append(CheckResult(f"contour J(r) r={r} p={p}", abs(num), abs(closed),
                                   abs(num - closed) / abs(closed), 1e-8))
            num, closed = appendix.residue_check(r, p)
            out.append(CheckResult(f"residue at z- r={r} p={p}", abs(num), abs(closed),
                                   abs(num - closed) / abs(closed), 1e-8))
    out.append(_guarded("Grover maximum Delta = 2(pi-2)/pi",
                        lambda: (limitdist.localization_delta(0.5, PRESETS["grover-sym"]),
                                 2 * (math.pi - 2) / math.pi), 1e-12))
    cases = [(0.5, "grover-sym"), (0.5, "grover-antisym")] + [(0.25, f"fig{i}") for i in (3, 4, 5, 6)]
    for p, name in cases:
        phi = PRESETS[name]
        out.append(_delta_check(f"Delta closed vs quadrature p={p} {name}", p, phi))
    for p in (0.25, 0.7):
        phi = special_qudit(p)
        out.append(_delta_check(f"Delta closed vs quadrature p={p} special", p, phi))
    return out


def format_report(results: list[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'status':6}  {'check':{width}}  {'error':>10}  {'tol':>8}"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status:6}  {r.name:{width}}  {r.error:10.3e}  {r.tol:8.1e}")
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} checks passed")
    return "\n".join(lines)
