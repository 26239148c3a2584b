"""Named initial qudits used throughout the examples and tests."""

from __future__ import annotations

import math

from .core import CoinParams, Qudit, as_params

__all__ = ["PRESETS", "preset_qudit", "special_qudit"]


def special_qudit(params) -> Qudit:
    """(sqrt(p/2), sqrt(p/2), -sqrt(q/2), -sqrt(q/2)): no localization for any p."""
    cp = as_params(params)
    a, b = math.sqrt(cp.p / 2.0), math.sqrt(cp.q / 2.0)
    return Qudit((a, a, -b, -b))


_R2 = 1.0 / math.sqrt(2.0)

# fig3..fig6 are the p = 1/4 configurations with the four symmetry types
PRESETS = {
    "grover-sym": Qudit((0.5, 0.5, 0.5, 0.5)),
    "grover-antisym": Qudit((0.5, 0.5, -0.5, -0.5)),
    "fig3": Qudit((0.5, -0.5, 0.5, 0.5)),
    "fig4": Qudit((0.5, 0.5, 0.5, -0.5)),
    "fig5": Qudit((_R2, _R2, 0.0, 0.0)),
    "fig6": Qudit((0.5, -0.5, -0.5, 0.5)),
}


def preset_qudit(name: str, params: CoinParams | float | None = None) -> Qudit:
    if name == "special":
        if params is None:
            raise ValueError("the 'special' preset depends on p")
        return special_qudit(params)
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown qudit preset {name!r}; choose from {sorted(PRESETS) + ['special']}"
        ) from None
