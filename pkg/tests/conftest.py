import numpy as np
import pytest

from qwalk2d.core import Qudit
from qwalk2d.presets import PRESETS

FIG_CASES = [("fig3", "reflect_x"), ("fig4", "reflect_y"), ("fig5", "reflect_both"), ("fig6", "birotational")]


def random_qudit(rng) -> Qudit:
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    return Qudit(tuple(v / np.linalg.norm(v)))


@pytest.fixture
def rng():
    return np.random.default_rng(20080620)


@pytest.fixture(params=[name for name, _ in FIG_CASES])
def fig_qudit(request):
    return PRESETS[request.param]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
