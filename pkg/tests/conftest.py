import math

import numpy as np
import pytest

from circle_unc import _pykernels

try:
    from circle_unc import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = [_pykernels] + ([_ckernels] if _ckernels is not None else [])

Z_MODS = (0.2, 0.4, 1.0, 2.0, 3.0)
Z_PHASES = (0.0, math.pi / 4, math.pi / 2, math.pi)


@pytest.fixture(params=BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def backend(request):
    return request.param


def series_coeffs(z, s=1.0, mmax=60):
    """Unnormalized c_m = exp(-s m^2/2) z^(-m), |m| <= mmax, computed term by term."""
    ms = np.arange(-mmax, mmax + 1)
    return ms, np.array([math.exp(-s * m * m / 2) * complex(z) ** (-int(m)) for m in ms])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
