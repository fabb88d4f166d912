import cmath
import math

import numpy as np
import pytest

from saft.params import preset
from saft.signal import UniformGrid

ACCEPTANCE_LINES = []

BATTERY = {
    "ft": ("ft", ()),
    "frft(1.0)": ("frft", (1.0,)),
    "lct(2,1,3,2)": ("lct", (2.0, 1.0, 3.0, 2.0)),
    "experiment": ("experiment", ()),
}


def battery_params():
    return {label: preset(name, args) for label, (name, args) in BATTERY.items()}


def chirped_gaussian(alpha=0.5, chirp=0.5, shift=0.0):
    """``exp(-alpha (t - shift)^2 + j chirp t^2)`` as a callable."""
    def f(t):
        t = np.asarray(t, dtype=float)
        return np.exp(-alpha * (t - shift) ** 2 + 1j * chirp * t * t)
    return f


def gaussian_saft(params, alpha, chirp, omega):
    """Closed-form SAFT of ``exp(-alpha t^2 + j chirp t^2)``.

    Completing the square: the integrand is ``exp(-beta t^2 + j (p - w) t / b)``
    with ``beta = alpha - j (chirp + a / 2b)``.
    """
    a, b, _, d, p, _ = params.as_tuple()
    w = np.asarray(omega, dtype=float)
    beta = alpha - 1j * (chirp + a / (2.0 * b))
    lin = 1j * (p - w) / b
    eta = np.exp(1j * (d * w * w + params.omega_cap * w) / (2.0 * b))
    return (eta / math.sqrt(2.0 * math.pi * abs(b)) * cmath.sqrt(math.pi / beta)
            * np.exp(lin * lin / (4.0 * beta)))


def spectrum_grid(params, n, alpha=0.5, chirp=0.5, width=8.0):
    """Frequency grid covering the SAFT of a chirped Gaussian.

    ``|F|`` falls to ``exp(-width^2 / 2)`` of its peak at the grid ends.
    """
    g = chirp + params.a / (2.0 * params.b)
    half = width * abs(params.b) * math.sqrt(2.0 * (alpha * alpha + g * g) / alpha)
    return UniformGrid.linspace(params.p - half, params.p + half, n)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
