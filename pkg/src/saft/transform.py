"""Forward and inverse SAFT by direct quadrature.

The kernel factors as ``zeta(t) * eta(w) * exp(-j t w / b) / sqrt(2 pi |b|)``
so only the cross term needs an (n_t x n_w) matrix; it is built in column
blocks to bound memory. No FFT acceleration: every output value is an
explicit trapezoidal sum over the input grid.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import EmptyGrid
from .params import SaftParams
from .signal import (Signal, Spectrum, UniformGrid, eta, l2_norm,
                     trapezoid_weights, weighted_sum, zeta)

_BLOCK_ELEMENTS = 1 << 21


def kernel(params: SaftParams, t, omega) -> np.ndarray:
    """Transform kernel ``k(t, w)``, evaluated literally (broadcasts)."""
    a, b, _, d, p, _ = params.as_tuple()
    t = np.asarray(t, dtype=float)
    w = np.asarray(omega, dtype=float)
    phase = (a * t * t + d * w * w - 2.0 * t * w + 2.0 * p * t
             + params.omega_cap * w) / (2.0 * b)
    return np.exp(1j * phase) / math.sqrt(2.0 * math.pi * abs(b))


def _cross_sum(g, x, y, sign, b, summation):
    # sum_i g[i] * exp(sign * j * x[i] * y[m] / b) for every m
    out = np.empty(y.size, dtype=complex)
    block = max(1, _BLOCK_ELEMENTS // max(x.size, 1))
    for start in range(0, y.size, block):
        ys = y[start:start + block]
        terms = g[:, None] * np.exp(sign * 1j * np.outer(x, ys) / b)
        out[start:start + block] = weighted_sum(terms, axis=0,
                                                summation=summation)
    return out


def forward_at(params: SaftParams, f: Signal, omegas,
               summation: str = "sequential") -> np.ndarray:
    """SAFT of ``f`` at arbitrary frequencies ``omegas``."""
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    t = f.t
    g = trapezoid_weights(t.size, f.grid.dt) * zeta(params, t) * f.values
    out = _cross_sum(g, t, omegas, -1.0, params.b, summation)
    return out * eta(params, omegas) / math.sqrt(2.0 * math.pi * abs(params.b))


def default_omega_grid(params: SaftParams, tgrid: UniformGrid) -> UniformGrid:
    """Frequency grid spanning ``[-pi |b| / dt, pi |b| / dt)`` with ``n`` points.

    For the Fourier preset this is the usual DFT frequency grid.
    """
    half = math.pi * abs(params.b) / tgrid.dt
    return UniformGrid.periodic(-half, 2.0 * half, tgrid.n)


def forward(params: SaftParams, f: Signal, omega_grid: UniformGrid | None = None,
            summation: str = "sequential") -> Spectrum:
    """SAFT of a sampled signal.

    Parameters
    ----------
    params : SaftParams
    f : Signal
        Input; its grid must cover the effective support of ``f``.
    omega_grid : UniformGrid, optional
        Output frequencies. Defaults to :func:`default_omega_grid`.
    summation : {'sequential', 'pairwise'}

    Returns
    -------
    Spectrum
    """
    if f.grid.n < 1:
        raise EmptyGrid("empty input grid")
    if omega_grid is None:
        omega_grid = default_omega_grid(params, f.grid)
    return Spectrum(omega_grid, forward_at(params, f, omega_grid.points, summation))


def inverse_at(params: SaftParams, F: Spectrum, ts,
               summation: str = "sequential") -> np.ndarray:
    """Inverse SAFT at arbitrary times, integrating the conjugate kernel over w."""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    w = F.grid.points
    g = trapezoid_weights(w.size, F.grid.dt) * np.conj(eta(params, w)) * F.values
    out = _cross_sum(g, w, ts, +1.0, params.b, summation)
    return out * np.conj(zeta(params, ts)) / math.sqrt(2.0 * math.pi * abs(params.b))


def inverse(params: SaftParams, F: Spectrum, tgrid: UniformGrid,
            summation: str = "sequential") -> Signal:
    if F.grid.n < 1:
        raise EmptyGrid("empty spectrum grid")
    return Signal(tgrid, inverse_at(params, F, tgrid.points, summation))


def parseval_residual(params: SaftParams, f: Signal,
                      omega_grid: UniformGrid | None = None) -> float:
    """``| ||F|| - ||f|| | / ||f||``."""
    F = forward(params, f, omega_grid)
    nf = l2_norm(f)
    return abs(l2_norm(F) - nf) / nf
