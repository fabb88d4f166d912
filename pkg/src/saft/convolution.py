"""Convolution structures tied to the SAFT.

* :func:`saft_convolve` - chirp-modulated convolution under which the SAFT
  factorizes as ``conj(eta) * F * G``;
* :func:`dtsaft` - transform of a finitely supported sequence;
* :func:`semidiscrete` - sequence/function convolution, the synthesis
  operator of chirp-modulated shift-invariant spaces;
* :func:`grammian` and :func:`riesz_bounds` - the stability test for a
  generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (DegenerateGenerator, DivisionByZeroNorm, GridMismatch,
                     ValidationError)
from .params import SaftParams
from .signal import (SampleSeq, Signal, UniformGrid, chirp, chirp_dn,
                     chirp_up, eta, zeta)
from .transform import forward

SpectrumFunc = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class EtaFactor:
    """Unit-modulus frequency factor ``eta(w)`` left over by the convolution theorem."""

    params: SaftParams

    def __call__(self, omega) -> np.ndarray:
        return eta(self.params, omega)


def std_convolve(f: Signal, g: Signal) -> Signal:
    """``(f * g)(t) = (2 pi)^{-1/2} * integral f(t - x) g(x) dx`` (rectangle rule).

    The output grid starts at ``f.t0 + g.t0`` and spans both supports.
    """
    if abs(f.grid.dt - g.grid.dt) > 1e-9 * f.grid.dt:
        raise GridMismatch(f"step sizes differ: {f.grid.dt} vs {g.grid.dt}")
    dt = f.grid.dt
    grid = UniformGrid(f.grid.t0 + g.grid.t0, dt, f.grid.n + g.grid.n - 1)
    values = np.convolve(f.values, g.values) * (dt / math.sqrt(2.0 * math.pi))
    return Signal(grid, values)


def saft_convolve(params: SaftParams, f: Signal, g: Signal) -> Signal:
    h = std_convolve(chirp_up(params, f), chirp_up(params, g))
    h = h.with_values(h.values / math.sqrt(abs(params.b)))
    return chirp_dn(params, h)


def convolution_theorem_residual(params: SaftParams, f: Signal, g: Signal,
                                 omega_grid: UniformGrid) -> float:
    """Relative mismatch between ``SAFT(f *_A g)`` and ``conj(eta) F G``."""
    F = forward(params, f, omega_grid).values
    G = forward(params, g, omega_grid).values
    rhs = np.conj(eta(params, omega_grid.points)) * F * G
    denom = np.linalg.norm(rhs)
    if denom == 0.0:
        raise DivisionByZeroNorm("F * G vanishes on the frequency grid")
    H = forward(params, saft_convolve(params, f, g), omega_grid).values
    return float(np.linalg.norm(H - rhs) / denom)


def dtsaft(params: SaftParams, P: SampleSeq, omega) -> np.ndarray:
    """Discrete-time SAFT of a finitely supported sequence (exact sum).

    Returns an array shaped like ``omega``; its modulus is periodic with
    period ``2 pi b``.
    """
    w = np.asarray(omega, dtype=float)
    k = P.indices.astype(float)
    coef = P.values * zeta(params, k)
    flat = w.reshape(-1)
    terms = coef[:, None] * np.exp(-1j * np.outer(k, flat) / params.b)
    acc = np.sum(terms, axis=0) if k.size else np.zeros(flat.size, complex)
    out = acc * eta(params, flat) / math.sqrt(2.0 * math.pi * abs(params.b))
    return out.reshape(w.shape)


def semidiscrete_at(params: SaftParams, P: SampleSeq, phi: Callable, t) -> np.ndarray:
    """Semi-discrete convolution ``(P *_A phi)`` at arbitrary times ``t``."""
    t = np.asarray(t, dtype=float)
    acc = np.zeros(t.shape, dtype=complex)
    for k, pk in zip(P.indices, P.values):
        if pk == 0:
            continue
        s = t - k
        acc += (pk * chirp(params, k)) * chirp(params, s) * phi(s)
    return acc * np.conj(chirp(params, t)) / math.sqrt(2.0 * math.pi * abs(params.b))


def semidiscrete(params: SaftParams, P: SampleSeq, phi: Callable,
                 tgrid: UniformGrid) -> Signal:
    """Semi-discrete convolution ``(P *_A phi)`` evaluated on ``tgrid``.

    ``phi`` is any vectorized callable; it is evaluated at ``t - k`` for
    every ``k`` in the support of ``P``.
    """
    return Signal(tgrid, semidiscrete_at(params, P, phi, tgrid.points))


def semidiscrete_theorem_residual(params: SaftParams, P: SampleSeq,
                                  phi: Callable, tgrid: UniformGrid,
                                  omega_grid: UniformGrid) -> float:
    """Relative mismatch between ``SAFT(P *_A phi)`` and ``conj(eta) P_hat Phi``."""
    w = omega_grid.points
    Phi = forward(params, Signal.from_function(tgrid, phi), omega_grid).values
    rhs = np.conj(eta(params, w)) * dtsaft(params, P, w) * Phi
    denom = np.linalg.norm(rhs)
    if denom == 0.0:
        raise DivisionByZeroNorm("right-hand side vanishes")
    H = forward(params, semidiscrete(params, P, phi, tgrid), omega_grid).values
    return float(np.linalg.norm(H - rhs) / denom)


@dataclass(frozen=True)
class GrammianProfile:
    omega: np.ndarray
    value: np.ndarray
    K: int


def _grammian_fixed(params, Phi, w, K):
    shifts = params.delta * np.arange(-K, K + 1)
    total = np.zeros(w.shape, dtype=float)
    for s in shifts:
        total += np.abs(Phi(w + s)) ** 2
    return total


def grammian_profile(params: SaftParams, Phi: SpectrumFunc, omega,
                     K: int = 64, adaptive: bool = True, tol: float = 1e-10,
                     K_max: int = 4096) -> GrammianProfile:
    """Truncated Grammian ``sum_{|k|<=K} |Phi(w + k Delta)|^2``.

    With ``adaptive`` the truncation doubles until successive values agree
    to ``tol`` (absolute) or ``K_max`` is reached.
    """
    if K < 1:
        raise ValidationError("K must be >= 1")
    w = np.asarray(omega, dtype=float)
    G = _grammian_fixed(params, Phi, w, K)
    while adaptive and K < K_max:
        K2 = min(2 * K, K_max)
        extra = np.zeros(w.shape, dtype=float)
        for k in range(K + 1, K2 + 1):
            extra += np.abs(Phi(w + k * params.delta)) ** 2
            extra += np.abs(Phi(w - k * params.delta)) ** 2
        K = K2
        G = G + extra
        if np.max(extra, initial=0.0) < tol:
            break
    return GrammianProfile(w, G, K)


def grammian(params: SaftParams, Phi: SpectrumFunc, omega, K: int = 64,
             adaptive: bool = True):
    return grammian_profile(params, Phi, omega, K, adaptive).value


def riesz_bounds(params: SaftParams, Phi: SpectrumFunc, K: int = 64,
                 sweep_n: int = 512) -> tuple[float, float]:
    """Lower and upper Riesz bounds from a sweep of the Grammian over a period.

    Raises
    ------
    DegenerateGenerator
        If the lower bound is below 1e-12.
    """
    if sweep_n < 16:
        raise ValidationError("sweep_n must be >= 16")
    w = abs(params.delta) * np.arange(sweep_n) / sweep_n
    G = grammian(params, Phi, w, K)
    eta1, eta2 = float(G.min()), float(G.max())
    if eta1 < 1e-12:
        raise DegenerateGenerator(
            f"Grammian lower bound {eta1:.3e} is not positive; "
            "the shifted generators do not form a Riesz basis")
    return eta1, eta2
