"""SAFT Zak transform, Poisson summation and the bandlimited energy identity.

All functions here need ``b > 0`` because their normalizations involve
``sqrt(2 pi b)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .convolution import dtsaft, semidiscrete_at
from .errors import DivisionByZeroNorm, NegativeB, ValidationError
from .params import SaftParams
from .sampling import evaluate_series, synthesized_spectrum
from .signal import SampleSeq, Signal, UniformGrid, eta, zeta
from .transform import forward_at

Func = Callable[[np.ndarray], np.ndarray]


def _require_positive_b(params: SaftParams):
    if params.b <= 0:
        raise NegativeB(f"this operation needs b > 0, got b = {params.b}")


@dataclass(frozen=True)
class ZakValue:
    t: float
    omega: float
    value: complex
    K: int


def _zak_terms(params, f, t, w, ks):
    k = np.asarray(ks, dtype=float)
    coef = zeta(params, k)
    acc = np.zeros(np.broadcast(t, w).shape, dtype=complex)
    for kk, ck in zip(k, coef):
        acc = acc + ck * f(t + kk) * np.exp(-1j * kk * w / params.b)
    return acc


def zak_value(params: SaftParams, f: Func, t, omega, K: int = 64,
              adaptive: bool = True, tol: float = 1e-10, K_max: int = 4096) -> ZakValue:
    """Zak transform at one point, with the truncation actually used."""
    z, K = _zak(params, f, float(t), float(omega), K, adaptive, tol, K_max)
    return ZakValue(float(t), float(omega), complex(z), K)


def _zak(params, f, t, w, K, adaptive, tol, K_max):
    _require_positive_b(params)
    if K < 1:
        raise ValidationError("K must be >= 1")
    t = np.asarray(t, dtype=float)
    w = np.asarray(w, dtype=float)
    acc = _zak_terms(params, f, t, w, range(-K, K + 1))
    while adaptive and K < K_max:
        K2 = min(2 * K, K_max)
        ks = list(range(-K2, -K)) + list(range(K + 1, K2 + 1))
        extra = _zak_terms(params, f, t, w, ks)
        acc = acc + extra
        K = K2
        if np.max(np.abs(extra), initial=0.0) < tol:
            break
    return acc * eta(params, w) / math.sqrt(2.0 * math.pi * params.b), K


def zak(params: SaftParams, f: Func, t, omega, K: int = 64,
        adaptive: bool = True):
    """SAFT Zak transform ``Z(t, w)`` (broadcasts over ``t`` and ``omega``).

    ``eta(w) / sqrt(2 pi b) * sum_{|k|<=K} f(t + k) zeta(k) exp(-j k w / b)``.
    ``f`` is a vectorized callable. With ``adaptive`` the truncation doubles
    until the added terms fall below 1e-10.

    Raises
    ------
    NegativeB
        If ``b <= 0``.
    """
    return _zak(params, f, t, omega, K, adaptive, 1e-10, 4096)[0]


def zak_quasiperiod_factor(params: SaftParams, omega) -> np.ndarray:
    """Factor relating ``Z(t, w + Delta)`` to ``Z(t, w)``."""
    _require_positive_b(params)
    w = np.asarray(omega, dtype=float)
    D = params.delta
    return np.exp(1j * D / (2.0 * params.b) * (params.d * D + 2.0 * params.d * w
                                               + params.omega_cap))


def zak_isometry_residual(params: SaftParams, f: Func, f_energy: float,
                          K: int = 64, nt: int = 128, nw: int = 128) -> float:
    """``| integral_B |Z|^2 - ||f||^2 | / ||f||^2`` on ``B = [0,1) x [0,Delta)``.

    The rectangle rule on a periodic ``nt x nw`` grid is used; after
    integration over ``w`` the integrand is 1-periodic in ``t``, so the rule
    converges quickly. Returns 0 when both sides vanish.
    """
    _require_positive_b(params)
    t = np.arange(nt) / nt
    w = params.delta * np.arange(nw) / nw
    Z = zak(params, f, t[:, None], w[None, :], K)
    lhs = float(np.sum(np.abs(Z) ** 2)) * (1.0 / nt) * (params.delta / nw)
    if f_energy == 0.0:
        if lhs == 0.0:
            return 0.0
        raise DivisionByZeroNorm("zero reference energy")
    return abs(lhs - f_energy) / f_energy


def zak_sample_energy_residual(params: SaftParams, f: Func, K: int = 64,
                               nw: int = 8192) -> float:
    """``| integral_0^Delta |Z(0, w)|^2 dw - sum_k |f(k)|^2 |`` relative."""
    w = params.delta * np.arange(nw) / nw
    Z0 = zak(params, f, 0.0, w, K, adaptive=False)
    lhs = float(np.sum(np.abs(Z0) ** 2)) * params.delta / nw
    k = np.arange(-K, K + 1)
    rhs = float(np.sum(np.abs(f(k.astype(float))) ** 2))
    if rhs == 0.0:
        raise DivisionByZeroNorm("integer samples vanish")
    return abs(lhs - rhs) / rhs


def zak_grammian_residual(params: SaftParams, P: SampleSeq, phi: Func,
                          tgrid: UniformGrid, omegas, K: int = 8) -> float:
    """Check ``G_f(w) = |Z_f(0, w)|^2 G_phi(w)`` for ``f = P *_A phi``.

    ``phi`` must satisfy ``phi(m) = sqrt(2 pi |b|) delta_m`` at the integers
    so that ``f(k) = P[k]``. Both Grammians are computed from quadrature
    spectra of ``f`` and ``phi`` on ``tgrid``, truncated to ``|k| <= K``;
    ``Z_f(0, .)`` is evaluated from ``f`` itself.
    """
    _require_positive_b(params)
    w = np.asarray(omegas, dtype=float)
    f_sig = Signal(tgrid, semidiscrete_at(params, P, phi, tgrid.points))
    phi_sig = Signal.from_function(tgrid, phi)
    shifted = (w[None, :] + params.delta * np.arange(-K, K + 1)[:, None]).ravel()
    Gf = np.sum(np.abs(forward_at(params, f_sig, shifted).reshape(2 * K + 1, -1)) ** 2,
                axis=0)
    Gphi = np.sum(np.abs(forward_at(params, phi_sig, shifted).reshape(2 * K + 1, -1)) ** 2,
                  axis=0)

    def f_func(t):
        return semidiscrete_at(params, P, phi, t)
    lo = P.offset - 1
    reach = max(abs(lo), abs(P.last + 1)) + 64
    Z0 = zak(params, f_func, 0.0, w, K=reach, adaptive=False)
    rhs = np.abs(Z0) ** 2 * Gphi
    return float(np.max(np.abs(Gf - rhs)) / np.max(np.abs(rhs)))


def zak_dtsaft_residual(params: SaftParams, samples: SampleSeq, omegas) -> float:
    """Compare ``Z(0, w)`` of a function with integer samples ``samples`` and
    the DT-SAFT of the samples."""
    def f(t):
        t = np.asarray(t, dtype=float)
        ki = np.rint(t).astype(int)
        on = np.abs(t - ki) < 1e-12
        vals = np.array([samples[k] for k in ki.ravel()]).reshape(t.shape)
        return np.where(on, vals, 0.0)
    K = max(abs(samples.offset), abs(samples.last))
    w = np.asarray(omegas, dtype=float)
    Z0 = zak(params, f, 0.0, w, K=max(K, 1), adaptive=False)
    ref = dtsaft(params, samples, w)
    scale = max(float(np.max(np.abs(ref))), 1e-300)
    return float(np.max(np.abs(Z0 - ref)) / scale)


# -- Poisson summation --------------------------------------------------------

def poisson_lhs(params: SaftParams, f: Func, t, K: int = 64) -> np.ndarray:
    """``sqrt(2 pi b) sum_{|k|<=K} f(t + k Delta) zeta(t + k Delta)``."""
    _require_positive_b(params)
    t = np.asarray(t, dtype=float)
    acc = np.zeros(t.shape, dtype=complex)
    for k in range(-K, K + 1):
        s = t + k * params.delta
        acc += f(s) * zeta(params, s)
    return math.sqrt(2.0 * math.pi * params.b) * acc


def poisson_rhs(params: SaftParams, F_int: SampleSeq, t) -> np.ndarray:
    """``sum_n exp(-j (d n^2 + Omega n - 2 n t) / 2b) F(n)``."""
    _require_positive_b(params)
    t = np.asarray(t, dtype=float)
    n = F_int.indices.astype(float)
    phase = np.exp(-1j * (params.d * n * n + params.omega_cap * n) / (2.0 * params.b))
    return np.exp(1j * np.outer(t.ravel(), n) / params.b) @ (phase * F_int.values)


def integer_spectrum(params: SaftParams, f: Signal, K: int = 64) -> SampleSeq:
    """Quadrature SAFT of ``f`` at the integers ``-K..K``."""
    n = np.arange(-K, K + 1, dtype=float)
    return SampleSeq(-K, forward_at(params, f, n))


def poisson_residual(params: SaftParams, f: Func, fgrid: UniformGrid,
                     tgrid: UniformGrid, K: int = 64) -> float:
    """``max |LHS - RHS| / max |RHS|`` over ``tgrid``.

    ``f`` is sampled on ``fgrid`` to obtain ``F(n)`` by quadrature; the
    left side evaluates ``f`` directly. Returns 0 when both sides vanish.
    """
    F_int = integer_spectrum(params, Signal.from_function(fgrid, f), K)
    t = tgrid.points
    lhs = poisson_lhs(params, f, t, K)
    rhs = poisson_rhs(params, F_int, t)
    scale = float(np.max(np.abs(rhs)))
    if scale == 0.0:
        if np.max(np.abs(lhs)) == 0.0:
            return 0.0
        raise DivisionByZeroNorm("right-hand side vanishes")
    return float(np.max(np.abs(lhs - rhs)) / scale)


# -- bandlimited energy -------------------------------------------------------

@dataclass(frozen=True)
class EnergyCheck:
    sample_energy: float
    spectral_energy: float
    residual: float


def bandlimited_energy_check(params: SaftParams, coeffs: SampleSeq,
                             band: float = 0.5, K: int = 128) -> EnergyCheck:
    """Compare ``sum_{|k|<=K} |g(k Delta)|^2`` with ``(1/2 pi b) integral |G|^2``.

    ``g`` is the sampling series with coefficients ``coeffs`` and spacing
    ``T = pi b / band`` (so ``G`` is supported in ``(-band, band)``). The
    samples are evaluated from the series and the spectral energy from the
    closed-form spectrum, integrated exactly over one period of its
    trigonometric polynomial.
    """
    _require_positive_b(params)
    if not band > 0:
        raise ValidationError("band must be positive")
    T = math.pi * params.b / band
    tk = params.delta * np.arange(-K, K + 1)
    lhs = float(np.sum(np.abs(evaluate_series(params, coeffs, T, tk)) ** 2))
    m = 4 * (len(coeffs) + 1)
    w = -band + 2.0 * band * (np.arange(m) + 0.5) / m
    G = synthesized_spectrum(params, coeffs, T, w)
    rhs = float(np.sum(np.abs(G) ** 2)) * (2.0 * band / m) / (2.0 * math.pi * params.b)
    if rhs == 0.0:
        return EnergyCheck(lhs, rhs, 0.0 if lhs == 0.0 else math.inf)
    return EnergyCheck(lhs, rhs, abs(lhs - rhs) / rhs)


def bandlimited_energy_residual(params: SaftParams, coeffs: SampleSeq,
                                band: float = 0.5, K: int = 128) -> float:
    return bandlimited_energy_check(params, coeffs, band, K).residual
