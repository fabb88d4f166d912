"""Chirp-modulated shift-invariant spaces with arbitrary generators.

A generator is a real profile ``nu``; the corresponding kernel is
``psi(t) = sqrt(2 pi |b|) conj(zeta(t)) nu(t)``. On a lattice with spacing
``T`` the model reads

    f(t) = conj(zeta(t)) * sum_k p[k] zeta(kT) nu(t/T - k).

The weights ``p`` that make the model interpolate given samples are found
by demodulating the samples, filtering with the inverse discrete filter
``theta`` (``theta * nu(integers) = delta``), and remodulating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import factorial

from .errors import (DelayOutOfRange, NonInvertibleSymbol, ValidationError,
                     ZeroReference)
from .params import SaftParams
from .signal import SampleSeq, Signal, eta, zeta

MU = math.sqrt(3.0) - 2.0
DFT_SIZE = 4096
TAP_CUTOFF = 1e-12


def power_cosine(t) -> np.ndarray:
    """``(2/3) cos^4(pi t / 4)`` on ``[-2, 2]``, zero elsewhere."""
    t = np.asarray(t, dtype=float)
    return np.where(np.abs(t) <= 2.0, (2.0 / 3.0) * np.cos(np.pi * t / 4.0) ** 4, 0.0)


def _sinc_u(x):
    # unnormalized sinc, sin(x) / x
    return np.sinc(np.asarray(x, dtype=float) / np.pi)


POWER_COSINE_RHO = {k: 4.0 / (factorial(2 + k) * factorial(2 - k)) for k in range(-2, 3)}


def power_cosine_hat(omega) -> np.ndarray:
    """Fourier transform ``integral nu(t) exp(-j w t) dt`` of :func:`power_cosine`.

    ``sum_{|k|<=2} rho_k sin(2w - k pi) / (2w - k pi)`` with
    ``rho_k = 4 / ((2+k)! (2-k)!)``. The unnormalized sinc is the
    convention under which this matches direct quadrature.
    """
    w = np.asarray(omega, dtype=float)
    return sum(rho * _sinc_u(2.0 * w - k * np.pi) for k, rho in POWER_COSINE_RHO.items())


def _sinc_hat(omega):
    w = np.asarray(omega, dtype=float)
    return np.where((w >= -np.pi) & (w < np.pi), 1.0, 0.0)


@dataclass(frozen=True, eq=False)
class Generator:
    """Real generator profile with compact (or effectively compact) support."""

    name: str
    profile: Callable[[np.ndarray], np.ndarray]
    support: tuple[float, float]
    fourier: Callable[[np.ndarray], np.ndarray] | None = None
    integer_samples: SampleSeq = field(init=False)

    def __post_init__(self):
        # infinite supports are sampled on a finite stretch
        lo = math.ceil(max(self.support[0], -64.0))
        hi = math.floor(min(self.support[1], 64.0))
        ks = np.arange(lo, hi + 1)
        object.__setattr__(self, "integer_samples",
                           SampleSeq(lo, np.asarray(self.profile(ks), dtype=float)))

    def __call__(self, t):
        return self.profile(t)

    @property
    def half_width(self) -> float:
        return max(abs(self.support[0]), abs(self.support[1]))

    def hat(self, omega) -> np.ndarray:
        """``integral nu(t) exp(-j w t) dt``; quadrature if no closed form."""
        if self.fourier is not None:
            return self.fourier(omega)
        return _hat_by_quadrature(self, omega)


def _hat_by_quadrature(gen: Generator, omega, per_unit: int = 256):
    lo, hi = gen.support
    n = int(math.ceil((hi - lo) * per_unit)) + 1
    t = np.linspace(lo, hi, n)
    w = np.full(n, t[1] - t[0])
    w[0] = w[-1] = 0.5 * (t[1] - t[0])
    g = w * gen.profile(t)
    om = np.asarray(omega, dtype=float)
    flat = om.reshape(-1)
    out = np.array([np.sum(g * np.exp(-1j * x * t)) for x in flat])
    return out.reshape(om.shape)


def truncated_sinc(half_width: int = 64) -> Generator:
    """Sinc profile cut to ``[-W, W]`` (no window)."""
    W = float(half_width)

    def nu(t):
        t = np.asarray(t, dtype=float)
        return np.where(np.abs(t) <= W, np.sinc(t), 0.0)
    return Generator("sinc-truncated", nu, (-W, W))


_REGISTRY: dict[str, Callable[[], Generator]] = {
    "power-cosine": lambda: Generator("power-cosine", power_cosine, (-2.0, 2.0),
                                      power_cosine_hat),
    "sinc": lambda: Generator("sinc", np.sinc, (-math.inf, math.inf), _sinc_hat),
    "sinc-truncated": truncated_sinc,
}


def register_generator(name: str, factory: Callable[[], Generator]) -> None:
    _REGISTRY[name] = factory


def generator_names() -> list[str]:
    return list(_REGISTRY)


def get_generator(name: str) -> Generator:
    try:
        return _REGISTRY[name]()
    except KeyError:
        raise ValidationError(
            f"unknown generator {name!r}; choose from {', '.join(_REGISTRY)}") from None


def generator_spectrum(params: SaftParams, gen: Generator) -> Callable:
    """SAFT of the kernel ``psi``: ``eta(w) * nu_hat(w / b)``."""
    def Psi(omega):
        w = np.asarray(omega, dtype=float)
        return eta(params, w) * gen.hat(w / params.b)
    return Psi


# -- inverse discrete filter --------------------------------------------------

@dataclass(frozen=True, eq=False)
class InverseDiscreteFilter:
    """FIR approximation of the sequence ``theta`` with ``theta * nu(k) = delta``."""

    kind: str
    taps: SampleSeq
    mu: float = math.nan
    gain: float = math.nan

    @property
    def max_lag(self) -> int:
        return self.taps.last

    def symbol(self, omega) -> np.ndarray:
        w = np.asarray(omega, dtype=float)
        return np.exp(-1j * np.outer(w, self.taps.indices)) @ self.taps.values


def integer_symbol(gen: Generator, omega) -> np.ndarray:
    """``sum_k nu(k) exp(-j w k)``."""
    s = gen.integer_samples
    return np.exp(-1j * np.outer(np.asarray(omega, dtype=float), s.indices)) @ s.values


def _is_kronecker(s: SampleSeq) -> bool:
    off = np.abs(s.values) * (s.indices != 0)
    return abs(s[0] - 1.0) < 1e-14 and bool(np.all(off < 1e-14))


def inverse_filter(gen: Generator, max_lag: int | None = None) -> InverseDiscreteFilter:
    """Inverse discrete filter of a generator.

    * power-cosine: ``theta[k] = sqrt(3) mu^|k|`` with ``mu = sqrt(3) - 2``;
    * generators whose integer samples are a Kronecker delta (sinc and its
      truncations): identity;
    * otherwise: reciprocal of the integer-sample symbol on a 4096-point DFT,
      truncated where ``|theta[k]| < 1e-12``.

    Raises
    ------
    NonInvertibleSymbol
        If the symbol vanishes somewhere on a 1024-point sweep.
    """
    sweep = 2.0 * np.pi * np.arange(1024) / 1024
    sym = integer_symbol(gen, sweep)
    if np.min(np.abs(sym)) < 1e-12 * max(1.0, np.max(np.abs(sym))):
        raise NonInvertibleSymbol(
            f"integer-sample symbol of {gen.name!r} has a zero on [0, 2 pi)")
    if gen.name == "power-cosine":
        gain = -6.0 * MU / (1.0 - MU * MU)
        if max_lag is None:
            max_lag = int(math.ceil(math.log(TAP_CUTOFF / gain) / math.log(-MU)))
        k = np.arange(-max_lag, max_lag + 1)
        return InverseDiscreteFilter("exact-geometric",
                                     SampleSeq(-max_lag, gain * MU ** np.abs(k)),
                                     mu=MU, gain=gain)
    if _is_kronecker(gen.integer_samples):
        return InverseDiscreteFilter("identity", SampleSeq.impulse(0), gain=1.0)
    s = gen.integer_samples
    circ = np.zeros(DFT_SIZE, dtype=complex)
    circ[s.indices % DFT_SIZE] += s.values
    theta = np.fft.ifft(1.0 / np.fft.fft(circ))
    lags = np.fft.fftfreq(DFT_SIZE, 1.0 / DFT_SIZE).astype(int)
    if max_lag is None:
        big = np.abs(theta) >= TAP_CUTOFF
        max_lag = int(np.max(np.abs(lags[big]))) if big.any() else 0
    k = np.arange(-max_lag, max_lag + 1)
    taps = theta[k % DFT_SIZE]
    if np.allclose(taps.imag, 0.0, atol=1e-13):
        taps = taps.real
    return InverseDiscreteFilter("dft-derived", SampleSeq(-max_lag, taps))


# -- weights, interpolation, delay ------------------------------------------

def compute_weights(params: SaftParams, samples: SampleSeq, gen: Generator,
                    T: float = 1.0, filt: InverseDiscreteFilter | None = None) -> SampleSeq:
    """Expansion weights ``p`` such that the model interpolates ``samples``.

    Samples outside the given window are treated as zero, so the weights
    near the ends carry the filter's boundary transient.
    """
    filt = inverse_filter(gen) if filt is None else filt
    kT = samples.indices * T
    demod = samples.values * zeta(params, kT)
    full = np.convolve(demod, filt.taps.values)
    lag0 = -filt.taps.offset
    p_tilde = full[lag0:lag0 + len(samples)]
    return samples.with_values(p_tilde * np.conj(zeta(params, kT)))


def si_interpolate_at(params: SaftParams, p: SampleSeq, gen: Generator, t,
                      T: float = 1.0) -> np.ndarray:
    """Evaluate ``conj(zeta(t)) sum_k p[k] zeta(kT) nu(t/T - k)`` at ``t``."""
    t = np.asarray(t, dtype=float)
    x = t / T
    acc = np.zeros(t.shape, dtype=complex)
    lo_w, hi_w = gen.support
    coef = p.values * zeta(params, p.indices * T)
    for k, ck in zip(p.indices, coef):
        if ck == 0:
            continue
        u = x - k
        if math.isfinite(lo_w):
            mask = (u >= lo_w) & (u <= hi_w)
            if not mask.any():
                continue
            acc[mask] += ck * gen.profile(u[mask])
        else:
            acc += ck * gen.profile(u)
    return np.conj(zeta(params, t)) * acc


def si_interpolate(params: SaftParams, p: SampleSeq, gen: Generator, tgrid,
                   T: float = 1.0):
    return Signal(tgrid, si_interpolate_at(params, p, gen, tgrid.points, T))


def fdf(params: SaftParams, samples: SampleSeq, gen: Generator, tau: float,
        T: float = 1.0, filt: InverseDiscreteFilter | None = None) -> SampleSeq:
    """Fractional delay: estimates of ``f(mT - tau)`` for every sample index ``m``.

    Raises
    ------
    DelayOutOfRange
        Unless ``0 <= tau <= T``.
    """
    if not (0.0 <= tau <= T * (1.0 + 1e-12)):
        raise DelayOutOfRange(f"delay {tau} outside [0, T] with T = {T}")
    p = compute_weights(params, samples, gen, T, filt)
    t = samples.indices * T - tau
    return samples.with_values(si_interpolate_at(params, p, gen, t, T))


def psnr(reference, estimate) -> float:
    """``10 log10(max|ref|^2 / mean|est - ref|^2)`` in dB.

    Returns ``inf`` when the sequences are identical.
    """
    ref = np.asarray(getattr(reference, "values", reference), dtype=complex)
    est = np.asarray(getattr(estimate, "values", estimate), dtype=complex)
    if ref.shape != est.shape:
        raise ValidationError(f"length mismatch: {ref.shape} vs {est.shape}")
    peak = np.max(np.abs(ref) ** 2, initial=0.0)
    if peak == 0.0:
        raise ZeroReference("reference is identically zero")
    mse = np.mean(np.abs(est - ref) ** 2)
    if mse == 0.0:
        return math.inf
    return float(10.0 * np.log10(peak / mse))
