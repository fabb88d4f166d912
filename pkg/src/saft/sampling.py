"""Shannon-type sampling for SAFT-bandlimited signals.

Atoms of the sampling space with spacing ``T`` (band edge ``sigma = pi |b| / T``)
are

    phi_n(t) = T^{-1/2} conj(zeta(t)) zeta(nT) sinc(t/T - n),

with ``sinc(x) = sin(pi x) / (pi x)``. The chirp ``conj(zeta)`` cancels the
time-side factor of the transform kernel, so every finite combination of
atoms has a SAFT supported in ``[-sigma, sigma]``.

:func:`synthesize` evaluates the interpolating series

    f(t) = conj(zeta(t)) * sum_k f(kT) zeta(kT) sinc(t/T - k),

which reproduces its samples at ``t = kT``. ``sign=+1`` selects the mirrored
series with ``zeta`` and ``conj(zeta)`` exchanged; its atoms are bandlimited
for the conjugate kernel, not for :func:`saft.transform.forward`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import sici

from .errors import GridTooNarrow, ValidationError
from .params import SaftParams
from .signal import SampleSeq, Signal, UniformGrid, eta, inner, zeta

CAPTURE_THRESHOLD = 1e-2


@dataclass(frozen=True)
class BandlimitSpec:
    """Band edge ``sigma`` and sample spacing ``T`` with ``T sigma = pi |b|``."""

    sigma: float
    T: float

    @classmethod
    def from_T(cls, params: SaftParams, T: float) -> "BandlimitSpec":
        _check_T(T)
        return cls(math.pi * abs(params.b) / T, float(T))

    @classmethod
    def from_sigma(cls, params: SaftParams, sigma: float) -> "BandlimitSpec":
        if not sigma > 0:
            raise ValidationError(f"sigma must be positive, got {sigma}")
        return cls(float(sigma), math.pi * abs(params.b) / sigma)


@dataclass(frozen=True)
class BasisAtom:
    n: int
    params: SaftParams
    T: float

    def __call__(self, t):
        return basis_phi(self.params, self.T, self.n, t)


def _check_T(T):
    if not (T > 0 and math.isfinite(T)):
        raise ValidationError(f"sample spacing T must be positive, got {T}")


def _sign_chirps(params, t, nT, sign):
    # (time factor, sample factor) of the series for the chosen convention
    if sign == -1:
        return np.conj(zeta(params, t)), zeta(params, nT)
    if sign == 1:
        return zeta(params, t), np.conj(zeta(params, nT))
    raise ValidationError(f"sign must be +1 or -1, got {sign}")


def basis_phi(params: SaftParams, T: float, n: int, t) -> np.ndarray:
    """Orthonormal atom ``phi_n`` evaluated at ``t``."""
    _check_T(T)
    t = np.asarray(t, dtype=float)
    return (np.conj(zeta(params, t)) * zeta(params, n * T)
            * np.sinc(t / T - n) / math.sqrt(T))


def lowpass_psi(params: SaftParams, T: float, t) -> np.ndarray:
    """Low-pass kernel ``sqrt(2 pi |b|) conj(zeta(t)) sinc(t/T)``.

    ``(f *_A psi)(t) = T f(t)`` for ``f`` bandlimited to ``pi |b| / T``, and
    ``<f, phi_k> = (f *_A psi)(kT) / sqrt(T)``.
    """
    _check_T(T)
    t = np.asarray(t, dtype=float)
    return (math.sqrt(2.0 * math.pi * abs(params.b)) * np.conj(zeta(params, t))
            * np.sinc(-t / T))


def _sinc2_cdf(u):
    """``integral_{-inf}^{u} sinc(x)^2 dx`` (in closed form via Si)."""
    u = np.asarray(u, dtype=float)
    si, _ = sici(2.0 * np.pi * u)
    with np.errstate(invalid="ignore", divide="ignore"):
        head = np.where(u == 0, 0.0, np.sin(np.pi * u) ** 2 / (np.pi ** 2 * u))
    return 0.5 - head + si / np.pi


def atom_capture(T: float, n: int, grid: UniformGrid) -> float:
    """Fraction of ``||phi_n||^2`` lying inside ``[grid.t0, grid.stop]``."""
    lo = grid.t0 / T - n
    hi = grid.stop / T - n
    return float(_sinc2_cdf(hi) - _sinc2_cdf(lo))


def analyze(params: SaftParams, f: Signal, T: float, nrange: tuple[int, int],
            threshold: float = CAPTURE_THRESHOLD) -> SampleSeq:
    """Coefficients ``c[k] = <f, phi_k>`` for ``k`` in ``nrange`` (inclusive).

    The inner products use trapezoidal quadrature on the grid of ``f``.
    On a grid with spacing ``T`` that contains every ``kT`` the result is
    exact for bandlimited ``f``; on finer grids the truncated sinc tails
    limit the accuracy to roughly ``1 / (pi^2 L)`` for a window of ``L``
    lattice steps on either side.

    Raises
    ------
    GridTooNarrow
        If some ``kT`` lies outside the grid, or the grid captures less than
        ``1 - threshold`` of an atom's energy.
    """
    _check_T(T)
    lo, hi = (int(v) for v in nrange)
    if hi < lo:
        raise ValidationError(f"empty coefficient range {nrange}")
    t = f.t
    out = np.empty(hi - lo + 1, dtype=complex)
    for i, k in enumerate(range(lo, hi + 1)):
        if not f.grid.t0 <= k * T <= f.grid.stop:
            raise GridTooNarrow(f"sample point {k}T = {k * T} outside the grid")
        captured = atom_capture(T, k, f.grid)
        if captured < 1.0 - threshold:
            raise GridTooNarrow(
                f"grid captures only {captured:.4f} of atom {k}'s energy")
        atom = Signal(f.grid, basis_phi(params, T, k, t))
        out[i] = inner(f, atom)
    return SampleSeq(lo, out)


def evaluate_series(params: SaftParams, samples: SampleSeq, T: float, t,
                    sign: int = -1) -> np.ndarray:
    """Interpolating sinc series at arbitrary times ``t``.

    ``sign=-1`` (default) is the bandlimited convention used by
    :func:`synthesize`; ``sign=+1`` exchanges the two chirps.
    """
    _check_T(T)
    t = np.asarray(t, dtype=float)
    acc = np.zeros(t.shape, dtype=complex)
    for k, c in zip(samples.indices, samples.values):
        if c == 0:
            continue
        _, sk = _sign_chirps(params, t, k * T, sign)
        acc += (c * sk) * np.sinc(t / T - k)
    tk, _ = _sign_chirps(params, t, 0.0, sign)
    return tk * acc


def synthesize(params: SaftParams, samples: SampleSeq, T: float,
               tgrid: UniformGrid, sign: int = -1) -> Signal:
    """Evaluate the sampling series on ``tgrid``.

    The series is truncated to the support of ``samples``; the neglected
    sinc tails decay like ``1/K`` at distance ``K`` samples.
    """
    return Signal(tgrid, evaluate_series(params, samples, T, tgrid.points, sign))


def sampling_formula(params: SaftParams, samples: SampleSeq, T: float, t,
                     sign: int = -1) -> np.ndarray:
    """Demodulated form of the sampling series.

    Removes the time chirp, interpolates the demodulated samples with
    ``sin(u)/u``, ``u = sigma (t - t_n) / |b|``, and restores the chirp.
    Algebraically identical to :func:`evaluate_series`; kept separate so the
    two forms can be checked against each other.
    """
    _check_T(T)
    t = np.asarray(t, dtype=float)
    sigma = math.pi * abs(params.b) / T
    mod_t, _ = _sign_chirps(params, t, 0.0, sign)
    acc = np.zeros(t.shape, dtype=complex)
    for n, fn in zip(samples.indices, samples.values):
        tn = n * T
        mod_n, _ = _sign_chirps(params, tn, 0.0, sign)
        u = sigma * (t - tn) / abs(params.b)
        with np.errstate(invalid="ignore", divide="ignore"):
            kern = np.where(u == 0, 1.0, np.sin(u) / u)
        acc += (fn / mod_n) * kern
    return mod_t * acc


def project(params: SaftParams, f: Signal, T: float, nrange: tuple[int, int],
            tgrid: UniformGrid | None = None) -> Signal:
    """Orthogonal projection of ``f`` onto the span of ``phi_k``, ``k`` in nrange.

    Expressed through the interpolating series: the projection's samples
    are ``c[k] / sqrt(T)``.
    """
    c = analyze(params, f, T, nrange)
    tgrid = f.grid if tgrid is None else tgrid
    return synthesize(params, c.with_values(c.values / math.sqrt(T)), T, tgrid)


def synthesized_spectrum(params: SaftParams, samples: SampleSeq, T: float,
                         omega) -> np.ndarray:
    """Closed-form SAFT of ``synthesize(samples)`` at frequencies ``omega``.

    ``eta(w) T / sqrt(2 pi |b|) * sum_k f(kT) zeta(kT) exp(-j k T w / b)``
    inside ``|w| < pi |b| / T`` and zero outside.
    """
    _check_T(T)
    w = np.asarray(omega, dtype=float)
    k = samples.indices.astype(float)
    coef = samples.values * zeta(params, k * T)
    flat = w.reshape(-1)
    series = coef @ np.exp(-1j * T * np.outer(k, flat) / params.b)
    band = np.abs(flat) < math.pi * abs(params.b) / T
    out = np.where(band, series * eta(params, flat) * T
                   / math.sqrt(2.0 * math.pi * abs(params.b)), 0.0)
    return out.reshape(w.shape)


# -- Gram matrix --------------------------------------------------------------

def _sinc_product_tail(n, k, X):
    """``integral_X^inf sinc(u - n) sinc(u - k) du`` for integers ``n, k < X``."""
    if n == k:
        return 1.0 - _sinc2_cdf(X - n)
    _, ci_n = sici(2.0 * np.pi * (X - n))
    _, ci_k = sici(2.0 * np.pi * (X - k))
    sign = -1.0 if (n + k) % 2 else 1.0
    return (sign / (2.0 * np.pi ** 2 * (n - k))
            * (np.log((X - k) / (X - n)) + ci_n - ci_k))


def gram_matrix(params: SaftParams, T: float, N: int, window: float = 60.0,
                n_points: int = 2 ** 15, tail_correction: bool = True) -> np.ndarray:
    """Inner products ``<phi_n, phi_k>`` for ``|n|, |k| <= N`` by quadrature.

    Trapezoidal quadrature on ``[-window T, window T]``. The atoms decay
    only like ``1/t``, so truncation alone leaves errors of order
    ``1 / (pi^2 window)``. With ``tail_correction`` the two tails are added
    in closed form (sine and cosine integrals).
    """
    _check_T(T)
    if N < 0:
        raise ValidationError("N must be >= 0")
    grid = UniformGrid.linspace(-window * T, window * T, n_points)
    t = grid.points
    idx = np.arange(-N, N + 1)
    w = np.full(t.size, grid.dt)
    w[0] = w[-1] = 0.5 * grid.dt
    atoms = np.array([basis_phi(params, T, n, t) for n in idx])
    G = (atoms * w) @ atoms.conj().T
    if tail_correction:
        for i, n in enumerate(idx):
            for j, k in enumerate(idx):
                tail = (_sinc_product_tail(n, k, window)
                        + _sinc_product_tail(-n, -k, window))
                phase = zeta(params, n * T) * np.conj(zeta(params, k * T))
                G[i, j] += phase * tail
    return G
