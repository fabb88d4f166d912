"""Uniform grids, sampled signals, chirp modulation and quadrature.

All integrals over the real line are approximated by the trapezoidal rule
on the signal's own grid; values outside the grid are taken to be zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import EmptyGrid, GridMismatch, ValidationError
from .params import SaftParams

SUMMATION_MODES = ("sequential", "pairwise")


@dataclass(frozen=True)
class UniformGrid:
    """Points ``t0 + i*dt`` for ``0 <= i < n``."""

    t0: float
    dt: float
    n: int

    def __post_init__(self):
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "dt", float(self.dt))
        object.__setattr__(self, "n", int(self.n))
        if self.n < 1:
            raise EmptyGrid(f"grid must have at least one point, got n={self.n}")
        if not (self.dt > 0 and np.isfinite(self.dt)) or not np.isfinite(self.t0):
            raise ValidationError(f"invalid grid t0={self.t0}, dt={self.dt}")

    @classmethod
    def linspace(cls, start: float, stop: float, n: int) -> "UniformGrid":
        """Closed grid with both endpoints included."""
        if n < 2:
            raise EmptyGrid("linspace grid needs n >= 2")
        return cls(start, (stop - start) / (n - 1), n)

    @classmethod
    def periodic(cls, start: float, period: float, n: int) -> "UniformGrid":
        """``n`` points covering ``[start, start + period)``."""
        return cls(start, period / n, n)

    @property
    def points(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n)

    @property
    def stop(self) -> float:
        return self.t0 + self.dt * (self.n - 1)

    def matches(self, other: "UniformGrid", rtol: float = 1e-9) -> bool:
        return (self.n == other.n
                and abs(self.dt - other.dt) <= rtol * self.dt
                and abs(self.t0 - other.t0) <= rtol * self.dt)


def _frozen_array(values, n=None):
    arr = np.array(values, dtype=complex)
    if arr.ndim != 1:
        raise ValidationError("values must be one-dimensional")
    if n is not None and arr.size != n:
        raise ValidationError(f"expected {n} values, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("values must be finite")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Signal:
    """Complex samples of a function on a uniform time grid."""

    grid: UniformGrid
    values: np.ndarray

    axis_name = "t"

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen_array(self.values, self.grid.n))

    @classmethod
    def from_function(cls, grid: UniformGrid, func: Callable) -> "Signal":
        return cls(grid, np.asarray(func(grid.points), dtype=complex))

    @property
    def t(self) -> np.ndarray:
        return self.grid.points

    def with_values(self, values) -> "Signal":
        return type(self)(self.grid, values)

    def as_function(self) -> Callable[[np.ndarray], np.ndarray]:
        """Piecewise-linear interpolant, zero outside the grid."""
        x = self.grid.points
        re, im = self.values.real.copy(), self.values.imag.copy()

        def f(t):
            t = np.asarray(t, dtype=float)
            return (np.interp(t, x, re, left=0.0, right=0.0)
                    + 1j * np.interp(t, x, im, left=0.0, right=0.0))
        return f

    def __len__(self):
        return self.grid.n


class Spectrum(Signal):
    """Samples of a transform on a uniform frequency grid."""

    axis_name = "omega"

    @property
    def omega(self) -> np.ndarray:
        return self.grid.points


@dataclass(frozen=True, eq=False)
class SampleSeq:
    """Finitely supported sequence; ``values[i]`` sits at index ``offset + i``."""

    offset: int
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "offset", int(self.offset))
        object.__setattr__(self, "values", _frozen_array(self.values))

    @classmethod
    def impulse(cls, k: int = 0) -> "SampleSeq":
        return cls(k, [1.0])

    @classmethod
    def zeros(cls, lo: int, hi: int) -> "SampleSeq":
        return cls(lo, np.zeros(hi - lo + 1))

    @property
    def indices(self) -> np.ndarray:
        return self.offset + np.arange(self.values.size)

    @property
    def last(self) -> int:
        return self.offset + self.values.size - 1

    def __len__(self):
        return self.values.size

    def __getitem__(self, k: int) -> complex:
        i = int(k) - self.offset
        if 0 <= i < self.values.size:
            return complex(self.values[i])
        return 0j

    def window(self, lo: int, hi: int) -> np.ndarray:
        """Values at indices ``lo..hi`` inclusive, zero-filled."""
        out = np.zeros(hi - lo + 1, dtype=complex)
        src_lo = max(lo, self.offset)
        src_hi = min(hi, self.last)
        if src_lo <= src_hi:
            out[src_lo - lo:src_hi - lo + 1] = \
                self.values[src_lo - self.offset:src_hi - self.offset + 1]
        return out

    def with_values(self, values) -> "SampleSeq":
        return SampleSeq(self.offset, values)

    def energy(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))


# -- modulation -------------------------------------------------------------

def chirp(params: SaftParams, t) -> np.ndarray:
    """``exp(j a t^2 / 2b)``."""
    t = np.asarray(t, dtype=float)
    return np.exp(1j * params.a * t * t / (2.0 * params.b))


def zeta(params: SaftParams, t) -> np.ndarray:
    """``exp(j (a t^2 + 2 p t) / 2b)``, the time-side factor of the kernel."""
    t = np.asarray(t, dtype=float)
    return np.exp(1j * (params.a * t * t + 2.0 * params.p * t) / (2.0 * params.b))


def eta(params: SaftParams, omega) -> np.ndarray:
    """``exp(j (d w^2 + Omega w) / 2b)``, the frequency-side factor."""
    w = np.asarray(omega, dtype=float)
    return np.exp(1j * (params.d * w * w + params.omega_cap * w) / (2.0 * params.b))


def chirp_up(params: SaftParams, s: Signal) -> Signal:
    return s.with_values(s.values * chirp(params, s.t))


def chirp_dn(params: SaftParams, s: Signal) -> Signal:
    return s.with_values(s.values * np.conj(chirp(params, s.t)))


# -- quadrature -------------------------------------------------------------

def trapezoid_weights(n: int, dt: float) -> np.ndarray:
    w = np.full(n, float(dt))
    if n > 1:
        w[0] = w[-1] = 0.5 * dt
    return w


def weighted_sum(x: np.ndarray, axis: int = 0, summation: str = "sequential"):
    """Sum along ``axis``.

    ``sequential`` accumulates strictly left to right (bit-reproducible,
    independent of array layout); ``pairwise`` uses numpy's pairwise sum.
    """
    if summation == "sequential":
        x = np.moveaxis(np.asarray(x), axis, 0)
        if x.shape[0] == 0:
            return np.sum(x, axis=0)
        if x.ndim == 1:
            return np.cumsum(x)[-1]
        acc = x[0].copy()
        for row in x[1:]:
            acc += row
        return acc
    if summation == "pairwise":
        return np.sum(x, axis=axis)
    raise ValidationError(f"summation must be one of {SUMMATION_MODES}")


def integrate(values, dt: float, summation: str = "sequential"):
    """Trapezoidal integral of uniformly spaced samples."""
    values = np.asarray(values)
    return weighted_sum(values * trapezoid_weights(values.size, dt),
                        summation=summation)


def _check_same_grid(s: Signal, r: Signal):
    if not s.grid.matches(r.grid):
        raise GridMismatch(f"grids differ: {s.grid} vs {r.grid}")


def inner(s: Signal, r: Signal, summation: str = "sequential") -> complex:
    """``<s, r> = integral of s * conj(r)``."""
    _check_same_grid(s, r)
    return complex(integrate(s.values * np.conj(r.values), s.grid.dt, summation))


def l2_norm(s: Signal, summation: str = "sequential") -> float:
    energy = integrate(np.abs(s.values) ** 2, s.grid.dt, summation)
    return float(np.sqrt(max(float(np.real(energy)), 0.0)))


def relative_l2_error(estimate: np.ndarray, reference: np.ndarray) -> float:
    """``||estimate - reference|| / ||reference||`` on shared samples."""
    reference = np.asarray(reference)
    return float(np.linalg.norm(np.asarray(estimate) - reference)
                 / np.linalg.norm(reference))
