"""Acceptance criteria 1-12, each at its stated tolerance.

Every test records a ``PASS``/``FAIL`` line that is printed in the
terminal summary under "acceptance criteria".
"""

import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, battery_params, chirped_gaussian, spectrum_grid
from saft.convolution import (convolution_theorem_residual, dtsaft, riesz_bounds,
                              semidiscrete_theorem_residual)
from saft.experiment import ExperimentConfig, run_experiment
from saft.params import preset
from saft.sampling import evaluate_series, gram_matrix, project, sampling_formula, synthesize
from saft.shiftinv import (generator_spectrum, get_generator, integer_symbol,
                           inverse_filter, power_cosine)
from saft.signal import SampleSeq, Signal, UniformGrid, relative_l2_error
from saft.transform import forward, inverse, parseval_residual
from saft.zak_poisson import (poisson_residual, zak, zak_grammian_residual,
                              zak_isometry_residual, zak_quasiperiod_factor)

BATTERY = battery_params()
EXP = preset("experiment")


def record(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_01_round_trip():
    grid = UniformGrid.linspace(-10, 10, 4096)
    f = Signal.from_function(grid, chirped_gaussian())
    parts, ok = [], True
    for label, P in BATTERY.items():
        t0 = time.perf_counter()
        F = forward(P, f, spectrum_grid(P, 4096))
        back = inverse(P, F, grid)
        elapsed = time.perf_counter() - t0
        err = relative_l2_error(back.values, f.values)
        ok &= err < 1e-3 and elapsed < 5.0
        parts.append(f"{label} err={err:.2e} t={elapsed:.2f}s")
    record(1, ok, "round trip < 1e-3, < 5 s; " + "; ".join(parts))


def test_criterion_02_parseval():
    grid = UniformGrid.linspace(-10, 10, 4096)
    f = Signal.from_function(grid, chirped_gaussian())
    parts, ok = [], True
    for label, P in BATTERY.items():
        r = parseval_residual(P, f, spectrum_grid(P, 4096))
        ok &= r < 1e-3
        parts.append(f"{label} {r:.2e}")
    record(2, ok, "Parseval residual < 1e-3; " + "; ".join(parts))


def test_criterion_03_convolution_theorem():
    grid = UniformGrid.linspace(-10, 10, 2048)
    f = Signal.from_function(grid, chirped_gaussian(0.5, 0.5))
    g = Signal.from_function(grid, chirped_gaussian(1.0, -0.3, 0.5))
    parts, ok = [], True
    for label, P in BATTERY.items():
        r = convolution_theorem_residual(P, f, g, spectrum_grid(P, 1024))
        ok &= r < 1e-3
        parts.append(f"{label} {r:.2e}")
    record(3, ok, "convolution theorem residual < 1e-3; " + "; ".join(parts))


def test_criterion_04_dtsaft_periodicity(rng):
    worst = 0.0
    presets = list(BATTERY.values())
    for i in range(100):
        P = presets[i % len(presets)]
        n = int(rng.integers(1, 40))
        seq = SampleSeq(int(rng.integers(-50, 50)), rng.normal(size=n) + 1j * rng.normal(size=n))
        w = rng.uniform(-50, 50)
        a = abs(dtsaft(P, seq, w + P.delta))
        b = abs(dtsaft(P, seq, w))
        worst = max(worst, abs(a - b))
    record(4, worst < 1e-12, f"max ||P(w+Delta)|-|P(w)|| = {worst:.2e} over 100 draws (< 1e-12)")


def test_criterion_05_dtsaft_energy(rng):
    n = 8192
    parts, ok = [], True
    for label, P in BATTERY.items():
        seq = SampleSeq(-10, rng.normal(size=21) + 1j * rng.normal(size=21))
        w = P.delta * np.arange(n) / n
        energy = np.sum(np.abs(dtsaft(P, seq, w)) ** 2) * abs(P.delta) / n
        r = abs(energy - seq.energy()) / seq.energy()
        ok &= r < 1e-6
        parts.append(f"{label} {r:.2e}")
    record(5, ok, "DT-SAFT energy residual < 1e-6 (8192 points); " + "; ".join(parts))


def test_criterion_06_zak(rng):
    gaussian = lambda t: np.exp(-np.asarray(t, dtype=float) ** 2 / 2)
    iso = zak_isometry_residual(EXP, gaussian, math.sqrt(math.pi), K=64, nt=128, nw=128)
    t = rng.uniform(0, 1, 20)
    w = rng.uniform(0, EXP.delta, 20)
    lhs = zak(EXP, gaussian, t, w + EXP.delta)
    rhs = zak_quasiperiod_factor(EXP, w) * zak(EXP, gaussian, t, w)
    qp = float(np.max(np.abs(lhs - rhs)))
    record(6, iso < 1e-3 and qp < 1e-10,
           f"Zak isometry {iso:.2e} (< 1e-3), quasi-periodicity {qp:.2e} (< 1e-10)")


def test_criterion_07_poisson():
    r = poisson_residual(EXP, chirped_gaussian(), UniformGrid.linspace(-12, 12, 4096),
                         UniformGrid.periodic(0, EXP.delta, 64), K=64)
    record(7, r < 1e-3, f"Poisson summation residual {r:.2e} (< 1e-3)")


def test_criterion_08_orthonormality():
    T = math.pi * EXP.b / 60
    G = gram_matrix(EXP, T, 4, window=60, n_points=2 ** 15)
    off = float(np.max(np.abs(G - np.diag(np.diag(G)))))
    diag = float(np.max(np.abs(np.diag(G) - 1)))
    record(8, off < 1e-4 and diag < 1e-4,
           f"Gram N=4 max off-diagonal {off:.2e}, max |diag - 1| {diag:.2e} (< 1e-4)")


def test_criterion_09_sampling_theorem(rng):
    T = math.pi * EXP.b / 60
    c = SampleSeq(-16, rng.normal(size=33) + 1j * rng.normal(size=33))
    # analysis grid with spacing T: the lattice quadrature is exact for bandlimited f
    grid = UniformGrid(-400 * T, T, 801)
    f = synthesize(EXP, c, T, grid)
    dense = UniformGrid.linspace(-20 * T, 20 * T, 4001)
    rec_dense = project(EXP, f, T, (-16, 16), tgrid=dense)
    rec_lat = project(EXP, f, T, (-16, 16), tgrid=UniformGrid(-16 * T, T, 33))
    on_lattice = relative_l2_error(rec_lat.values, c.values)
    ref_dense = synthesize(EXP, c, T, dense)
    on_dense = relative_l2_error(rec_dense.values, ref_dense.values)
    record(9, on_lattice < 1e-6 and on_dense < 1e-3,
           f"reconstruction error at samples {on_lattice:.2e} (< 1e-6), "
           f"dense grid {on_dense:.2e} (< 1e-3)")


def test_criterion_10_power_cosine():
    gen = get_generator("power-cosine")
    filt = inverse_filter(gen)
    th0 = abs(filt.taps[0] - math.sqrt(3))
    conv = np.convolve(filt.taps.values, gen.integer_samples.values)
    c = -(filt.taps.offset + gen.integer_samples.offset)
    ic = float(np.max(np.abs(conv[c - 20:c + 21] - np.eye(41)[20])))
    w = 2 * np.pi * np.arange(1024) / 1024
    sym = float(np.max(np.abs(filt.symbol(w) * integer_symbol(gen, w) - 1)))
    eta1, eta2 = riesz_bounds(EXP, generator_spectrum(EXP, gen))
    bounds_ok = 0 < eta1 <= eta2 < np.inf
    ok = th0 < 1e-12 and ic < 1e-10 and sym < 1e-6 and bounds_ok
    record(10, ok,
           f"|theta[0]-sqrt3| {th0:.1e}; interpolation condition {ic:.1e}; "
           f"symbol identity {sym:.1e}; Riesz (eta1, eta2) = ({eta1:.6f}, {eta2:.6f}) "
           f"(reference values (2, 1) violate eta1 <= eta2)")
    assert eta1 == pytest.approx(1 / 18, rel=1e-6)
    assert power_cosine(0.0) == pytest.approx(2 / 3)


def test_criterion_11_fdf_experiment():
    t0 = time.perf_counter()
    rep = run_experiment(ExperimentConfig())
    elapsed = time.perf_counter() - t0
    holds = rep.ordering_holds()
    pc = rep.psnr_by_generator["power-cosine"]
    sc = rep.psnr_by_generator["sinc-truncated"]
    table = ", ".join(f"{d / rep.T:.1f}T: {a:.2f}/{b:.2f}"
                      for d, a, b in zip(rep.delays, pc, sc))
    record(11, all(holds) and elapsed < 60,
           f"PSNR power-cosine/sinc-truncated dB [{table}]; "
           f"ordering holds at {sum(holds)}/{len(holds)} delays; sweep {elapsed:.2f}s")


def test_criterion_12_consistency(rng):
    T = math.pi * EXP.b / 60
    c = SampleSeq(-16, rng.normal(size=33) + 1j * rng.normal(size=33))
    t = rng.uniform(-20 * T, 20 * T, 100)
    a = evaluate_series(EXP, c, T, t)
    b = sampling_formula(EXP, c, T, t)
    sf = float(np.max(np.abs(a - b)))

    seq = SampleSeq(-2, [0.5, -1.0, 2.0, 1j, 0.3])
    phi = lambda x: np.exp(-np.asarray(x) ** 2)
    semi = semidiscrete_theorem_residual(EXP, seq, phi, UniformGrid.linspace(-12, 12, 2048),
                                         UniformGrid.linspace(-15, 15, 256))

    gen = get_generator("power-cosine")
    filt = inverse_filter(gen)
    scale = math.sqrt(2 * math.pi * EXP.b)

    def cardinal(x):
        x = np.asarray(x, dtype=float)
        return scale * sum(v * gen(x - k) for k, v in zip(filt.taps.indices, filt.taps.values))
    zg_seq = SampleSeq(-3, rng.normal(size=7) + 1j * rng.normal(size=7))
    zg = zak_grammian_residual(EXP, zg_seq, cardinal, UniformGrid.linspace(-32, 32, 6401),
                               EXP.delta * np.arange(16) / 16)
    record(12, sf < 1e-10 and semi < 1e-3 and zg < 1e-3,
           f"sampling formula vs series {sf:.1e} (< 1e-10); semi-discrete theorem "
           f"{semi:.1e} (< 1e-3); Zak/Grammian {zg:.1e} (< 1e-3)")
