"""Command-line interface: ``saft <command> [options]``.

Signals, spectra and sequences are exchanged as CSV (see :mod:`saft.io`);
ranges that start with a minus sign need the ``--flag=LO,HI`` spelling;
``--json-report`` writes a machine-readable summary of the run. Exit codes:
0 success, 2 invalid input, 3 numerical failure or a failed ``--assert``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import io as sio
from .convolution import (convolution_theorem_residual, dtsaft, riesz_bounds,
                          saft_convolve)
from .errors import NumericError, SaftError, ValidationError
from .experiment import ExperimentConfig, run_experiment
from .params import (DEFAULT_TOL, EXPERIMENT_TOL, EXPERIMENT_VECTOR, SaftParams,
                     parse_preset, parse_saft, preset_arguments, preset_names,
                     preset_vector)
from .sampling import BandlimitSpec, analyze, atom_capture, synthesize
from .shiftinv import (fdf, generator_names, generator_spectrum, get_generator,
                       truncated_sinc)
from .signal import SampleSeq, UniformGrid, relative_l2_error
from .transform import default_omega_grid, forward, inverse, parseval_residual
from .zak_poisson import poisson_residual, zak

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 2, 3


@dataclass
class RunReport:
    command: list
    params: list | None = None
    tolerances: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    psnr: dict | None = None
    results: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def residual(self, name: str, value: float, invariant: str):
        self.residuals[name] = {"value": float(value), "invariant": invariant}

    def failures(self, threshold: float) -> list[str]:
        bad = [k for k, r in self.residuals.items()
               if not (r["value"] <= threshold)]
        return bad + [k for k, ok in self.checks.items() if not ok]

    def to_dict(self):
        return {"command": self.command, "params": self.params,
                "tolerances": self.tolerances, "residuals": self.residuals,
                "checks": self.checks, "psnr": self.psnr,
                "results": self.results, "wall_time": self.wall_time}


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ValidationError(f"expected comma-separated numbers, got {text!r}") from None


def _int_pair(text: str) -> tuple[int, int]:
    vals = _floats(text)
    if len(vals) != 2 or any(v != int(v) for v in vals):
        raise ValidationError(f"expected two integers 'lo,hi', got {text!r}")
    return int(vals[0]), int(vals[1])


def _params(args, report: RunReport, default: SaftParams | None = None) -> SaftParams:
    tol = args.tol
    if args.saft:
        params = parse_saft(args.saft, DEFAULT_TOL if tol is None else tol)
    elif args.preset:
        params = parse_preset(args.preset)
        if tol is not None:
            params = params.with_tol(tol)
    elif default is not None:
        params = default if tol is None else default.with_tol(tol)
    else:
        raise ValidationError("give the transform with --saft a,b,c,d,p,q or --preset NAME")
    report.params = list(params.as_tuple())
    report.tolerances["determinant"] = params.tol
    return params


# -- subcommands ---------------------------------------------------------------

def cmd_transform(args, report):
    params = _params(args, report)
    f = sio.read_signal(args.input)
    if args.omega_range:
        lo, hi = _floats(args.omega_range)
        grid = UniformGrid.linspace(lo, hi, args.omega_n or f.grid.n)
    else:
        grid = default_omega_grid(params, f.grid)
    F = forward(params, f, grid, args.summation)
    sio.write_signal(args.out, F)
    report.residual("parseval", parseval_residual(params, f, grid),
                    "| ||F|| - ||f|| | / ||f||")


def cmd_inverse(args, report):
    params = _params(args, report)
    F = sio.read_spectrum(args.input)
    lo, hi = _floats(args.t_range)
    tgrid = UniformGrid.linspace(lo, hi, args.n or F.grid.n)
    sio.write_signal(args.out, inverse(params, F, tgrid, args.summation))


def cmd_convolve(args, report):
    params = _params(args, report)
    f = sio.read_signal(args.input)
    g = sio.read_signal(args.other)
    h = saft_convolve(params, f, g)
    sio.write_signal(args.out, h)
    if args.check:
        grid = default_omega_grid(params, h.grid)
        report.residual("convolution_theorem",
                        convolution_theorem_residual(params, f, g, grid),
                        "||SAFT(f *A g) - conj(eta) F G|| / ||conj(eta) F G||")


def cmd_dtsaft(args, report):
    params = _params(args, report)
    P = sio.read_sequence(args.seq)
    if args.omega:
        w = np.array(_floats(args.omega))
    else:
        w = abs(params.delta) * np.arange(args.omega_n) / args.omega_n
    values = dtsaft(params, P, w)
    shifted = dtsaft(params, P, w + params.delta)
    report.residual("periodicity", np.max(np.abs(np.abs(shifted) - np.abs(values))),
                    "max ||P(w + Delta)| - |P(w)||")
    if not args.omega:
        energy = np.sum(np.abs(values) ** 2) * abs(params.delta) / args.omega_n
        ref = P.energy()
        if ref > 0:
            report.residual("energy", abs(energy - ref) / ref,
                            "|int_0^Delta |P_hat|^2 - sum |p|^2| / sum |p|^2")
    _write_rows(args.out, "omega,re,im", [(x, v.real, v.imag) for x, v in zip(w, values)])


def _write_rows(path, header, rows):
    fh = sys.stdout if path == "-" else open(path, "w")
    try:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join("%.17g" % x for x in row) + "\n")
    finally:
        if fh is not sys.stdout:
            fh.close()


def cmd_zak(args, report):
    params = _params(args, report)
    f = sio.read_signal(args.input).as_function()
    ts, ws = _floats(args.t), _floats(args.omega)
    if len(ts) == 1:
        ts = ts * len(ws)
    if len(ws) == 1:
        ws = ws * len(ts)
    if len(ts) != len(ws):
        raise ValidationError("--t and --omega must have equal length (or length 1)")
    Z = zak(params, f, np.array(ts), np.array(ws), args.K)
    report.results["zak"] = [{"t": t, "omega": w, "re": z.real, "im": z.imag}
                             for t, w, z in zip(ts, ws, Z)]
    _write_rows(args.out, "t,omega,re,im",
                [(t, w, z.real, z.imag) for t, w, z in zip(ts, ws, Z)])


def cmd_poisson(args, report):
    params = _params(args, report)
    f = sio.read_signal(args.input)
    tgrid = UniformGrid.periodic(0.0, params.delta, args.nt)
    r = poisson_residual(params, f.as_function(), f.grid, tgrid, args.K)
    report.residual("poisson", r, "max |LHS - RHS| / max |RHS| over t in [0, Delta)")
    out = {"residual": r, "K": args.K, "grid": args.nt}
    _emit_json(args.out, out)


def _generator(name, half_width):
    if name == "sinc-truncated":
        return truncated_sinc(half_width)
    return get_generator(name)


def cmd_riesz(args, report):
    params = _params(args, report)
    gen = get_generator(args.generator)
    e1, e2 = riesz_bounds(params, generator_spectrum(params, gen), args.K, args.sweep_n)
    out = {"generator": gen.name, "eta1": e1, "eta2": e2, "condition": e2 / e1,
           "K": args.K, "sweep_n": args.sweep_n}
    report.results.update(out)
    _emit_json(args.out, out)


def cmd_sample(args, report):
    params = _params(args, report)
    f = sio.read_signal(args.input)
    if (args.sigma is None) == (args.T is None):
        raise ValidationError("give exactly one of --sigma and --T")
    spec = (BandlimitSpec.from_sigma(params, args.sigma) if args.T is None
            else BandlimitSpec.from_T(params, args.T))
    T = spec.T
    if args.nrange:
        nrange = _int_pair(args.nrange)
    else:
        ks = [k for k in range(math.ceil(f.grid.t0 / T), math.floor(f.grid.stop / T) + 1)
              if atom_capture(T, k, f.grid) >= 0.99]
        if not ks:
            raise ValidationError("no sample point with adequate grid coverage")
        nrange = (ks[0], ks[-1])
    if args.mode == "project":
        c = analyze(params, f, T, nrange)
        coeffs = c.with_values(c.values / math.sqrt(T))
    else:
        k = np.arange(nrange[0], nrange[1] + 1)
        coeffs = SampleSeq(nrange[0], f.as_function()(k * T))
    rec = synthesize(params, coeffs, T, f.grid)
    sio.write_signal(args.out, rec)
    report.results.update({"sigma": spec.sigma, "T": T, "mode": args.mode,
                           "nrange": list(nrange),
                           "coefficients": [[int(k), v.real, v.imag] for k, v in
                                            zip(coeffs.indices, coeffs.values)]})
    if np.any(f.values != 0):
        report.residual("reconstruction", relative_l2_error(rec.values, f.values),
                        "||f - reconstruction|| / ||f|| on the input grid")


def cmd_fdf(args, report):
    params = _params(args, report)
    samples = sio.read_sequence(args.input)
    gen = _generator(args.generator, args.sinc_half_width)
    out = fdf(params, samples, gen, args.tau, args.T)
    sio.write_sequence(args.out, out)


def cmd_experiment(args, report):
    default = SaftParams(*EXPERIMENT_VECTOR, tol=EXPERIMENT_TOL)
    params = _params(args, report, default)
    kw = {}
    if args.delays:
        kw["delay_fractions"] = tuple(_floats(args.delays))
    cfg = ExperimentConfig(params=params, window=_int_pair(args.window),
                           sinc_half_width=args.sinc_half_width, **kw)
    t0 = time.perf_counter()
    rep = run_experiment(cfg)
    report.psnr = rep.to_dict()
    for frac, ok in zip(cfg.delay_fractions, rep.ordering_holds()):
        report.checks[f"power-cosine>=sinc-truncated@tau={frac:g}T"] = bool(ok)
    report.results["sweep_seconds"] = time.perf_counter() - t0
    lines = ["tau/T  " + "  ".join(f"{name:>16s}" for name in rep.psnr_by_generator)]
    for i, frac in enumerate(cfg.delay_fractions):
        lines.append(f"{frac:5.2f}  " + "  ".join(
            f"{rep.psnr_by_generator[name][i]:13.3f} dB" for name in rep.psnr_by_generator))
    _emit_text(args.out, "\n".join(lines) + "\n")


def cmd_presets(args, report):
    rows = []
    for name in preset_names():
        argnames = preset_arguments(name)
        row = {"name": name, "arguments": list(argnames)}
        if not argnames:
            row["vector"] = list(preset_vector(name))
        rows.append(row)
    report.results["presets"] = rows
    lines = [f"{r['name']}({', '.join(r['arguments'])})" for r in rows]
    _emit_text(args.out, "\n".join(lines) + "\n")


def _emit_text(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _emit_json(path, obj):
    _emit_text(path, json.dumps(obj, indent=2) + "\n")


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--saft", metavar="a,b,c,d,p,q", help="parameter vector")
    src.add_argument("--preset", metavar="NAME[:args]",
                     help="named transform, e.g. frft:0.5 or experiment")
    common.add_argument("--tol", type=float, default=None,
                        help="tolerance on |ad - bc - 1| (default 1e-9)")
    common.add_argument("--out", default="-", help="output file (default stdout)")
    common.add_argument("--json-report", metavar="PATH",
                        help="write a JSON run report ('-' for stderr)")
    common.add_argument("--assert", dest="assert_threshold", type=float, nargs="?",
                        const=1e-3, default=None, metavar="THRESHOLD",
                        help="exit 3 if any residual exceeds THRESHOLD (default 1e-3)")

    parser = argparse.ArgumentParser(prog="saft", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("transform", cmd_transform, "forward SAFT of a signal CSV")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--omega-range", metavar="LO,HI")
    p.add_argument("--omega-n", type=int)
    p.add_argument("--summation", choices=("sequential", "pairwise"), default="sequential")

    p = add("inverse", cmd_inverse, "inverse SAFT of a spectrum CSV")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--t-range", metavar="LO,HI", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--summation", choices=("sequential", "pairwise"), default="sequential")

    p = add("convolve", cmd_convolve, "SAFT convolution of two signals")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--with", dest="other", required=True)
    p.add_argument("--check", action="store_true",
                   help="also report the convolution theorem residual")

    p = add("dtsaft", cmd_dtsaft, "discrete-time SAFT of a sequence CSV")
    p.add_argument("--seq", required=True)
    p.add_argument("--omega", help="comma-separated frequencies")
    p.add_argument("--omega-n", type=int, default=1024,
                   help="sweep size over [0, Delta) when --omega is absent")

    p = add("zak", cmd_zak, "Zak transform of a signal CSV")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--omega", required=True)
    p.add_argument("--K", type=int, default=64)

    p = add("poisson-check", cmd_poisson, "Poisson summation residual")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--K", type=int, default=64)
    p.add_argument("--nt", type=int, default=64)

    p = add("riesz", cmd_riesz, "Riesz bounds of a generator")
    # generators with a closed-form spectrum
    p.add_argument("--generator", choices=("power-cosine", "sinc"), default="power-cosine")
    p.add_argument("--K", type=int, default=64)
    p.add_argument("--sweep-n", type=int, default=512)

    p = add("sample", cmd_sample, "sample and reconstruct a signal")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--sigma", type=float)
    p.add_argument("--T", type=float)
    p.add_argument("--mode", choices=("project", "interpolate"), default="project")
    p.add_argument("--nrange", metavar="LO,HI")

    p = add("fdf", cmd_fdf, "fractional delay of a sample sequence")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--generator", choices=generator_names(), default="power-cosine")
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--sinc-half-width", type=int, default=64)

    p = add("experiment", cmd_experiment, "fractional-delay generator comparison")
    p.add_argument("--window", default="-256,255", metavar="LO,HI")
    p.add_argument("--sinc-half-width", type=int, default=64)
    p.add_argument("--delays", metavar="F1,F2,...", help="delays as fractions of T")

    add("presets", cmd_presets, "list named parameter presets")
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return int(exc.code or 0)
    report = RunReport(command=["saft", *argv])
    t0 = time.perf_counter()
    code = EXIT_OK
    try:
        args.func(args, report)
    except ValidationError as exc:
        print(f"saft: error: {exc}", file=sys.stderr)
        code = EXIT_INVALID
    except NumericError as exc:
        print(f"saft: numerical failure: {exc}", file=sys.stderr)
        code = EXIT_NUMERIC
    except (SaftError, OSError) as exc:
        print(f"saft: error: {exc}", file=sys.stderr)
        code = EXIT_INVALID
    report.wall_time = time.perf_counter() - t0
    if code == EXIT_OK and args.assert_threshold is not None:
        report.tolerances["assert"] = args.assert_threshold
        bad = report.failures(args.assert_threshold)
        if bad:
            print(f"saft: assertion failed: {', '.join(bad)}", file=sys.stderr)
            code = EXIT_NUMERIC
    if args.json_report:
        text = json.dumps(report.to_dict(), indent=2) + "\n"
        if args.json_report == "-":
            sys.stderr.write(text)
        else:
            with open(args.json_report, "w") as fh:
                fh.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
