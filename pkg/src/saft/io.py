"""CSV input/output for signals, spectra and sequences.

Files have a header line (``t,re,im``, ``omega,re,im`` or ``k,re,im``)
followed by one sample per row. Values are written with 17 significant
digits so a write/read cycle reproduces them bit for bit.
"""

from __future__ import annotations

import csv
import io as _io
import sys

import numpy as np

from .errors import MalformedCsv, NonUniformGrid
from .signal import SampleSeq, Signal, Spectrum, UniformGrid

UNIFORMITY_TOL = 1e-9


def _open_text(path, mode):
    if str(path) == "-":
        return _io.TextIOWrapper(sys.stdin.buffer) if "r" in mode else sys.stdout
    return open(path, mode, newline="")


def _read_table(path, axis: str):
    with _open_text(path, "r") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if r and any(cell.strip() for cell in r)]
    if not rows:
        raise MalformedCsv(f"{path}: empty file")
    header = [c.strip().lower() for c in rows[0]]
    if header != [axis, "re", "im"]:
        raise MalformedCsv(f"{path}: expected header '{axis},re,im', got {','.join(rows[0])!r}")
    if len(rows) < 2:
        raise MalformedCsv(f"{path}: no data rows")
    try:
        data = np.array([[float(c) for c in r] for r in rows[1:]])
    except ValueError as exc:
        raise MalformedCsv(f"{path}: {exc}") from None
    if data.ndim != 2 or data.shape[1] != 3:
        raise MalformedCsv(f"{path}: every row needs exactly 3 columns")
    if not np.all(np.isfinite(data)):
        raise MalformedCsv(f"{path}: non-finite value")
    return data[:, 0], data[:, 1] + 1j * data[:, 2]


def _grid_from_axis(x: np.ndarray, path) -> UniformGrid:
    if x.size == 1:
        return UniformGrid(x[0], 1.0, 1)
    dt = (x[-1] - x[0]) / (x.size - 1)
    if not dt > 0:
        raise NonUniformGrid(f"{path}: axis must be strictly increasing")
    dev = np.max(np.abs(x - (x[0] + dt * np.arange(x.size))))
    if dev > UNIFORMITY_TOL * dt:
        raise NonUniformGrid(f"{path}: axis deviates from uniform by {dev:.3e} "
                             f"(allowed {UNIFORMITY_TOL * dt:.3e})")
    return UniformGrid(x[0], dt, x.size)


def read_signal(path) -> Signal:
    x, v = _read_table(path, "t")
    return Signal(_grid_from_axis(x, path), v)


def read_spectrum(path) -> Spectrum:
    x, v = _read_table(path, "omega")
    return Spectrum(_grid_from_axis(x, path), v)


def read_sequence(path) -> SampleSeq:
    x, v = _read_table(path, "k")
    k = np.rint(x).astype(int)
    if np.any(np.abs(x - k) > 0) or np.any(np.diff(k) != 1):
        raise NonUniformGrid(f"{path}: k column must be consecutive integers")
    return SampleSeq(int(k[0]), v)


def _write_table(path, axis_name, axis, values):
    fh = _open_text(path, "w")
    try:
        fh.write(f"{axis_name},re,im\n")
        for x, v in zip(axis, values):
            head = "%d" % x if axis_name == "k" else "%.17g" % x
            fh.write("%s,%.17g,%.17g\n" % (head, v.real, v.imag))
    finally:
        if fh is not sys.stdout:
            fh.close()


def write_signal(path, s: Signal) -> None:
    _write_table(path, s.axis_name, s.grid.points, s.values)


def write_sequence(path, s: SampleSeq) -> None:
    _write_table(path, "k", [int(k) for k in s.indices], s.values)
