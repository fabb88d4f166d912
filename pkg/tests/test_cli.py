import json
import math

import numpy as np
import pytest

from conftest import chirped_gaussian
from saft.cli import EXIT_INVALID, EXIT_NUMERIC, EXIT_OK, main
from saft.io import read_sequence, read_signal, write_sequence, write_signal
from saft.signal import SampleSeq, Signal, UniformGrid


@pytest.fixture
def gauss_csv(tmp_path):
    path = tmp_path / "f.csv"
    write_signal(path, Signal.from_function(UniformGrid.linspace(-8, 8, 1024),
                                            chirped_gaussian()))
    return path


def report(path):
    return json.loads(path.read_text())


def test_transform_and_inverse(tmp_path, gauss_csv):
    F, g, rep = tmp_path / "F.csv", tmp_path / "g.csv", tmp_path / "r.json"
    code = main(["transform", "--preset", "frft:1.0", "--in", str(gauss_csv), "--out", str(F),
                 "--json-report", str(rep), "--assert"])
    assert code == EXIT_OK
    r = report(rep)
    assert r["residuals"]["parseval"]["value"] < 1e-3
    assert r["params"][1] == pytest.approx(math.sin(1.0))
    code = main(["inverse", "--preset", "frft:1.0", "--in", str(F), "--t-range=-8,8",
                 "--n", "1024", "--out", str(g)])
    assert code == EXIT_OK
    f = read_signal(gauss_csv)
    back = read_signal(g)
    assert np.linalg.norm(back.values - f.values) / np.linalg.norm(f.values) < 1e-3


def test_assert_threshold_failure(tmp_path, gauss_csv):
    code = main(["transform", "--preset", "ft", "--in", str(gauss_csv),
                 "--out", str(tmp_path / "F.csv"), "--assert", "1e-30"])
    assert code == EXIT_NUMERIC


def test_validation_errors(tmp_path, gauss_csv, capsys):
    out = str(tmp_path / "x.csv")
    assert main(["transform", "--saft", "1,1,1,1", "--in", str(gauss_csv), "--out", out]) == EXIT_INVALID
    assert "ad - bc - 1" in capsys.readouterr().err
    assert main(["transform", "--preset", "time-shift:1", "--in", str(gauss_csv),
                 "--out", out]) == EXIT_INVALID
    assert main(["transform", "--in", str(gauss_csv), "--out", out]) == EXIT_INVALID
    assert main(["transform", "--preset", "ft", "--in", str(tmp_path / "missing.csv"),
                 "--out", out]) == EXIT_INVALID


def test_convolve_check(tmp_path, gauss_csv):
    rep = tmp_path / "r.json"
    code = main(["convolve", "--preset", "experiment", "--in", str(gauss_csv),
                 "--with", str(gauss_csv), "--check", "--out", str(tmp_path / "h.csv"),
                 "--json-report", str(rep), "--assert"])
    assert code == EXIT_OK
    assert report(rep)["residuals"]["convolution_theorem"]["value"] < 1e-3


def test_dtsaft(tmp_path):
    seq = tmp_path / "p.csv"
    write_sequence(seq, SampleSeq(-2, [1, 2j, -1, 0.5, 3]))
    rep = tmp_path / "r.json"
    code = main(["dtsaft", "--preset", "experiment", "--seq", str(seq),
                 "--out", str(tmp_path / "P.csv"), "--json-report", str(rep),
                 "--assert", "1e-6"])
    assert code == EXIT_OK
    res = report(rep)["residuals"]
    assert res["periodicity"]["value"] < 1e-12
    assert res["energy"]["value"] < 1e-6


def test_zak_and_poisson(tmp_path, gauss_csv):
    out = tmp_path / "z.csv"
    assert main(["zak", "--preset", "experiment", "--in", str(gauss_csv), "--t", "0.1,0.5",
                 "--omega", "1.0", "--out", str(out)]) == EXIT_OK
    assert out.read_text().splitlines()[0] == "t,omega,re,im"
    assert len(out.read_text().splitlines()) == 3
    assert main(["zak", "--preset", "ft", "--in", str(gauss_csv), "--t", "0.1"
                 ]) == EXIT_INVALID  # missing --omega is an argparse exit
    pc = tmp_path / "p.json"
    assert main(["poisson-check", "--preset", "experiment", "--in", str(gauss_csv),
                 "--out", str(pc), "--assert"]) == EXIT_OK
    assert report(pc)["residual"] < 1e-3


def test_zak_negative_b(tmp_path, gauss_csv):
    assert main(["zak", "--saft", "1,-1,0,1", "--in", str(gauss_csv), "--t", "0",
                 "--omega", "0"]) == EXIT_INVALID


def test_riesz(tmp_path):
    out = tmp_path / "r.json"
    assert main(["riesz", "--preset", "experiment", "--out", str(out)]) == EXIT_OK
    r = report(out)
    assert r["eta1"] == pytest.approx(1 / 18, rel=1e-6)
    assert r["eta2"] == pytest.approx(1.0, rel=1e-6)


def test_sample_project(tmp_path):
    from saft.params import preset
    from saft.sampling import synthesize
    P = preset("frft", (0.8,))
    T = 0.5
    grid = UniformGrid(-40 * T, T / 4, 321)
    rng = np.random.default_rng(1)
    coeffs = SampleSeq(-5, rng.normal(size=11))
    f = synthesize(P, coeffs, T, grid)
    src = tmp_path / "f.csv"
    write_signal(src, f)
    rep = tmp_path / "r.json"
    assert main(["sample", "--preset", "frft:0.8", "--in", str(src), "--T", str(T),
                 "--nrange=-10,10", "--out", str(tmp_path / "g.csv"),
                 "--json-report", str(rep)]) == EXIT_OK
    got = {k: re for k, re, _ in report(rep)["results"]["coefficients"]}
    for k, v in zip(coeffs.indices, coeffs.values):
        assert got[int(k)] == pytest.approx(v, abs=2e-2)
    assert main(["sample", "--preset", "ft", "--in", str(src), "--T", "1",
                 "--sigma", "1"]) == EXIT_INVALID


def test_fdf_roundtrip(tmp_path):
    src, out = tmp_path / "s.csv", tmp_path / "o.csv"
    write_sequence(src, SampleSeq(-3, [1.0, 2.0, 3.0, 4.0, 3.0, 2.0, 1.0]))
    assert main(["fdf", "--preset", "experiment", "--in", str(src), "--tau", "0.3",
                 "--out", str(out)]) == EXIT_OK
    assert read_sequence(out).offset == -3
    assert main(["fdf", "--preset", "experiment", "--in", str(src), "--tau", "2",
                 "--out", str(out)]) == EXIT_INVALID


def test_experiment_small(tmp_path):
    rep = tmp_path / "r.json"
    code = main(["experiment", "--window=-100,100", "--delays", "0.5",
                 "--out", str(tmp_path / "t.txt"), "--json-report", str(rep)])
    assert code == EXIT_OK
    r = report(rep)
    assert set(r["psnr"]["psnr_db"]) == {"power-cosine", "sinc-truncated"}
    assert len(r["checks"]) == 1
    assert "tau/T" in (tmp_path / "t.txt").read_text()


def test_presets_listing(capsys):
    assert main(["presets"]) == EXIT_OK
    text = capsys.readouterr().out
    assert "experiment()" in text and "frft(theta)" in text


def test_deterministic(tmp_path, gauss_csv):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        main(["transform", "--preset", "experiment", "--in", str(gauss_csv), "--out", str(out)])
    assert a.read_bytes() == b.read_bytes()
