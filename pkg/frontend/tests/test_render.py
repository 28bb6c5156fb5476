"""Unit tests for render.py against synthetic CSV files."""

import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

import render


def write_spectrum(path, values, n=64, m=2, seed=11):
    lines = ["# schema=spectrum,version=1",
             f"# config=dist=complex_gaussian,m={m},n={n},seed={seed},trials=1",
             f"# n={n},m={m},dist=complex_gaussian,seed={seed},truncated=false",
             "index,value"]
    lines += [f"{i},{float(v)!r}" for i, v in enumerate(values)]
    path.write_text("\n".join(lines) + "\n")
    return path


def write_density(path, x, rho, m=2):
    lines = ["# schema=density,version=1", f"# config=m={m},points={len(x)},v=1e-08",
             "x,rho,G"]
    lines += [f"{float(a)!r},{float(b)!r},0.0" for a, b in zip(x, rho)]
    path.write_text("\n".join(lines) + "\n")
    return path


def write_convergence(path, n_values):
    cols = ("n,m,trials,delta_mean,delta_std,mom_err_1,mom_err_2,mom_err_3,"
            "mom_err_4,mom_err_5,mom_err_6,res_i,res_1p1i,res_3p1i,lindeberg")
    lines = ["# schema=convergence,version=1",
             "# config=dist=complex_gaussian,m=2,n=" + ";".join(map(str, n_values)),
             cols]
    for i, n in enumerate(n_values):
        d = 0.1 / (i + 1)
        lines.append(f"{n},2,4,{d!r},{d / 10!r},0,0,0,0,0,0,{d!r},{d!r},{d!r},0.0")
    path.write_text("\n".join(lines) + "\n")
    return path


def overlay_inputs(tmp_path, rng, trials=3, size=400):
    paths = [write_spectrum(tmp_path / f"trial_{t:03d}.csv",
                            np.sort(rng.uniform(0.0, 6.0, size))[::-1], seed=t)
             for t in range(trials)]
    x = np.linspace(6.75e-6, 6.75, 200)
    paths.append(write_density(tmp_path / "density.csv", x, 0.2 + 0.0 * x))
    return [str(p) for p in paths]


def test_read_table_parses_schema_config_and_meta(tmp_path):
    p = write_spectrum(tmp_path / "t.csv", [2.0, 1.0, 0.5], n=8, seed=3)
    t = render.read_table(p)
    assert t.schema == "spectrum"
    assert t.meta["dist"] == "complex_gaussian"
    assert t.meta["n"] == "8"
    assert t.meta["truncated"] == "false"
    assert np.array_equal(t.col("value"), [2.0, 1.0, 0.5])


@pytest.mark.parametrize("text,match", [
    ("x,y\n1,2\n", "missing '# schema='"),
    ("# schema=spectrum,version=1\n# config=m=2\nindex,value\n", "no data rows"),
    ("# schema=spectrum,version=1\nindex,value\n1,2,3\n", "ragged"),
    ("# schema=spectrum,version=1\nindex,value\n0,oops\n", "non-numeric"),
])
def test_read_table_rejects_malformed_files(tmp_path, text, match):
    p = tmp_path / "bad.csv"
    p.write_text(text)
    with pytest.raises(render.RenderError, match=match):
        render.read_table(p)


def test_read_table_missing_file(tmp_path):
    with pytest.raises(render.RenderError, match="cannot read"):
        render.read_table(tmp_path / "absent.csv")


def test_fd_bin_count_clamps():
    rng = np.random.default_rng(5)
    assert render.fd_bin_count(rng.uniform(0, 1, 30)) == render.MIN_BINS
    # one far outlier stretches the range against a tight IQR
    spiked = np.concatenate([rng.uniform(0, 1, 1000), [1000.0]])
    assert render.fd_bin_count(spiked) == render.MAX_BINS
    assert render.fd_bin_count(np.full(100, 2.5)) == render.MIN_BINS
    mid = render.fd_bin_count(rng.uniform(0, 1, 500_000))
    assert render.MIN_BINS < mid < render.MAX_BINS


def test_overlay_histogram_area_is_one(tmp_path):
    paths = overlay_inputs(tmp_path, np.random.default_rng(17))
    tables = [(p, render.read_table(p)) for p in paths]
    fig = render.fig_overlay(tables)
    patch = next(a for a in fig.axes[0].patches if hasattr(a, "get_data"))
    vals, edges, _ = patch.get_data()
    assert abs(np.sum(np.asarray(vals) * np.diff(edges)) - 1.0) < 1e-6


def test_overlay_curve_spans_the_support(tmp_path):
    paths = overlay_inputs(tmp_path, np.random.default_rng(18))
    tables = [(p, render.read_table(p)) for p in paths]
    fig = render.fig_overlay(tables)
    ax = fig.axes[0]
    line = ax.lines[0]
    assert ax.get_xlim()[0] == 0.0
    assert float(np.max(line.get_xdata())) == 6.75
    assert float(np.min(line.get_xdata())) < 1e-4


@pytest.mark.parametrize("drop,dup", [(True, False), (False, True)])
def test_overlay_input_multiplicity_enforced(tmp_path, drop, dup):
    paths = overlay_inputs(tmp_path, np.random.default_rng(19), trials=2)
    if drop:
        paths = paths[:-1]  # no density table
    if dup:
        paths.append(paths[-1])  # two density tables
    tables = [(p, render.read_table(p)) for p in paths]
    with pytest.raises(render.RenderError, match="exactly one density"):
        render.check_schemas(tables, "overlay")


def test_convergence_one_errorbar_point_per_row(tmp_path):
    p = write_convergence(tmp_path / "c.csv", [128, 512, 1024])
    fig = render.fig_convergence([(str(p), render.read_table(p))])
    data_line, _, bars = fig.axes[0].containers[0].lines
    assert len(data_line.get_xdata()) == 3
    assert len(bars[0].get_segments()) == 3


def test_residual_draws_all_three_probes(tmp_path):
    p = write_convergence(tmp_path / "c.csv", [64, 128, 256, 512])
    fig = render.fig_residual([(str(p), render.read_table(p))])
    curves = fig.axes[0].lines
    assert len(curves) == len(render.PROBE_LABELS)
    assert all(len(c.get_xdata()) == 4 for c in curves)


def test_schema_mismatch_writes_no_file(tmp_path, capsys):
    p = write_convergence(tmp_path / "c.csv", [128, 512])
    out = tmp_path / "fig.png"
    rc = render.main(["--kind", "overlay", "--in", str(p), "--out", str(out)])
    assert rc == 1
    assert "does not fit kind 'overlay'" in capsys.readouterr().err
    assert not out.exists()


def test_rerun_is_byte_identical(tmp_path):
    paths = overlay_inputs(tmp_path, np.random.default_rng(23))
    out_a, out_b = tmp_path / "a.png", tmp_path / "b.png"
    assert render.main(["--kind", "overlay", "--in", *paths, "--out", str(out_a)]) == 0
    assert render.main(["--kind", "overlay", "--in", *paths, "--out", str(out_b)]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()


def test_script_interface(tmp_path):
    p = write_convergence(tmp_path / "c.csv", [128, 512, 1024])
    out = tmp_path / "fig.png"
    script = Path(render.__file__)
    proc = subprocess.run(
        [sys.executable, str(script), "--kind", "convergence",
         "--in", str(p), "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
