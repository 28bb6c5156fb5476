"""Render fusscat CSV outputs into figures.

Reads only the schema-tagged CSV files the `fusscat` CLI emits; never
imports the primary package.  Three figure kinds:

    overlay      pooled-spectrum histogram over the theoretical density
                 (inputs: one density CSV plus one or more spectrum CSVs)
    convergence  Kolmogorov distance vs n with std error bars, log-log
                 (input: one convergence CSV)
    residual     plug-in residual magnitude at the probe points vs n
                 (input: one convergence CSV)

Usage: render.py --kind overlay|convergence|residual --in <csv>... --out <png>
"""

import argparse
import csv
import sys
from dataclasses import dataclass

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

# Freedman-Diaconis bin count bounds; the lower clamp keeps coarse small-n
# runs legible, the upper keeps the near-zero density spike from exploding
# the bin count
MIN_BINS = 32
MAX_BINS = 256

# fixed output settings so a rerun on the same inputs is byte-identical
DPI = 150
METADATA = {"Software": "fusscat render.py"}

PROBE_LABELS = {"res_i": "z = i", "res_1p1i": "z = 1 + i", "res_3p1i": "z = 3 + i"}


class RenderError(Exception):
    """Bad inputs: missing file, schema mismatch, empty table."""


@dataclass(frozen=True)
class CsvTable:
    """One parsed CSV: schema tag, meta key/values, named float columns."""

    schema: str
    meta: dict
    columns: dict

    def col(self, name):
        return self.columns[name]


def read_table(path):
    """Parse one schema-tagged CSV into a CsvTable."""
    try:
        with open(path, newline="") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise RenderError(f"cannot read {path}: {exc.strerror}")
    if not lines or not lines[0].startswith("# schema="):
        raise RenderError(f"{path}: missing '# schema=' header")
    schema = lines[0].removeprefix("# schema=").split(",")[0]
    meta = {}
    body = []
    for line in lines[1:]:
        if line.startswith("#"):
            # meta lines are comma-joined key=value pairs (config, trial seed)
            for part in line.lstrip("# ").split(","):
                if "=" in part:
                    key, _, val = part.partition("=")
                    meta[key] = val
        elif line:
            body.append(line)
    if len(body) < 2:
        raise RenderError(f"{path}: no data rows")
    rows = list(csv.reader(body))
    header, data = rows[0], rows[1:]
    if any(len(r) != len(header) for r in data):
        raise RenderError(f"{path}: ragged rows")
    try:
        arr = np.array(data, dtype=float)
    except ValueError:
        raise RenderError(f"{path}: non-numeric data")
    return CsvTable(schema, meta, {name: arr[:, j] for j, name in enumerate(header)})


def check_schemas(tables, kind):
    """Reject inputs whose schema does not fit the figure kind."""
    want = {"overlay": {"density", "spectrum"}, "convergence": {"convergence"},
            "residual": {"convergence"}}[kind]
    for path, t in tables:
        if t.schema not in want:
            raise RenderError(f"{path}: schema '{t.schema}' does not fit kind '{kind}'")
    if kind == "overlay":
        counts = [sum(1 for _, t in tables if t.schema == s) for s in ("density", "spectrum")]
        if counts[0] != 1 or counts[1] < 1:
            raise RenderError(
                f"overlay needs exactly one density CSV and at least one "
                f"spectrum CSV, got {counts[0]} and {counts[1]}"
            )
    elif len(tables) != 1:
        raise RenderError(f"{kind} takes exactly one CSV, got {len(tables)}")


def fd_bin_count(values):
    """Freedman-Diaconis count clamped to [MIN_BINS, MAX_BINS]."""
    q25, q75 = np.percentile(values, [25.0, 75.0])
    width = 2.0 * (q75 - q25) * len(values) ** (-1.0 / 3.0)
    if width <= 0.0:
        return MIN_BINS
    count = int(np.ceil((values.max() - values.min()) / width))
    return min(MAX_BINS, max(MIN_BINS, count))


def fig_overlay(tables):
    """Histogram of the pooled trials with the theoretical curve on top."""
    density = next(t for _, t in tables if t.schema == "density")
    trials = [t for _, t in tables if t.schema == "spectrum"]
    pooled = np.concatenate([t.col("value") for t in trials])
    heights, edges = np.histogram(pooled, bins=fd_bin_count(pooled), density=True)

    x, rho = density.col("x"), density.col("rho")
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.stairs(heights, edges, fill=True, color="#9ecae1",
              label=f"pooled spectrum ({len(trials)} trials)")
    ax.plot(x, rho, color="#d62728", lw=1.4, label="limit density")
    ax.set_xlim(0.0, float(x[-1]))
    # the density diverges at 0; clip the axis to the histogram scale
    ax.set_ylim(0.0, 1.15 * float(heights.max()))
    meta = trials[0].meta
    ax.set_title(f"m={meta.get('m', '?')}, n={meta.get('n', '?')}, {meta.get('dist', '?')}")
    ax.set_xlabel("squared singular value")
    ax.set_ylabel("density")
    ax.legend(frameon=False)
    return fig


def fig_convergence(tables):
    """Kolmogorov distance vs n, one point with error bar per CSV row."""
    t = tables[0][1]
    fig, ax = plt.subplots(figsize=(5.4, 4.2))
    ax.errorbar(t.col("n"), t.col("delta_mean"), yerr=t.col("delta_std"),
                marker="o", ms=4.0, lw=1.2, capsize=3.0, color="#1f77b4")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("Kolmogorov distance")
    ax.set_title(f"m={int(t.col('m')[0])}, {int(t.col('trials')[0])} trials")
    return fig


def fig_residual(tables):
    """Plug-in residual magnitude at each probe point vs n, log-log."""
    t = tables[0][1]
    fig, ax = plt.subplots(figsize=(5.4, 4.2))
    for name, label in PROBE_LABELS.items():
        ax.plot(t.col("n"), t.col(name), marker="o", ms=4.0, lw=1.2, label=label)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("|equation residual|")
    ax.set_title(f"m={int(t.col('m')[0])}, {int(t.col('trials')[0])} trials")
    ax.legend(frameon=False)
    return fig


_BUILDERS = {"overlay": fig_overlay, "convergence": fig_convergence,
             "residual": fig_residual}


def render(kind, in_paths, out_path):
    """Validate every input, build the figure, then write the image."""
    tables = [(path, read_table(path)) for path in in_paths]
    check_schemas(tables, kind)
    fig = _BUILDERS[kind](tables)
    try:
        fig.savefig(out_path, dpi=DPI, metadata=METADATA)
    finally:
        plt.close(fig)


def main(argv=None):
    ap = argparse.ArgumentParser(prog="render.py",
                                 description="render fusscat CSV files to figures")
    ap.add_argument("--kind", required=True, choices=sorted(_BUILDERS))
    ap.add_argument("--in", dest="inputs", required=True, nargs="+", metavar="CSV")
    ap.add_argument("--out", required=True, metavar="PNG")
    args = ap.parse_args(argv)
    try:
        render(args.kind, args.inputs, args.out)
    except RenderError as exc:
        print(f"render.py: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
