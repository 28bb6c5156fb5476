"""Command-line entry point: five subcommands emitting schema-tagged CSV.

Exit codes: 0 success, 1 validation error (one-line diagnostic on stderr),
2 numerical failure (offending parameters echoed).  FUSSCAT_THREADS
overrides --threads.  Output is byte-identical across runs with the same
configuration; the `# config=` header carries the canonical parameter
serialization for provenance.
"""

import argparse
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import analysis, density, moments, rmt_sim, stieltjes
from ._csvio import canonical_config, render_csv, write_text
from .errors import NumericalError, ValidationError


class _Parser(argparse.ArgumentParser):
    """argparse reports usage errors via exit(2); route them to the
    package's validation path (exit 1) instead."""

    def error(self, message):
        raise ValidationError(message)


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    flags: dict
    master_seed: int
    output_path: str
    thread_count: int


def build_parser():
    parser = _Parser(prog="fusscat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("moments", help="exact moment table alpha_0..alpha_kmax")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--cap", type=int, default=moments.DEFAULT_KMAX_CAP)
    p.add_argument("--out", default="-")

    p = sub.add_parser("stieltjes", help="solve the transform at a point or grid")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--form", choices=stieltjes.FORMS, default="squared")
    p.add_argument("--z", help="a single point, RE,IM")
    p.add_argument("--grid", help="linear mesh, RE0:RE1:NR,IM0:IM1:NI")
    p.add_argument("--out", default="-")

    p = sub.add_parser("density", help="density and CDF of the limit law")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--points", type=int, default=2000)
    p.add_argument("--v", type=float, default=1e-8)
    p.add_argument("--out", default="-")

    p = sub.add_parser("simulate", help="simulate spectra, one CSV per trial")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dist", required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--truncate", action="store_true")
    p.add_argument("--tau-exp", type=float, default=0.125)
    p.add_argument("--out", default=".", help="output directory")

    p = sub.add_parser("converge", help="convergence study over a list of n")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", required=True, help="comma-separated list, e.g. 128,512,1024")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--dist", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--truncate", action="store_true")
    p.add_argument("--tau-exp", type=float, default=0.125)
    p.add_argument("--threads", type=int, default=0, help="0 = auto")
    p.add_argument("--out", default="-")

    return parser


def _resolve_threads(requested):
    env = os.environ.get("FUSSCAT_THREADS")
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValidationError(f"FUSSCAT_THREADS must be an integer, got {env!r}")
    if requested == 0:
        return min(4, os.cpu_count() or 1)
    return max(1, requested)


def _parse_complex(text):
    try:
        re_part, im_part = text.split(",")
        return complex(float(re_part), float(im_part))
    except (ValueError, AttributeError):
        raise ValidationError(f"expected a point as RE,IM, got {text!r}")


def _parse_grid(text):
    try:
        re_spec, im_spec = text.split(",")
        r0, r1, nr = re_spec.split(":")
        i0, i1, ni = im_spec.split(":")
        res = np.linspace(float(r0), float(r1), int(nr))
        ims = np.linspace(float(i0), float(i1), int(ni))
    except (ValueError, AttributeError):
        raise ValidationError(f"expected a grid as RE0:RE1:NR,IM0:IM1:NI, got {text!r}")
    if np.any(ims <= 0):
        raise ValidationError("grid imaginary parts must be positive")
    return res, ims


def _run_moments(cfg):
    table = moments.fuss_catalan_recurrence(
        cfg.flags["m"], cfg.flags["kmax"], cap=cfg.flags["cap"]
    )
    rows = [(k, str(table.values[k])) for k in range(len(table))]
    text = render_csv("moments", canonical_config(cfg.flags), ("k", "alpha"), rows)
    write_text(cfg.output_path, text)


def _stieltjes_rows(m, form, res, ims):
    rows = []
    # march each column downward in Im(z) so the tracker takes short hops,
    # then restore ascending order for the emitted rows
    for re_part in res:
        zs = [complex(re_part, im) for im in sorted(ims, reverse=True)]
        samples = stieltjes.solve_path(m, zs, form=form)
        rows.extend(
            (smp.z.real, smp.z.imag, smp.s.real, smp.s.imag, smp.residual_mag)
            for smp in reversed(samples)
        )
    return rows


def _run_stieltjes(cfg):
    flags = cfg.flags
    m, form = flags["m"], flags["form"]
    if (flags.get("z") is None) == (flags.get("grid") is None):
        raise ValidationError("stieltjes needs exactly one of --z or --grid")
    config_flags = dict(flags)
    if flags.get("z") is not None:
        z = _parse_complex(flags["z"])
        config_flags["z"] = f"{z.real!r}:{z.imag!r}"
        smp = stieltjes.solve_stieltjes(m, z, form=form)
        rows = [(smp.z.real, smp.z.imag, smp.s.real, smp.s.imag, smp.residual_mag)]
    else:
        res, ims = _parse_grid(flags["grid"])
        config_flags["grid"] = flags["grid"].replace(",", ";")
        rows = _stieltjes_rows(m, form, res, ims)
    text = render_csv(
        "stieltjes",
        canonical_config(config_flags),
        ("re_z", "im_z", "re_s", "im_s", "residual"),
        rows,
    )
    write_text(cfg.output_path, text)


def _run_density(cfg):
    flags = cfg.flags
    d = density.density_grid(flags["m"], flags["points"], flags["v"])
    cdf = density.cdf_from_density(d)
    # cdf.x appends d.x after 0 and the near-zero sub-grid, so the tail
    # of cdf.G lines up with the density grid
    rows = list(zip(d.x.tolist(), d.rho.tolist(), cdf.G[-len(d.x):].tolist()))
    text = render_csv("density", canonical_config(flags), ("x", "rho", "G"), rows)
    write_text(cfg.output_path, text)


def _run_simulate(cfg):
    flags = cfg.flags
    dist = rmt_sim.EntryDistribution.parse(flags["dist"])
    os.makedirs(cfg.output_path, exist_ok=True)
    config = canonical_config(flags)
    for t in range(flags["trials"]):
        seed_t = rmt_sim.trial_seed(cfg.master_seed, 0, t)
        spec = rmt_sim.simulate_spectrum(
            flags["m"], flags["n"], dist, seed_t, flags["truncate"], flags["tau_exp"]
        )
        meta = (
            f"n={spec.n},m={spec.m},dist={spec.dist},seed={spec.seed},"
            f"truncated={'true' if spec.truncated else 'false'}",
        )
        rows = list(enumerate(spec.values.tolist()))
        text = render_csv("spectrum", config, ("index", "value"), rows, extra_meta=meta)
        write_text(os.path.join(cfg.output_path, f"trial_{t:03d}.csv"), text)


def _run_converge(cfg):
    flags = cfg.flags
    dist = rmt_sim.EntryDistribution.parse(flags["dist"])
    try:
        n_list = [int(v) for v in flags["n"].split(",")]
    except ValueError:
        raise ValidationError(f"--n must be a comma-separated integer list, got {flags['n']!r}")
    flags = dict(flags, n=";".join(str(n) for n in n_list))
    rows_out = []
    for row in analysis.convergence_study(
        flags["m"],
        n_list,
        flags["trials"],
        dist,
        cfg.master_seed,
        truncate=flags["truncate"],
        tau_exp=flags["tau_exp"],
        threads=cfg.thread_count,
    ):
        rows_out.append(
            (row.n, row.m, row.trials, row.delta_mean, row.delta_std)
            + tuple(row.moment_err)
            + tuple(row.residual_probe)
            + (row.lindeberg_value,)
        )
    columns = (
        ["n", "m", "trials", "delta_mean", "delta_std"]
        + [f"mom_err_{k}" for k in range(1, 7)]
        + ["res_i", "res_1p1i", "res_3p1i", "lindeberg"]
    )
    text = render_csv("convergence", canonical_config(flags), columns, rows_out)
    write_text(cfg.output_path, text)


_HANDLERS = {
    "moments": _run_moments,
    "stieltjes": _run_stieltjes,
    "density": _run_density,
    "simulate": _run_simulate,
    "converge": _run_converge,
}


def _to_config(args):
    flags = {
        k: v
        for k, v in vars(args).items()
        if k not in ("command", "out", "threads") and v is not None
    }
    return RunConfig(
        subcommand=args.command,
        flags=flags,
        master_seed=getattr(args, "seed", 0),
        output_path=args.out,
        thread_count=_resolve_threads(getattr(args, "threads", 1) or 0),
    )


def run(argv=None):
    """Parse and dispatch; returns the process exit code."""
    try:
        args = build_parser().parse_args(argv)
        cfg = _to_config(args)
        _HANDLERS[cfg.subcommand](cfg)
        return 0
    except ValidationError as exc:
        print(f"fusscat: {exc}", file=sys.stderr)
        return 1
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"fusscat: numerical failure: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
