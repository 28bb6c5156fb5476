"""Cross-validation of simulated spectra against the limiting law:
Kolmogorov distances, empirical Stieltjes transforms and their equation
residuals, moment comparisons, and the multi-n convergence study.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import density, rmt_sim
from .errors import ValidationError
from .moments import fuss_catalan_recurrence
from .stieltjes import equation_residual

# O(1) imaginary parts keep the plug-in transform stable at desk-scale n;
# the agreement bounds degrade fast as Im(z) shrinks
PROBE_POINTS = (1j, 1 + 1j, 3 + 1j)

_reference_cdf_cache = {}


@dataclass(frozen=True)
class ConvergenceRow:
    """One (n, m) cell of the study: distance statistics, moment errors,
    equation-residual magnitudes at the probes, and the Lindeberg value at
    the active truncation threshold."""

    n: int
    m: int
    trials: int
    delta_mean: float
    delta_std: float
    moment_err: tuple
    residual_probe: tuple
    lindeberg_value: float


def kolmogorov_distance(spec, cdf):
    """sup_x |F_n(x) - G(x)| by the exact jump formula.

    With eigenvalues sorted ascending, the supremum over each jump is
    max(|G(x_i) - i/n|, |G(x_i) - (i-1)/n|); duplicates fall out correctly
    because the i-index runs through every repeated value.
    """
    values = spec.values if isinstance(spec, rmt_sim.Spectrum) else np.asarray(spec)
    if len(values) == 0:
        raise ValidationError("kolmogorov_distance needs a nonempty spectrum")
    xs = np.sort(values)
    n = len(xs)
    g = density.cdf_eval(cdf, xs)
    i = np.arange(1, n + 1)
    return float(np.max(np.maximum(np.abs(g - i / n), np.abs(g - (i - 1) / n))))


def empirical_stieltjes(spec, z):
    """Single-realization plug-in transform n^{-1} sum 1/(lambda_j - z)."""
    z = complex(z)
    if z.imag == 0:
        raise ValidationError(f"z must be off the real axis, got {z!r}")
    values = spec.values if isinstance(spec, rmt_sim.Spectrum) else np.asarray(spec)
    return complex(np.mean(1.0 / (values - z)))


def residual_profile(spec, m, probes):
    """delta_n(z): plug the empirical transform into the squared-form
    equation at each probe; the limit law satisfies it exactly, so the
    magnitudes measure distance from the limit."""
    out = []
    for z in probes:
        s_n = empirical_stieltjes(spec, z)
        out.append(equation_residual(m, z, s_n, form="squared"))
    return out


def empirical_moments(spec, kmax):
    """Spectral moments n^{-1} sum lambda_j^k for k = 1..kmax."""
    if not 1 <= kmax <= 8:
        raise ValidationError(f"kmax must be in 1..8, got {kmax}")
    values = spec.values if isinstance(spec, rmt_sim.Spectrum) else np.asarray(spec)
    return np.array([float(np.mean(values**k)) for k in range(1, kmax + 1)])


def reference_cdf(m, n_points=2000, v_offset=1e-8):
    """Limit-law CDF table used for distance computations, cached per m."""
    key = (m, n_points, v_offset)
    cached = _reference_cdf_cache.get(key)
    if cached is None:
        cached = density.cdf_from_density(density.density_grid(m, n_points, v_offset))
        _reference_cdf_cache[key] = cached
    return cached


def convergence_study(
    m, n_list, trials, dist, seed, truncate=False, tau_exp=0.125, threads=1
):
    """One ConvergenceRow per n: per-trial Kolmogorov statistics against
    the limit CDF, moment errors vs the exact moment table, residual
    magnitudes at the probes, and the mean empirical Lindeberg functional
    at tau_n = n^{-tau_exp}.

    Trials are seeded by (seed, cell, trial) so results do not depend on
    thread scheduling.
    """
    if trials < 1:
        raise ValidationError(f"trials must be >= 1, got {trials}")
    if not n_list:
        raise ValidationError("n_list must be nonempty")
    cdf = reference_cdf(m)
    alpha = fuss_catalan_recurrence(m, 6).values
    rows = []
    for cell, n in enumerate(n_list):
        def one_trial(t, n=n, cell=cell):
            s = rmt_sim.trial_seed(seed, cell, t)
            spec = rmt_sim.simulate_spectrum(m, n, dist, s, truncate, tau_exp)
            raw = rmt_sim.sample_matrix(n, dist, s)
            lind = rmt_sim.lindeberg_functional(raw, float(n) ** (-tau_exp))
            return spec, lind

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(one_trial, range(trials)))
        else:
            results = [one_trial(t) for t in range(trials)]

        deltas = np.array([kolmogorov_distance(spec, cdf) for spec, _ in results])
        moments = np.array([empirical_moments(spec, 6) for spec, _ in results])
        probes = np.array(
            [[abs(r) for r in residual_profile(spec, m, PROBE_POINTS)] for spec, _ in results]
        )
        rows.append(
            ConvergenceRow(
                n=n,
                m=m,
                trials=trials,
                delta_mean=float(np.mean(deltas)),
                delta_std=float(np.std(deltas, ddof=1)) if trials > 1 else 0.0,
                moment_err=tuple(float(e) for e in np.abs(moments.mean(axis=0) - np.array(alpha[1:7]))),
                residual_probe=tuple(float(r) for r in probes.mean(axis=0)),
                lindeberg_value=float(np.mean([lind for _, lind in results])),
            )
        )
    return rows
