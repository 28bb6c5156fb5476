"""Density and CDF recovery for the limiting law by Stieltjes inversion.

The density follows from the boundary values of the transform,
rho(x) = Im s(x + iv) / pi as v -> 0+, computed on a graded grid with a
two-point Richardson step in v to remove the O(v) smoothing bias.  The
density diverges like x^{-m/(m+1)} at the origin (integrable) and vanishes
like a square root at the upper support edge (m+1)^{m+1}/m^m, so the grid
is log-spaced near zero and graded as sqrt(edge - x) near the edge, and the
mass below the smallest grid point is added analytically.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NormalizationError, ValidationError
from .stieltjes import solve_path

# fraction of the edge where the grid switches from log to edge-graded
_GRID_SWITCH = 0.05
_X_MIN_FACTOR = 1e-6


def support_edge(m):
    """Upper endpoint of the support: (m+1)^{m+1} / m^m."""
    if m < 1:
        raise ValidationError(f"m must be a positive integer, got {m}")
    return float((m + 1) ** (m + 1)) / float(m**m)


@dataclass(frozen=True)
class SpectralDensity:
    """Density values rho on a strictly increasing grid x in (0, edge].

    zero_mass_coeff is the fitted coefficient c of the near-zero model
    rho ~ c x^{-m/(m+1)}; it carries the unresolved mass below x[0] into
    cdf_from_density.  Synthetic tables may set it to 0.
    """

    m: int
    x: np.ndarray
    rho: np.ndarray
    v_offset: float
    edge: float
    zero_mass_coeff: float = 0.0

    def __post_init__(self):
        if self.m < 1:
            raise ValidationError(f"m must be a positive integer, got {self.m}")
        if len(self.x) != len(self.rho):
            raise ValidationError("x and rho must have equal length")
        if np.any(np.diff(self.x) <= 0):
            raise ValidationError("x grid must be strictly increasing")
        if self.x[0] <= 0 or self.x[-1] > self.edge * (1 + 1e-12):
            raise ValidationError("x grid must lie in (0, edge]")
        if np.any(self.rho < 0):
            raise ValidationError("density values must be nonnegative")


@dataclass(frozen=True)
class CdfTable:
    """Nondecreasing G on an increasing grid, endpoints exactly 0 and 1."""

    x: np.ndarray
    G: np.ndarray

    def __post_init__(self):
        if len(self.x) != len(self.G) or len(self.x) < 2:
            raise ValidationError("cdf table needs matching grids of length >= 2")
        if np.any(np.diff(self.x) <= 0):
            raise ValidationError("x grid must be strictly increasing")
        if np.any(np.diff(self.G) < 0):
            raise ValidationError("G must be nondecreasing")
        if self.G[0] != 0.0 or self.G[-1] != 1.0:
            raise ValidationError("G endpoints must be exactly 0 and 1")


def _grid(m, n_points, edge):
    x_min = _X_MIN_FACTOR * edge
    x_switch = _GRID_SWITCH * edge
    n_log = max(n_points * 2 // 5, 32)
    n_up = n_points - n_log
    low = np.geomspace(x_min, x_switch, n_log, endpoint=False)
    # uniform in u = sqrt(edge - x): clusters points at the edge so the
    # trapezoid handles the square-root vanishing at O(h^2)
    u = np.linspace(1.0, 0.0, n_up)
    high = edge - (edge - x_switch) * u**2
    high[-1] = edge
    return np.concatenate([low, high])


def density_grid(m, n_points=2000, v_offset=1e-8):
    """Invert the transform on a graded grid.

    Richardson in v: rho = 2 rho_{v/2} - rho_v kills the O(v) bias.  The
    sweep runs from the edge down to x_min so the root tracker only makes
    short hops between neighbors.
    """
    if n_points < 64:
        raise ValidationError(f"n_points must be >= 64, got {n_points}")
    if not 1e-9 <= v_offset <= 1e-2:
        raise ValidationError(f"v_offset must be in [1e-9, 1e-2], got {v_offset}")
    edge = support_edge(m)
    x = _grid(m, n_points, edge)
    ims = []
    for v in (v_offset, v_offset / 2.0):
        zs = (x + 1j * v)[::-1]
        samples = solve_path(m, zs)
        ims.append(np.array([smp.s.imag for smp in samples])[::-1])
    rho = np.maximum((2.0 * ims[1] - ims[0]) / np.pi, 0.0)
    # near-zero model rho ~ c x^{-m/(m+1)}, fitted on the two smallest points
    a = m / (m + 1.0)
    c = 0.5 * (rho[0] * x[0] ** a + rho[1] * x[1] ** a)
    return SpectralDensity(
        m=m, x=x, rho=rho, v_offset=v_offset, edge=edge, zero_mass_coeff=float(c)
    )


def _mass_below(d):
    """Integral of the near-zero model over (0, x[0]]."""
    return d.zero_mass_coeff * (d.m + 1.0) * d.x[0] ** (1.0 / (d.m + 1.0))


def cdf_from_density(d):
    """Trapezoid accumulation of rho plus the analytic near-zero mass.

    The raw total must land within 1e-3 of 1; it is then renormalized so
    the endpoints are exactly 0 and 1.  Below x[0] the model CDF
    G = c (m+1) x^{1/(m+1)} is tabulated on its own log sub-grid: eigen-
    values do land there, and a single linear segment would misstate G by
    a few 1e-3 on the steep rise.
    """
    steps = 0.5 * (d.rho[1:] + d.rho[:-1]) * np.diff(d.x)
    cum = _mass_below(d) + np.concatenate([[0.0], np.cumsum(steps)])
    total = cum[-1]
    if not 0.999 <= total <= 1.001:
        raise NormalizationError(
            f"density mass {total:.6f} outside [0.999, 1.001] (m={d.m}, "
            f"n_points={len(d.x)}, v_offset={d.v_offset:g})"
        )
    if d.zero_mass_coeff > 0:
        sub_x = d.x[0] * np.geomspace(1e-6, 1.0, 40, endpoint=False)
        sub_G = d.zero_mass_coeff * (d.m + 1.0) * sub_x ** (1.0 / (d.m + 1.0))
    else:
        sub_x = np.empty(0)
        sub_G = np.empty(0)
    G = np.concatenate([[0.0], sub_G, cum]) / total
    G[-1] = 1.0
    return CdfTable(x=np.concatenate([[0.0], sub_x, d.x]), G=G)


def symmetrize_cdf(t):
    """Two-sided CDF of the signed law: G~(x) = (1 + sgn(x) G(x^2)) / 2,
    with sgn(0) = 0 so G~(0) = 1/2, on the signed square-root grid."""
    if t.x[0] != 0.0:
        raise ValidationError("symmetrize_cdf expects a one-sided table starting at 0")
    sx = np.sqrt(t.x)
    x_new = np.concatenate([-sx[::-1][:-1], sx])
    G_new = np.concatenate([0.5 * (1.0 - t.G[::-1][:-1]), 0.5 * (1.0 + t.G)])
    return CdfTable(x=x_new, G=G_new)


def cdf_eval(t, x):
    """Piecewise-linear CDF value(s), clamped to 0 below and 1 above."""
    return np.interp(x, t.x, t.G)


def grid_moments(d, kmax):
    """Trapezoid moments of the law, integral of x^k dG for k = 0..kmax,
    including the near-zero model's contribution."""
    ks = np.arange(kmax + 1)
    trap = np.array([np.trapezoid(d.x**k * d.rho, d.x) for k in ks])
    # integral of c x^{k - m/(m+1)} over (0, x[0]]
    expo = ks + 1.0 / (d.m + 1.0)
    spike = d.zero_mass_coeff * d.x[0] ** expo / expo
    return trap + spike
