"""Numerical laboratory for the limiting singular value distribution of
scaled random matrix powers n^{-m/2} X^m.

The limit law (the Fuss-Catalan / free Bessel family) is computed three
independent ways and cross-validated: exact moments, the algebraic
Stieltjes-transform fixed point, and Monte Carlo simulation of the matrix
model.  See the `fusscat` CLI for the file-based interface.
"""

from ._backend import BACKEND_NAME
from .analysis import (
    ConvergenceRow,
    convergence_study,
    empirical_moments,
    empirical_stieltjes,
    kolmogorov_distance,
    residual_profile,
)
from .density import (
    CdfTable,
    SpectralDensity,
    cdf_eval,
    cdf_from_density,
    density_grid,
    support_edge,
    symmetrize_cdf,
)
from .moments import (
    MomentTable,
    fuss_catalan_closed,
    fuss_catalan_recurrence,
    support_edge_estimate,
)
from .rmt_sim import (
    EntryDistribution,
    RandomMatrix,
    Spectrum,
    center,
    frobenius_sq,
    lindeberg_functional,
    matrix_power_scaled,
    sample_matrix,
    simulate_spectrum,
    squared_singular_values,
    symmetrized_block_spectrum,
    truncate_entries,
)
from .stieltjes import (
    StieltjesSample,
    equation_residual,
    solve_path,
    solve_stieltjes,
    symmetrize_stieltjes,
)

__version__ = "0.1.0"
