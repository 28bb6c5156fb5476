"""Shared fixtures: memoized spectra and law tables so the expensive
matrix draws and inversion sweeps are paid once per session."""

import pytest

from fusscat.density import cdf_from_density, density_grid
from fusscat.rmt_sim import EntryDistribution, simulate_spectrum


@pytest.fixture(scope="session")
def spectra():
    cache = {}

    def get(m, n, dist="complex_gaussian", seed=7, truncate=False):
        key = (m, n, dist, seed, truncate)
        if key not in cache:
            cache[key] = simulate_spectrum(
                m, n, EntryDistribution.parse(dist), seed, truncate=truncate
            )
        return cache[key]

    return get


@pytest.fixture(scope="session")
def law_tables():
    cache = {}

    def get(m, n_points=2000):
        key = (m, n_points)
        if key not in cache:
            d = density_grid(m, n_points)
            cache[key] = (d, cdf_from_density(d))
        return cache[key]

    return get
