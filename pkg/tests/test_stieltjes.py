"""Transform solver oracles: the m=1 closed form, the moment series at
large |z|, cross-form consistency, and the residual/Herglotz contract."""

import numpy as np
import pytest

from fusscat.errors import ValidationError
from fusscat.moments import fuss_catalan_recurrence
from fusscat.stieltjes import (
    RESIDUAL_TOL,
    StieltjesSample,
    _solve_any,
    equation_residual,
    solve_path,
    solve_stieltjes,
    symmetrize_stieltjes,
)


def mp_stieltjes(z):
    # m=1 closed form; numpy principal square roots keep Im(s) > 0 for
    # Im(z) > 0
    z = complex(z)
    return (-z + np.sqrt(z) * np.sqrt(z - 4.0)) / (2.0 * z)


_rng = np.random.default_rng(20260816)
UHP_POINTS = [
    complex(re, im)
    for re, im in zip(_rng.uniform(-10, 10, 100), _rng.uniform(1e-3, 10, 100))
]


@pytest.mark.parametrize("z", UHP_POINTS)
def test_m1_matches_closed_form(z):
    assert abs(solve_stieltjes(1, z).s - mp_stieltjes(z)) < 1e-10


def test_frozen_point_value():
    smp = solve_stieltjes(1, 1j)
    assert abs(smp.s - (0.30024259022012045 + 0.6248105338438266j)) < 1e-12
    assert smp.residual_mag <= RESIDUAL_TOL
    assert smp.z == 1j
    assert smp.branch_form == "squared"


SERIES_POINTS = (25.0 + 5.0j, -20.0 + 15.0j, 30.0j)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("z", SERIES_POINTS)
def test_moment_series_oracle(m, z):
    # s(z) = -sum_k alpha_k / z^{k+1}; |z| >= 25 > 2*edge makes the tail
    # past k=45 geometrically negligible
    alpha = fuss_catalan_recurrence(m, 45).values
    series = -sum(a / z ** (k + 1) for k, a in enumerate(alpha))
    assert abs(solve_stieltjes(m, z).s - series) < 1e-10


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("v", [20.0, 50.0, 100.0])
def test_large_z_asymptotics(m, v):
    # s ~ -1/z with the next term alpha_1/z^2 = 1/z^2
    s = solve_stieltjes(m, 1j * v).s
    assert abs(s + 1.0 / (1j * v)) <= 3.0 / v**2


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("form", ["squared", "symmetrized"])
def test_solve_contract_small_grid(m, form):
    for re in np.linspace(-10, 10, 5):
        for im in np.geomspace(1e-3, 10, 5):
            smp = solve_stieltjes(m, complex(re, im), form=form)
            assert smp.residual_mag <= RESIDUAL_TOL
            assert smp.s.imag > 0


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("z", [0.5 + 1.0j, 2.0 + 0.25j, 0.1 + 3.0j])
def test_cross_form_consistency(m, z):
    # the symmetrized transform is z s(z^2) wherever both solves exist
    sym = solve_stieltjes(m, z, form="symmetrized").s
    via_squared = z * solve_stieltjes(m, z * z).s
    assert abs(sym - via_squared) < 1e-10


def test_symmetrize_on_imaginary_axis():
    # m=1 at z = 2i in closed form: t = i (sqrt(2) - 1)
    t = symmetrize_stieltjes(1, 2j)
    assert abs(t - 1j * (np.sqrt(2.0) - 1.0)) < 1e-6
    assert abs(t.real) < 1e-9


def test_symmetrize_first_quadrant_matches_direct():
    z = 1.0 + 1.0j
    got = symmetrize_stieltjes(2, z)
    want = solve_stieltjes(2, z, form="symmetrized").s
    assert abs(got - want) < 1e-10


def test_symmetrize_rejects_other_quadrants():
    for z in (-1.0 + 1.0j, 1.0 - 1.0j, 1.0 + 0.0j):
        with pytest.raises(ValidationError):
            symmetrize_stieltjes(1, z)


def test_residual_is_the_literal_polynomial():
    # m=3, s = -1/z: the linear terms cancel, leaving z^3 s^4 = 1/z
    z = 10j
    assert equation_residual(3, z, -1.0 / z) == pytest.approx(-0.1j, abs=1e-15)
    assert equation_residual(2, 1j, 0.0, form="symmetrized") == 1.0
    smp = solve_stieltjes(2, 1.0 + 1.0j)
    assert abs(equation_residual(2, smp.z, smp.s)) == pytest.approx(
        smp.residual_mag, abs=1e-16
    )


@pytest.mark.parametrize("m", [1, 2, 3])
def test_reflection_symmetry(m):
    z = 1.5 + 0.7j
    s_up, _ = _solve_any(m, z, "squared")
    s_dn, _ = _solve_any(m, np.conj(z), "squared")
    assert abs(s_dn - np.conj(s_up)) < 1e-12


def test_solve_path_matches_pointwise():
    zs = [4.0 + 1.0j, 3.0 + 0.5j, 2.0 + 0.1j, 1.0 + 0.01j]
    path = solve_path(2, zs)
    assert [smp.z for smp in path] == zs
    for z, smp in zip(zs, path):
        assert abs(smp.s - solve_stieltjes(2, z).s) < 1e-10


def test_rejects_real_axis_and_lower_half_plane():
    with pytest.raises(ValidationError):
        solve_stieltjes(1, 2.0)
    with pytest.raises(ValidationError):
        solve_stieltjes(1, 2.0 - 1.0j)
    with pytest.raises(ValidationError):
        solve_path(1, [1j, 1.0 + 0.0j])


def test_rejects_bad_m_and_form():
    with pytest.raises(ValidationError):
        solve_stieltjes(0, 1j)
    with pytest.raises(ValidationError):
        solve_stieltjes(21, 1j)
    with pytest.raises(ValidationError):
        solve_stieltjes(1, 1j, form="cubed")
    with pytest.raises(ValidationError):
        StieltjesSample(z=1j, s=0j, residual_mag=0.0, branch_form="nope")
    with pytest.raises(ValidationError):
        StieltjesSample(z=1.0 + 0j, s=0j, residual_mag=0.0, branch_form="squared")
