"""Moment table: closed form vs recurrence, exactness, edge estimation."""

import math

import pytest

from fusscat.errors import CapExceededError, ValidationError
from fusscat.moments import (
    MomentTable,
    fuss_catalan_closed,
    fuss_catalan_recurrence,
    support_edge_estimate,
)

# hand-checked prefixes (m=1 is the Catalan sequence)
KNOWN = {
    1: [1, 1, 2, 5, 14, 42, 132, 429],
    2: [1, 1, 3, 12, 55, 273, 1428],
    3: [1, 1, 4, 22, 140, 969],
    4: [1, 1, 5, 35, 285, 2530],
}


@pytest.mark.parametrize("m", sorted(KNOWN))
def test_closed_form_prefix(m):
    got = [fuss_catalan_closed(m, k) for k in range(len(KNOWN[m]))]
    assert got == KNOWN[m]


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_recurrence_matches_closed_form(m):
    table = fuss_catalan_recurrence(m, 20)
    assert len(table) == 21
    for k in range(21):
        assert table[k] == fuss_catalan_closed(m, k)


def test_catalan_special_case():
    table = fuss_catalan_recurrence(1, 12)
    for k in range(13):
        assert table[k] == math.comb(2 * k, k) // (k + 1)


def test_values_stay_exact_past_float_range():
    table = fuss_catalan_recurrence(5, 40)
    assert all(isinstance(v, int) for v in table.values)
    # alpha_40(5) ~ 10^42; any float detour would break integer equality
    assert table[40] == fuss_catalan_closed(5, 40)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_moment_ratios_increase_toward_edge(m):
    table = fuss_catalan_recurrence(m, 30)
    edge = (m + 1) ** (m + 1) / m**m
    ratios = [table[k + 1] / table[k] for k in range(30)]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] < edge


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_support_edge_estimate_accelerates(m):
    table = fuss_catalan_recurrence(m, 40)
    edge = (m + 1) ** (m + 1) / m**m
    est = support_edge_estimate(table)
    assert abs(est - edge) < 1e-3
    # the extrapolation must beat the raw last ratio
    raw = table[40] / table[39]
    assert abs(est - edge) < abs(raw - edge)


def test_edge_estimate_needs_enough_entries():
    with pytest.raises(ValidationError):
        support_edge_estimate(fuss_catalan_recurrence(2, 5))


def test_cap_guard():
    with pytest.raises(CapExceededError):
        fuss_catalan_recurrence(2, 65)
    assert len(fuss_catalan_recurrence(2, 65, cap=65)) == 66


def test_invalid_arguments():
    with pytest.raises(ValidationError):
        fuss_catalan_closed(0, 3)
    with pytest.raises(ValidationError):
        fuss_catalan_closed(1, -1)
    with pytest.raises(ValidationError):
        fuss_catalan_recurrence(0, 3)


def test_table_validation():
    with pytest.raises(ValidationError):
        MomentTable(m=1, values=(2, 1))
    with pytest.raises(ValidationError):
        MomentTable(m=0, values=(1,))
