"""Exact moment sequences of the limiting squared-singular-value law.

The k-th moment of the limit law for n^{-m/2} X^m is the Fuss-Catalan number

    alpha_k(m) = binom(mk + k, k) / (mk + 1),

computed here by two independent routes: the closed form above and the
generating-series recurrence alpha_k = [t^{k-1}] A(t)^{m+1}, where
A(t) = sum_k alpha_k t^k.  Both routes use exact integer arithmetic; floats
appear only at module boundaries.
"""

from dataclasses import dataclass
from math import comb

from .errors import CapExceededError, ValidationError

# alpha_12(5) already exceeds 64-bit range; the cap guards runaway memory,
# not overflow (arithmetic is arbitrary precision throughout).
DEFAULT_KMAX_CAP = 64


@dataclass(frozen=True)
class MomentTable:
    """Moments alpha_0..alpha_kmax of the m-th law, exact integers."""

    m: int
    values: tuple

    def __post_init__(self):
        if self.m < 1:
            raise ValidationError(f"m must be a positive integer, got {self.m}")
        if not self.values or self.values[0] != 1:
            raise ValidationError("moment table must start with alpha_0 = 1")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]


def fuss_catalan_closed(m, k):
    """alpha_k(m) by the closed form binom(km+k, k) // (mk+1).

    The division is exact (alpha_k counts (m+1)-ary trees with k nodes).
    """
    if m < 1:
        raise ValidationError(f"m must be a positive integer, got {m}")
    if k < 0:
        raise ValidationError(f"k must be nonnegative, got {k}")
    return comb(k * m + k, k) // (m * k + 1)


def _convolve_trunc(a, b, deg):
    """Coefficients of a*b up to degree deg, plain integer convolution."""
    out = [0] * (deg + 1)
    for i in range(min(len(a), deg + 1)):
        ai = a[i]
        if ai:
            for j in range(min(len(b), deg + 1 - i)):
                out[i + j] += ai * b[j]
    return out


def _series_power_coeff(alpha, power, deg):
    """Coefficient of t^deg in A(t)^power given alpha[0..deg]."""
    base = list(alpha[: deg + 1])
    acc = base
    for _ in range(power - 1):
        acc = _convolve_trunc(acc, base, deg)
    return acc[deg]


def fuss_catalan_recurrence(m, kmax, cap=DEFAULT_KMAX_CAP):
    """Moment table alpha_0..alpha_kmax from the self-convolution recurrence.

    alpha_k is the t^{k-1} coefficient of A(t)^{m+1}, which only involves
    alpha_0..alpha_{k-1}, so the table builds forward from alpha_0 = 1.
    Each entry costs m truncated convolutions, O(m k^2) integer multiplies,
    instead of the combinatorially explosive sum over index tuples.
    """
    if m < 1:
        raise ValidationError(f"m must be a positive integer, got {m}")
    if kmax < 0:
        raise ValidationError(f"kmax must be nonnegative, got {kmax}")
    if kmax > cap:
        raise CapExceededError(f"kmax={kmax} exceeds cap={cap}")
    alpha = [1]
    for k in range(1, kmax + 1):
        alpha.append(_series_power_coeff(alpha, m + 1, k - 1))
    return MomentTable(m=m, values=tuple(alpha))


def support_edge_estimate(table):
    """Upper support endpoint from the moment-ratio limit.

    The ratios r_k = alpha_{k+1}/alpha_k increase to the edge with an
    expansion in 1/k (alpha_k ~ C k^{-3/2} edge^k).  Two Neville steps in
    the node h_k = 1/k eliminate the 1/k and 1/k^2 terms, leaving O(1/k^3).
    """
    if len(table) < 8:
        raise ValidationError(
            f"edge estimate needs at least 8 moments, table has {len(table)}"
        )
    values = table.values
    top = len(values) - 2  # largest k with a ratio
    r = {k: values[k + 1] / values[k] for k in range(top + 1)}
    # t1[k] spans nodes {k-1, k}; t2[k] spans {k-2, k-1, k}.
    t1 = {k: k * r[k] - (k - 1) * r[k - 1] for k in range(2, top + 1)}
    t2 = {k: (k * t1[k] - (k - 2) * t1[k - 1]) / 2 for k in range(3, top + 1)}
    return t2[top]
