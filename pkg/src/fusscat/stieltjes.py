"""Branch-tracked solutions of the limiting Stieltjes transform equations.

The squared-singular-value law of n^{-m/2} X^m has Stieltjes transform s(z)
obeying the trinomial fixed-point equation

    1 + z s + (-1)^{m+1} z^m s^{m+1} = 0          (squared form)

and the symmetrized (signed singular value) law obeys

    1 + z t + (-1)^{m+1} z^{m-1} t^{m+1} = 0      (symmetrized form).

Both are degree m+1 polynomials in s, and for m >= 2 more than one root can
sit in the upper half-plane, so Im(s) > 0 alone does not pin the branch.
The physical root is the one continuously connected to s ~ -1/z as
|z| -> infinity; it is picked out by continuation from an anchor point high
on the imaginary axis, stepping all m+1 roots together with adaptive step
halving whenever two roots crowd each other.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._backend import aberth_trinomial
from .errors import BranchTrackingError, ValidationError

FORMS = ("squared", "symmetrized")

ANCHOR_V = 100.0        # anchor height: the root nearest -1/z is unambiguous here
RESIDUAL_TOL = 1e-12    # |P(z, s)| bound promised on every successful solve
COLLISION_TOL = 1e-6    # pairwise root separation that triggers step halving
_KERNEL_TOL = 1e-14     # relative residual target inside the Aberth kernel
_MAX_M = 20             # compiled kernel holds degree m+1 in a fixed buffer

# anchor root sets per (m, form, half-plane); dict insertion is atomic under
# the GIL, so concurrent readers at worst recompute the same value
_anchor_cache = {}


@dataclass(frozen=True)
class StieltjesSample:
    """One solved point: transform value s at z with its equation residual."""

    z: complex
    s: complex
    residual_mag: float
    branch_form: str

    def __post_init__(self):
        if self.z.imag <= 0:
            raise ValidationError(f"sample requires Im(z) > 0, got z={self.z!r}")
        if self.branch_form not in FORMS:
            raise ValidationError(f"unknown branch form {self.branch_form!r}")


def _form_params(m, form):
    """(q, sigma) with P(s) = sigma z^q s^{m+1} + z s + 1 for the given form."""
    if m < 1:
        raise ValidationError(f"m must be a positive integer, got {m}")
    if m > _MAX_M:
        raise ValidationError(f"m={m} exceeds the supported maximum {_MAX_M}")
    if form not in FORMS:
        raise ValidationError(f"form must be one of {FORMS}, got {form!r}")
    q = m if form == "squared" else m - 1
    sigma = 1.0 if m % 2 == 1 else -1.0
    return q, sigma


def equation_residual(m, z, s, form="squared"):
    """1 + z s + (-1)^{m+1} z^q s^{m+1} with q = m (squared) or m-1
    (symmetrized), evaluated exactly as written."""
    q, sigma = _form_params(m, form)
    z = complex(z)
    s = complex(s)
    return 1.0 + z * s + sigma * z**q * s ** (m + 1)


def _min_separation(roots):
    d = len(roots)
    best = math.inf
    for i in range(d):
        for j in range(i + 1, d):
            sep = abs(roots[i] - roots[j])
            if sep < best:
                best = sep
    return best


def _anchor_roots(m, form, lower=False):
    """All m+1 roots at the anchor z0 = +-i*ANCHOR_V plus the index of the
    branch root (the one nearest -1/z0)."""
    key = (m, form, lower)
    cached = _anchor_cache.get(key)
    if cached is None:
        q, sigma = _form_params(m, form)
        z0 = complex(0.0, -ANCHOR_V if lower else ANCHOR_V)
        coeffs = np.zeros(m + 2, dtype=np.complex128)
        coeffs[0] = sigma * z0**q
        coeffs[-2] = z0
        coeffs[-1] = 1.0
        roots = np.roots(coeffs)
        roots, ok = aberth_trinomial(coeffs[0], z0, roots, _KERNEL_TOL, 60)
        if not ok:
            raise BranchTrackingError("anchor roots failed to converge", z0)
        dist = np.abs(roots - (-1.0 / z0))
        order = np.argsort(dist)
        if dist[order[0]] > 0.1 * dist[order[1]]:
            raise BranchTrackingError("anchor branch root is ambiguous", z0)
        cached = (roots, int(order[0]))
        _anchor_cache[key] = cached
    roots, idx = cached
    return roots.copy(), idx


def _track(q, sigma, z_from, roots, z_to):
    """Continue all roots along the straight segment z_from -> z_to.

    A step is accepted only when the kernel converges, no two roots come
    within COLLISION_TOL of each other, and no root moved more than a third
    of the minimal separation (which keeps root identities unambiguous).
    """
    if z_to == z_from:
        return roots
    t, dt = 0.0, 1.0
    d = len(roots)
    seg = abs(z_to - z_from)
    while t < 1.0:
        # the closing step must hit z_to bit-exactly: composing
        # z_from + 1.0*(z_to - z_from) leaves an O(eps*|z_from|) offset,
        # which the residual bound at small |z_to| cannot absorb
        last = dt >= 1.0 - t
        z = z_to if last else z_from + (t + dt) * (z_to - z_from)
        trial, ok = aberth_trinomial(sigma * z**q, z, roots, _KERNEL_TOL, 40)
        if ok:
            sep_old = _min_separation(roots)
            sep_new = _min_separation(trial)
            moved = max(abs(trial[i] - roots[i]) for i in range(d))
            ok = sep_new > COLLISION_TOL and moved <= 0.34 * min(sep_old, sep_new)
        if ok:
            roots = trial
            t = 1.0 if last else t + dt
            dt *= 2.0
        else:
            dt /= 2.0
            # give up only once the step is at floating noise in z itself
            if dt * seg < 1e-13 * (1.0 + abs(z)):
                raise BranchTrackingError("step underflow while tracking the branch", z)
    return roots


def _check_sample(m, z, s, form):
    residual = abs(equation_residual(m, z, s, form))
    if residual > RESIDUAL_TOL:
        raise BranchTrackingError(
            f"residual {residual:.3e} exceeds {RESIDUAL_TOL:g} (m={m}, form={form})", z
        )
    if s.imag * math.copysign(1.0, z.imag) <= 0:
        raise BranchTrackingError(f"lost the Herglotz branch (m={m}, form={form})", z)
    return residual


def _solve_any(m, z, form):
    """Track the branch to z in either half-plane; returns (s, residual)."""
    q, sigma = _form_params(m, form)
    z = complex(z)
    if z.imag == 0:
        raise ValidationError(f"z must be off the real axis, got {z!r}")
    lower = z.imag < 0
    roots, idx = _anchor_roots(m, form, lower)
    z0 = complex(0.0, -ANCHOR_V if lower else ANCHOR_V)
    roots = _track(q, sigma, z0, roots, z)
    s = complex(roots[idx])
    return s, _check_sample(m, z, s, form)


def solve_stieltjes(m, z, form="squared"):
    """The Herglotz branch value s(z) for Im(z) > 0."""
    _form_params(m, form)
    z = complex(z)
    if z.imag <= 0:
        raise ValidationError(f"solve_stieltjes requires Im(z) > 0, got z={z!r}")
    s, residual = _solve_any(m, z, form)
    return StieltjesSample(z=z, s=s, residual_mag=residual, branch_form=form)


def solve_path(m, zs, form="squared"):
    """Solve along a sequence of upper-half-plane points, tracking the root
    set from each point to the next (much cheaper than independent solves
    when neighbors are close, e.g. density grids)."""
    q, sigma = _form_params(m, form)
    zs = [complex(z) for z in zs]
    for z in zs:
        if z.imag <= 0:
            raise ValidationError(f"solve_path requires Im(z) > 0, got z={z!r}")
    roots, idx = _anchor_roots(m, form)
    prev = complex(0.0, ANCHOR_V)
    out = []
    for z in zs:
        roots = _track(q, sigma, prev, roots, z)
        s = complex(roots[idx])
        residual = _check_sample(m, z, s, form)
        out.append(StieltjesSample(z=z, s=s, residual_mag=residual, branch_form=form))
        prev = z
    return out


def symmetrize_stieltjes(m, z):
    """z * s(z^2): the symmetrized transform built from the squared-form
    solve.  Accepts the open first quadrant, or pure-imaginary z where
    z^2 lands on the negative real axis and s is evaluated in the limit
    from above (offset 1e-9)."""
    _form_params(m, "squared")
    z = complex(z)
    if z.imag <= 0 or z.real < 0:
        raise ValidationError(
            f"z must lie in the open first quadrant or on the positive "
            f"imaginary axis, got {z!r}"
        )
    w = z * z
    if w.imag <= 0:
        # z = iv: w = -v^2 is real; the law's support is [0, inf) so s
        # continues across the negative axis, approached from above
        w = complex(w.real, 1e-9)
    s, _ = _solve_any(m, w, "squared")
    return z * s
