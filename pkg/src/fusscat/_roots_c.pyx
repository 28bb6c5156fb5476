# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Aberth kernel; behavioral twin of _roots_py.aberth_trinomial."""

import numpy as np

BACKEND_NAME = "compiled"

DEF MAXD = 24


def aberth_trinomial(A, B, roots, restol, maxit):
    """Simultaneously refine all d roots of P(s) = A s^d + B s + 1.

    Same sweep order and residual test as the pure-Python twin; returns
    (roots_array, converged).
    """
    cdef double complex a = A
    cdef double complex b = B
    cdef double complex rs[MAXD]
    cdef double complex s, sp, top, p, dp, ratio, acc, den, diff
    cdef double rtol = restol
    cdef int d, i, j, k, it, ok
    cdef int mit = maxit

    arr = np.ascontiguousarray(roots, dtype=np.complex128)
    d = arr.shape[0]
    if d < 2 or d > MAXD:
        raise ValueError(f"degree out of range for compiled kernel: {d}")
    cdef double complex[::1] view = arr
    for i in range(d):
        rs[i] = view[i]

    for it in range(mit + 1):
        ok = 1
        for i in range(d):
            s = rs[i]
            sp = 1.0
            for k in range(d - 1):
                sp = sp * s
            top = a * sp * s
            if abs(top + b * s + 1.0) > rtol * (1.0 + abs(top) + abs(b * s)):
                ok = 0
                break
        if ok:
            return _to_array(rs, d), True
        if it == mit:
            break
        for i in range(d):
            s = rs[i]
            sp = 1.0
            for k in range(d - 1):
                sp = sp * s
            p = a * sp * s + b * s + 1.0
            dp = d * a * sp + b
            if dp == 0:
                return _to_array(rs, d), False
            ratio = p / dp
            acc = 0
            for j in range(d):
                if j != i:
                    diff = s - rs[j]
                    if diff == 0:
                        return _to_array(rs, d), False
                    acc = acc + 1.0 / diff
            den = 1.0 - ratio * acc
            if den == 0:
                rs[i] = s - ratio
            else:
                rs[i] = s - ratio / den
    return _to_array(rs, d), False


cdef _to_array(double complex* rs, int d):
    out = np.empty(d, dtype=np.complex128)
    cdef double complex[::1] view = out
    cdef int i
    for i in range(d):
        view[i] = rs[i]
    return out
