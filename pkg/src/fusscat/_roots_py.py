"""Pure-Python twin of the compiled Aberth kernel in _roots_c.pyx.

Keep the two implementations in lockstep: same sweep order, same residual
test, same failure returns, so backend selection never changes results
beyond float noise.
"""

import numpy as np

BACKEND_NAME = "pure"


def aberth_trinomial(A, B, roots, restol, maxit):
    """Simultaneously refine all d roots of P(s) = A s^d + B s + 1.

    Gauss-Seidel Aberth sweeps starting from `roots` (length d >= 2).
    Residuals are tested relative to the balanced term size, so a large
    |A| cannot spoil the criterion.  Returns (roots_array, converged).
    """
    A = complex(A)
    B = complex(B)
    rs = [complex(r) for r in roots]
    d = len(rs)
    for it in range(maxit + 1):
        ok = True
        for s in rs:
            sp = 1.0 + 0j
            for _ in range(d - 1):
                sp *= s
            top = A * sp * s
            if abs(top + B * s + 1.0) > restol * (1.0 + abs(top) + abs(B * s)):
                ok = False
                break
        if ok:
            return np.array(rs, dtype=np.complex128), True
        if it == maxit:
            break
        for i in range(d):
            s = rs[i]
            sp = 1.0 + 0j
            for _ in range(d - 1):
                sp *= s
            p = A * sp * s + B * s + 1.0
            dp = d * A * sp + B
            if dp == 0:
                return np.array(rs, dtype=np.complex128), False
            ratio = p / dp
            acc = 0j
            for j in range(d):
                if j != i:
                    diff = s - rs[j]
                    if diff == 0:
                        return np.array(rs, dtype=np.complex128), False
                    acc += 1.0 / diff
            den = 1.0 - ratio * acc
            rs[i] = s - (ratio if den == 0 else ratio / den)
    return np.array(rs, dtype=np.complex128), False
