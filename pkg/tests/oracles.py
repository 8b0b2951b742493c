"""Independent reference computations used to freeze expected values."""

import itertools
from fractions import Fraction

def brute_force_lp(c, A, b):
    """Optimal value of min c@x, A@x <= b, x >= 0 by vertex enumeration (exact).

    Returns None when no vertex is feasible.  Only valid for bounded problems.
    """
    n = len(c)
    rows = [list(map(Fraction, r)) for r in A] + [
        [Fraction(-1 if j == i else 0) for j in range(n)] for i in range(n)
    ]
    rhs = list(map(Fraction, b)) + [Fraction(0)] * n
    best = None
    for active in itertools.combinations(range(len(rows)), n):
        sub = [rows[i][:] + [rhs[i]] for i in active]
        x = _solve_square(sub, n)
        if x is None:
            continue
        if all(sum(r[j] * x[j] for j in range(n)) <= v for r, v in zip(rows, rhs)):
            val = sum(Fraction(ci) * xi for ci, xi in zip(c, x))
            if best is None or val < best:
                best = val
    return best


def _solve_square(aug, n):
    aug = [r[:] for r in aug]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col] / aug[col][col]
                aug[r] = [a - f * p for a, p in zip(aug[r], aug[col])]
    return [aug[i][n] / aug[i][i] for i in range(n)]

