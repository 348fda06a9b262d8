"""Exact Bernoulli numbers and float coefficient tables derived from them."""

import math
from fractions import Fraction

_K_MAX = 60

# B_0 .. B_{2*_K_MAX} via the defining recurrence
#   sum_{j=0}^{n} C(n+1, j) B_j = 0,  B_0 = 1   (convention B_1 = -1/2)
_B = [Fraction(1)]
for _n in range(1, 2 * _K_MAX + 1):
    _s = Fraction(0)
    for _j in range(_n):
        _s += math.comb(_n + 1, _j) * _B[_j]
    _B.append(-_s / (_n + 1))


def bernoulli_even(k):
    """Exact rational B_{2k} for 1 <= k <= 60."""
    if not 1 <= k <= _K_MAX:
        raise ValueError("bernoulli_even: k must satisfy 1 <= k <= %d, got %r" % (_K_MAX, k))
    return _B[2 * k]


def bernoulli_exact(n):
    """Exact rational B_n for 0 <= n <= 120 (internal; B_1 = -1/2)."""
    return _B[n]


# float tables used by the kernels
# EM_COEFF[k]    = B_{2k} / (2k)!     (Euler-Maclaurin correction terms)
# STIRLING[k]    = B_{2k} / (2k (2k-1))   (Stirling series for log-gamma)
EM_COEFF = [0.0] + [float(_B[2 * k] / math.factorial(2 * k)) for k in range(1, 36)]
STIRLING = [0.0] + [float(_B[2 * k] / (2 * k * (2 * k - 1))) for k in range(1, 16)]
