"""Exact comparisons on floating-point inputs.

Every decision in the package is made on the exact real values of the
(float) inputs.  Two tools make this cheap:

* ``cmp_offset`` decides the sign of ``x - y - m*rho`` with a floating-point
  filter and an exact rational fallback near zero.
* ``add_down`` / ``add_up`` round ``a + b`` toward -inf / +inf.  For a float
  ``q`` and a real ``z``: ``q <= z`` iff ``q <= RD(z)`` and ``q >= z`` iff
  ``q >= RU(z)``, so directed-rounded bounds give exact containment tests.

Both work on Python floats; ``add_*`` and ``diff_gt`` also take numpy arrays.
"""

import math
from fractions import Fraction

import numpy as np

# ~ 2**-40; generous against the <= 3 ulp error of the float estimate
_FILTER = 1e-12


def cmp_offset(x, y, m, rho):
    """Return the exact sign (-1, 0, 1) of ``x - y - m * rho``."""
    mr = m * rho
    d = x - y
    est = d - mr
    if abs(est) > _FILTER * (abs(x) + abs(y) + abs(mr)):
        return 1 if est > 0 else -1
    # near zero: the float result is exact if no operation rounded
    if (
        _two_sum_err(x, -y, d) == 0
        and _mul_exact(m, rho, mr)
        and _two_sum_err(d, -mr, est) == 0
    ):
        return (est > 0) - (est < 0)
    exact = Fraction(x) - Fraction(y) - m * Fraction(rho)
    return (exact > 0) - (exact < 0)


def _mul_exact(m, rho, mr):
    if m in (0, 1, -1, 2, -2, 4, -4):
        return True
    if m in (3, -3):
        r2 = 2 * rho
        return _two_sum_err(r2, rho, r2 + rho) == 0
    return False


def _two_sum_err(a, b, s):
    bb = s - a
    return (a - (s - bb)) + (b - bb)


def add_down(a, b):
    """``a + b`` rounded toward -inf (exact for finite, non-overflowing input)."""
    s = a + b
    err = _two_sum_err(a, b, s)
    if isinstance(s, np.ndarray):
        return np.where(err < 0, np.nextafter(s, -np.inf), s)
    return math.nextafter(s, -math.inf) if err < 0 else s


def add_up(a, b):
    """``a + b`` rounded toward +inf."""
    s = a + b
    err = _two_sum_err(a, b, s)
    if isinstance(s, np.ndarray):
        return np.where(err > 0, np.nextafter(s, np.inf), s)
    return math.nextafter(s, math.inf) if err > 0 else s


def diff_gt(a, b, c):
    """Exact ``a - b > c`` for floats (or arrays); ``c`` must be a float."""
    hi = a - b
    lo = _two_sum_err(a, -b, hi)
    return (hi > c) | ((hi == c) & (lo > 0))
