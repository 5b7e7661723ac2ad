"""Exact-rational size bounds for Kakeya sets with respect to hyperplanes.

Everything here is arbitrary-precision Fraction arithmetic; no floating
point enters any comparison.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple, Sequence


def kakeya_lower_bound(q: int, n: int) -> Fraction:
    """(q^(2n) - q^n) / (q^n + q^2 - 2q), valid for n >= 2.

    Lower bound on |E| for any E in F_q^n containing a hyperplane in every
    direction, obtained by double counting incidences on one chosen
    hyperplane per direction and applying Cauchy-Schwarz.
    """
    if q < 2:
        raise ValueError(f"need q >= 2, got {q}")
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return Fraction(q ** (2 * n) - q**n, q**n + q * q - 2 * q)


def kakeya_lower_bound_ceiling(q: int, n: int) -> int:
    """Integer refinement: |E| is an integer, so |E| >= ceil(bound)."""
    return math.ceil(kakeya_lower_bound(q, n))


def planar_lower_bound(q: int) -> Fraction:
    """The classical n = 2 bound q(q+1)/2."""
    if q < 2:
        raise ValueError(f"need q >= 2, got {q}")
    return Fraction(q * (q + 1), 2)


class CauchySchwarzCount(NamedTuple):
    a_total: int
    c_total: int
    bound: Fraction


def cauchy_schwarz_count(fiber_sizes: Sequence[int]) -> CauchySchwarzCount:
    """Counting form of Cauchy-Schwarz for a map with the given fiber sizes.

    With |A| = sum of fibers and |C| = sum of squared fibers (pairs agreeing
    under the map), the image size is at least |A|^2/|C|.  An all-zero input
    is vacuous and yields bound 0.
    """
    sizes = list(fiber_sizes)
    for s in sizes:
        if s < 0:
            raise ValueError(f"fiber sizes must be nonnegative, got {s}")
    a_total = sum(sizes)
    c_total = sum(s * s for s in sizes)
    if a_total == 0:
        return CauchySchwarzCount(0, 0, Fraction(0))
    return CauchySchwarzCount(a_total, c_total, Fraction(a_total * a_total, c_total))
