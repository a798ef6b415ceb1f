# ==================== SAMPLE SIZE ESTIMATE ====================
# File: gadgets/sample_size.py

import math
from fractions import Fraction
from typing import Tuple

from core.errors import InputError
from core.rational import RationalLike, parse_rational


def _atanh_bounds(z: Fraction, terms: int) -> Tuple[Fraction, Fraction]:
    """Enclosure of atanh(z) for 0 <= z < 1 from a truncated series and its geometric tail."""
    partial = Fraction(0)
    power = z
    for j in range(terms):
        partial += power / (2 * j + 1)
        power *= z * z
    tail = power / ((2 * terms + 1) * (1 - z * z))
    return partial, partial + tail


def ln_bounds(x: Fraction, terms: int = 20) -> Tuple[Fraction, Fraction]:
    """Rational lower and upper bounds of ln(x) for x >= 1.

    x = 2^k · y with 1 <= y < 2, and ln y = 2 atanh((y-1)/(y+1)).
    """
    x = Fraction(x)
    if x < 1:
        raise InputError("ln bounds are implemented for x >= 1")
    k = max(0, x.numerator.bit_length() - x.denominator.bit_length() - 1)
    y = x / 2 ** k
    while y >= 2:
        y /= 2
        k += 1
    low_2, high_2 = _atanh_bounds(Fraction(1, 3), terms)
    low_y, high_y = _atanh_bounds((y - 1) / (y + 1), terms)
    return 2 * (k * low_2 + low_y), 2 * (k * high_2 + high_y)


def estimate_sample_size(sigma: int, length: int, lam: RationalLike, epsilon: RationalLike) -> int:
    """⌈σ^l (1-λ)^(-l) λ^(-1) ln(σ^l / ε)⌉, exact.

    The series is extended until the lower and upper enclosures share a
    ceiling; ln of a rational above 1 is irrational, so this terminates.
    """
    lam, epsilon = parse_rational(lam), parse_rational(epsilon)
    if sigma < 2 or length < 1:
        raise InputError("need an alphabet of at least 2 letters and a word length of at least 1")
    if not (0 < lam < 1 and 0 < epsilon < 1):
        raise InputError("lambda and epsilon must lie strictly between 0 and 1")
    words = Fraction(sigma) ** length
    factor = words / ((1 - lam) ** length * lam)
    terms = 16
    while True:
        low, high = ln_bounds(words / epsilon, terms)
        low_size, high_size = math.ceil(factor * low), math.ceil(factor * high)
        if low_size == high_size:
            return high_size
        terms *= 2
