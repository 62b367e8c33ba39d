"""Hurwitz zeta function by Euler–Maclaurin summation.

zeta_H(s, q) = sum_{n>=0} (n + q)^(-s), continued to all s != 1. The
Euler–Maclaurin form is analytic in s, so the same expression also gives the
derivative in s term by term.
"""

import cmath
import logging
from functools import lru_cache

import numpy as np
from scipy.special import bernoulli, factorial

from src.errors import DomainError, PoleError

logger = logging.getLogger(__name__)

# Direct terms and Bernoulli correction terms. With N = 24 the first omitted
# correction is below 1e-30 for |s| <= 4.
DIRECT_TERMS = 24
CORRECTION_TERMS = 12


@lru_cache(maxsize=1)
def _bernoulli_weights() -> tuple[float, ...]:
    """B_{2j} / (2j)! for j = 1..CORRECTION_TERMS."""
    numbers = bernoulli(2 * CORRECTION_TERMS)
    return tuple(
        float(numbers[2 * j] / factorial(2 * j, exact=True)) for j in range(1, CORRECTION_TERMS + 1)
    )


def hurwitz_zeta(s: complex, q: float, derivative: int = 0) -> complex:
    """Evaluate zeta_H(s, q) or its first s-derivative.

    Args:
        s: Complex argument, s != 1.
        q: Shift parameter, q > 0.
        derivative: 0 for the value, 1 for d/ds.

    Returns:
        Complex value (real inputs give a value with zero imaginary part).

    Raises:
        DomainError: q <= 0 or derivative not in {0, 1}.
        PoleError: s == 1 (residue 1).
    """
    if q <= 0:
        raise DomainError(f"Hurwitz shift must be positive, got q={q}")
    if derivative not in (0, 1):
        raise DomainError(f"Only derivative 0 or 1 is supported, got {derivative}")

    s = complex(s)
    if abs(s - 1.0) < 1e-14:
        raise PoleError("Hurwitz zeta has a simple pole at s = 1", residue=1.0)

    n = np.arange(DIRECT_TERMS, dtype=np.float64) + q
    log_n = np.log(n)
    powers = np.exp(-s * log_n)
    x = DIRECT_TERMS + q
    log_x = np.log(x)
    x_s = cmath.exp(-s * log_x)

    if derivative == 0:
        total = complex(np.sum(powers))
        total += x * x_s / (s - 1.0)
        total += 0.5 * x_s
    else:
        total = complex(-np.sum(log_n * powers))
        total += -log_x * x * x_s / (s - 1.0) - x * x_s / (s - 1.0) ** 2
        total += -0.5 * log_x * x_s

    # Correction j uses the rising product (s)(s+1)...(s+2j-2).
    prod = 1.0 + 0j
    dprod = 0.0 + 0j
    for j, weight in enumerate(_bernoulli_weights(), start=1):
        first = 0 if j == 1 else 2 * j - 3
        for i in range(first, 2 * j - 1):
            dprod = dprod * (s + i) + prod
            prod = prod * (s + i)
        x_pow = cmath.exp((-s - 2 * j + 1) * log_x)
        if derivative == 0:
            total += weight * prod * x_pow
        else:
            total += weight * (dprod - log_x * prod) * x_pow

    return total


def hurwitz_zeta_real(s: float, q: float, derivative: int = 0) -> float:
    """Real-argument convenience wrapper around hurwitz_zeta."""
    return hurwitz_zeta(complex(s), q, derivative).real
