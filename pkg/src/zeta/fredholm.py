"""Fredholm determinants of diagonal perturbations of the identity."""

import logging
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from src.errors import DomainError
from src.spectral import tree_sum

logger = logging.getLogger(__name__)


@dataclass
class FredholmDeterminant:
    """det(I + A) for diagonal A, accumulated as log-modulus plus phase."""

    value: complex
    log_modulus: float
    phase: float
    singular: bool = False
    singular_index: int | None = None


def fredholm_det(deviations: Iterable[complex], summable_tol: float = 1e-14) -> FredholmDeterminant:
    """∏ (1 + d_k) over the diagonal deviations d_k.

    A factor 1 + d_k = 0 returns a zero determinant flagged as singular.

    Raises:
        DomainError: the deviations are not finite.
    """
    d = np.asarray(list(deviations), dtype=np.complex128)
    if d.size == 0:
        return FredholmDeterminant(1.0 + 0.0j, 0.0, 0.0)
    if not np.all(np.isfinite(d)):
        raise DomainError("Fredholm deviations must be finite")

    factors = 1.0 + d
    zero = np.flatnonzero(np.abs(factors) <= summable_tol)
    if zero.size:
        index = int(zero[0])
        logger.info(f"Fredholm determinant is singular: factor {index} vanishes")
        return FredholmDeterminant(0.0j, -math.inf, 0.0, singular=True, singular_index=index)

    # log|1 + d| = log1p(2 Re d + |d|²) / 2
    log_modulus = tree_sum(0.5 * np.log1p(2.0 * d.real + np.abs(d) ** 2))
    phase = tree_sum(np.angle(factors))
    value = complex(math.exp(log_modulus) * np.exp(1j * phase))
    return FredholmDeterminant(value, float(log_modulus), float(phase))
