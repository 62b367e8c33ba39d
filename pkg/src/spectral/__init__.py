"""Spectral model of the tangential operator B."""

from .hurwitz import hurwitz_zeta, hurwitz_zeta_real
from .model import (
    ArithmeticGenerator,
    ExplicitGenerator,
    ModePair,
    TangentialSpectrum,
    det_zeta_B2,
    heat_trace_B2,
    zeta_B2,
)
from .summation import tree_sum, weighted_sum

__all__ = [
    "ArithmeticGenerator",
    "ExplicitGenerator",
    "ModePair",
    "TangentialSpectrum",
    "det_zeta_B2",
    "heat_trace_B2",
    "zeta_B2",
    "hurwitz_zeta",
    "hurwitz_zeta_real",
    "tree_sum",
    "weighted_sum",
]
