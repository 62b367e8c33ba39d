"""Split-Mellin ζ/η engine and Fredholm determinants."""

from .engine import (
    AsymptoticExpansion,
    EtaResult,
    HeatTraceSamples,
    ZetaResult,
    det_zeta_dirac,
    dump_trace_csv,
    duhamel_derivative,
    eta_from_spectrum,
    fit_small_time,
    large_time_tail_bound,
    log_det_ratio,
    nearest_integer_residue,
    zeta_from_trace,
)
from .fredholm import FredholmDeterminant, fredholm_det

__all__ = [
    "AsymptoticExpansion",
    "EtaResult",
    "FredholmDeterminant",
    "HeatTraceSamples",
    "ZetaResult",
    "det_zeta_dirac",
    "dump_trace_csv",
    "duhamel_derivative",
    "eta_from_spectrum",
    "fit_small_time",
    "fredholm_det",
    "large_time_tail_bound",
    "log_det_ratio",
    "nearest_integer_residue",
    "zeta_from_trace",
]
