"""Cylinder heat kernels, segment traces and parametrix gluing."""

from .gluing import (
    GluedTrace,
    GluingScheme,
    circle_interior_kernel,
    glued_trace,
    image_constants,
    profile_gamma,
    profile_gamma_derivative,
    rho,
    smoothstep,
)
from .kernels import (
    CylinderBC,
    aps_boundary_trace,
    dump_kernel_csv,
    free_diag,
    mode_kernel_diag,
    pair_segment_trace,
    scalar_diag,
    segment_eigen_trace,
    trace_on_segment,
)
from .special import erfc, erfc_bound, erfcx, gaussian

__all__ = [
    "CylinderBC",
    "GluedTrace",
    "GluingScheme",
    "aps_boundary_trace",
    "circle_interior_kernel",
    "dump_kernel_csv",
    "erfc",
    "erfc_bound",
    "erfcx",
    "free_diag",
    "gaussian",
    "glued_trace",
    "image_constants",
    "mode_kernel_diag",
    "pair_segment_trace",
    "profile_gamma",
    "profile_gamma_derivative",
    "rho",
    "scalar_diag",
    "segment_eigen_trace",
    "smoothstep",
    "trace_on_segment",
]
