"""Per-mode boundary problems, Grassmannian points and assembled traces."""

from .assembly import (
    ComponentLogDet,
    ModeSplitResult,
    assemble_zeta_inputs,
    component_log_det,
    log_det_mode_split,
)
from .grassmann import (
    GrassmannPoint,
    calderon_graph,
    canonical_determinant,
    eta_variation_formula,
    graph_projection,
    line_to_graph,
    propagated_graph,
    scattering_block,
    twist_defect,
    unitary_twist,
)
from .projections import (
    BoundaryProjection,
    ProjectionKind,
    check_projection,
    grassmann_defect,
    line_projection,
    projection_defect,
)
from .secular import (
    Component,
    ModeProblem,
    SecularRoots,
    Topology,
    bisect_brackets,
    component_roots,
    component_trace,
    first_order_secular,
    mode_spectrum,
    solve_first_order,
)

__all__ = [
    "BoundaryProjection",
    "Component",
    "ComponentLogDet",
    "GrassmannPoint",
    "ModeProblem",
    "ModeSplitResult",
    "ProjectionKind",
    "SecularRoots",
    "Topology",
    "assemble_zeta_inputs",
    "bisect_brackets",
    "calderon_graph",
    "canonical_determinant",
    "check_projection",
    "component_log_det",
    "component_roots",
    "component_trace",
    "eta_variation_formula",
    "first_order_secular",
    "grassmann_defect",
    "graph_projection",
    "line_projection",
    "line_to_graph",
    "log_det_mode_split",
    "mode_spectrum",
    "projection_defect",
    "propagated_graph",
    "scattering_block",
    "solve_first_order",
    "twist_defect",
    "unitary_twist",
]
