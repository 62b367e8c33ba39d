"""Boundary projections per mode pair.

Every first-order condition used here is a line in the (phi, G phi) plane of a
mode pair: the projection P onto v_α = (cos α, sin α), imposed as P f = 0 at the
boundary. Π_> is the line α = 0 (the +μ eigenline), Π_< the line α = π/2. A
phase θ rotates a line to α − θ/2, which multiplies its unitary parameter
T = e^{-2iα} by e^{iθ}.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from src.errors import DomainError
from src.heat.gluing import profile_gamma

logger = logging.getLogger(__name__)

G = np.array([[0.0, -1.0], [1.0, 0.0]])
P_PLUS = 0.5 * (np.eye(2) - 1j * G)
P_MINUS = 0.5 * (np.eye(2) + 1j * G)


class ProjectionKind(str, Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"
    CHIRAL_PLUS = "chiral_plus"
    CHIRAL_MINUS = "chiral_minus"
    APS_POS = "aps_pos"
    APS_NEG = "aps_neg"
    SIGMA_SHIFT = "sigma"
    ROTATED = "rotated"


GRASSMANNIAN_KINDS = frozenset(
    {
        ProjectionKind.APS_POS,
        ProjectionKind.APS_NEG,
        ProjectionKind.SIGMA_SHIFT,
        ProjectionKind.ROTATED,
    }
)

_BASE_ANGLE = {ProjectionKind.APS_POS: 0.0, ProjectionKind.APS_NEG: 0.5 * math.pi}


def line_vector(alpha: float) -> np.ndarray:
    return np.array([math.cos(alpha), math.sin(alpha)])


def line_projection(alpha: float) -> np.ndarray:
    v = line_vector(alpha)
    return np.outer(v, v)


def reduce_angle(alpha: float) -> float:
    """Lines are defined mod π; map α into [0, π)."""
    return float(alpha % math.pi)


@dataclass(frozen=True)
class BoundaryProjection:
    """A boundary condition, mode by mode.

    base is the unperturbed kind for ROTATED and SIGMA_SHIFT (APS_POS or
    APS_NEG). phases are per-mode rotation angles θ_k for ROTATED; for
    SIGMA_SHIFT sigma_angles replaces the line of the lowest modes outright.
    Modes past the end of either tuple keep the base line.
    """

    kind: ProjectionKind
    base: Optional[ProjectionKind] = None
    phases: tuple[float, ...] = ()
    sigma_angles: tuple[float, ...] = ()
    profile: Callable = field(default=profile_gamma, compare=False, repr=False)

    def __post_init__(self):
        if self.kind in (ProjectionKind.ROTATED, ProjectionKind.SIGMA_SHIFT):
            base = self.base or ProjectionKind.APS_POS
            if base not in _BASE_ANGLE:
                raise DomainError(f"{self.kind.value} needs an APS base, got {base}")
            object.__setattr__(self, "base", base)
        if not all(math.isfinite(x) for x in self.phases + self.sigma_angles):
            raise DomainError("boundary phases must be finite")

    @classmethod
    def aps_pos(cls) -> "BoundaryProjection":
        return cls(ProjectionKind.APS_POS)

    @classmethod
    def aps_neg(cls) -> "BoundaryProjection":
        return cls(ProjectionKind.APS_NEG)

    @classmethod
    def rotated(cls, base: ProjectionKind, theta) -> "BoundaryProjection":
        phases = tuple(float(x) for x in theta)
        return cls(ProjectionKind.ROTATED, base=ProjectionKind(base), phases=phases)

    @classmethod
    def sigma(
        cls, dim: int, angles, base: ProjectionKind = ProjectionKind.APS_POS
    ) -> "BoundaryProjection":
        angles = tuple(float(a) for a in angles)
        if dim < 0 or len(angles) != dim:
            raise DomainError(f"sigma data needs {dim} angles, got {len(angles)}")
        return cls(ProjectionKind.SIGMA_SHIFT, base=ProjectionKind(base), sigma_angles=angles)

    @property
    def is_grassmannian(self) -> bool:
        return self.kind in GRASSMANNIAN_KINDS

    @property
    def perturbed_modes(self) -> int:
        """Number of leading modes whose line differs from the base line."""
        if self.kind is ProjectionKind.ROTATED:
            nonzero = [k for k, th in enumerate(self.phases) if th != 0.0]
            return nonzero[-1] + 1 if nonzero else 0
        if self.kind is ProjectionKind.SIGMA_SHIFT:
            return len(self.sigma_angles)
        return 0

    def phase(self, k: int) -> float:
        """Rotation θ_k of mode k relative to the base line."""
        if self.kind is ProjectionKind.ROTATED:
            return self.phases[k] if k < len(self.phases) else 0.0
        if self.kind is ProjectionKind.SIGMA_SHIFT and k < len(self.sigma_angles):
            return -2.0 * (self.sigma_angles[k] - _BASE_ANGLE[self.base])
        return 0.0

    def line_angle(self, k: int) -> float:
        """Angle α of the projected line on mode k."""
        if not self.is_grassmannian:
            raise DomainError(f"{self.kind.value} is not a line condition")
        if self.kind in _BASE_ANGLE:
            return _BASE_ANGLE[self.kind]
        if self.kind is ProjectionKind.SIGMA_SHIFT and k < len(self.sigma_angles):
            return reduce_angle(self.sigma_angles[k])
        return reduce_angle(_BASE_ANGLE[self.base] - 0.5 * self.phase(k))

    def per_mode_matrix(self, k: int) -> np.ndarray:
        if self.kind is ProjectionKind.DIRICHLET:
            return np.eye(2)
        if self.kind is ProjectionKind.NEUMANN:
            return np.zeros((2, 2))
        if self.kind is ProjectionKind.CHIRAL_PLUS:
            return P_PLUS.copy()
        if self.kind is ProjectionKind.CHIRAL_MINUS:
            return P_MINUS.copy()
        return line_projection(self.line_angle(k))

    def complement(self) -> "BoundaryProjection":
        """Id − P, mode by mode."""
        swap = {
            ProjectionKind.DIRICHLET: ProjectionKind.NEUMANN,
            ProjectionKind.NEUMANN: ProjectionKind.DIRICHLET,
            ProjectionKind.CHIRAL_PLUS: ProjectionKind.CHIRAL_MINUS,
            ProjectionKind.CHIRAL_MINUS: ProjectionKind.CHIRAL_PLUS,
            ProjectionKind.APS_POS: ProjectionKind.APS_NEG,
            ProjectionKind.APS_NEG: ProjectionKind.APS_POS,
        }
        if self.kind in swap:
            return BoundaryProjection(swap[self.kind])
        base = swap[self.base]
        if self.kind is ProjectionKind.ROTATED:
            return BoundaryProjection(ProjectionKind.ROTATED, base=base, phases=self.phases)
        turned = tuple(a + 0.5 * math.pi for a in self.sigma_angles)
        return BoundaryProjection(ProjectionKind.SIGMA_SHIFT, base=base, sigma_angles=turned)

    def describe(self) -> str:
        if self.kind is ProjectionKind.ROTATED:
            return f"rotated({self.base.value}, theta={list(self.phases)})"
        if self.kind is ProjectionKind.SIGMA_SHIFT:
            return f"sigma({len(self.sigma_angles)}, {list(self.sigma_angles)})"
        return self.kind.value


def projection_defect(P: np.ndarray) -> float:
    """max |P² − P| + max |P − P*|."""
    return float(np.max(np.abs(P @ P - P)) + np.max(np.abs(P - P.conj().T)))


def grassmann_defect(P: np.ndarray) -> float:
    """max |−GPG − (Id − P)|; zero exactly for the Grassmannian kinds."""
    return float(np.max(np.abs(-G @ P @ G - (np.eye(2) - P))))


def check_projection(bp: BoundaryProjection, modes: int, tol: float = 1e-12) -> float:
    """Largest algebra defect over the first `modes` modes.

    Raises:
        DomainError: a defect exceeds tol.
    """
    worst = 0.0
    for k in range(modes):
        P = bp.per_mode_matrix(k)
        defect = projection_defect(P)
        if bp.is_grassmannian:
            defect += grassmann_defect(P)
        worst = max(worst, defect)
    if worst > tol:
        raise DomainError(f"{bp.describe()}: projection algebra defect {worst:.3e}")
    return worst
