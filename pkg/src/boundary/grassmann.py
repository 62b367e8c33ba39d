"""Mode-diagonal Grassmannian points and the canonical determinant.

In the chiral basis v± = (1, ∓i)/√2 of a mode pair (G v± = ±i v±) the line
v_α = (cos α, sin α) is the graph of T = e^{−2iα} from the S⁺ to the S⁻ factor.
A point is stored as phases θ_k with T_k = K_k e^{iθ_k}, where K_k is the
graph of the Calderón line; modes past the listed phases are unperturbed.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from src.errors import DomainError
from src.heat.gluing import profile_gamma
from src.spectral import ModePair
from src.zeta import FredholmDeterminant, fredholm_det
from .projections import BoundaryProjection, ProjectionKind, line_projection, line_vector
from .secular import propagator

logger = logging.getLogger(__name__)

V_PLUS = np.array([1.0, -1.0j]) / math.sqrt(2.0)
V_MINUS = np.array([1.0, 1.0j]) / math.sqrt(2.0)
CHIRAL_BASIS = np.column_stack([V_PLUS, V_MINUS])


def line_to_graph(alpha: float) -> complex:
    return complex(np.exp(-2.0j * alpha))


def graph_to_line(T: complex) -> float:
    return float((-0.5 * np.angle(T)) % math.pi)


def graph_projection(T: complex) -> np.ndarray:
    """Orthogonal projection onto graph(T) in the (phi, G phi) basis."""
    return line_projection(graph_to_line(T))


@dataclass(frozen=True)
class GrassmannPoint:
    """Per-mode unitary scalars T_k = K_k e^{iθ_k}."""

    thetas: tuple[float, ...]
    reference: tuple[complex, ...] = ()

    def __post_init__(self):
        if not all(math.isfinite(th) for th in self.thetas):
            raise DomainError("Grassmannian phases must be finite")
        if self.reference and len(self.reference) < len(self.thetas):
            raise DomainError("reference graph must cover every perturbed mode")
        if any(abs(abs(K) - 1.0) > 1e-12 for K in self.reference):
            raise DomainError("reference graph scalars must be unitary")

    @classmethod
    def geometric(cls, first: float, count: int) -> "GrassmannPoint":
        """θ_k = first·e^{−k}, k = 0..count−1."""
        return cls(tuple(first * math.exp(-k) for k in range(count)))

    @classmethod
    def from_projection(cls, bp: BoundaryProjection, modes: int) -> "GrassmannPoint":
        return cls(tuple(bp.phase(k) for k in range(modes)))

    def K(self, k: int) -> complex:
        return self.reference[k] if k < len(self.reference) else 1.0 + 0.0j

    def T(self, k: int) -> complex:
        theta = self.thetas[k] if k < len(self.thetas) else 0.0
        return self.K(k) * complex(np.exp(1.0j * theta))

    @property
    def deviation(self) -> float:
        """Σ |T_k − K_k|."""
        return float(sum(abs(np.exp(1.0j * th) - 1.0) for th in self.thetas))

    def projection(self, base: ProjectionKind = ProjectionKind.APS_POS) -> BoundaryProjection:
        return BoundaryProjection.rotated(base, self.thetas)


def calderon_graph(mode: ModePair, half_line_side: str = "right") -> complex:
    """K of the line of Cauchy data at u = 0 of solutions of (∂ᵤ + B) f = 0.

    Solutions are e^{-uB} f(0). On [0, ∞) the decaying ones start on the
    eigenlines of B with positive eigenvalue, on (−∞, 0] on the negative ones.
    """
    if half_line_side not in ("left", "right"):
        raise DomainError(f"half_line_side must be 'left' or 'right', got {half_line_side!r}")
    eigenvalues, vectors = np.linalg.eigh(mode.b_matrix)
    decaying = eigenvalues > 0 if half_line_side == "right" else eigenvalues < 0
    if np.count_nonzero(decaying) != 1:
        raise DomainError(f"no unique decaying line for μ={mode.mu:g}")
    v = vectors[:, int(np.flatnonzero(decaying)[0])]
    return line_to_graph(math.atan2(v[1], v[0]))


def unitary_twist(point: GrassmannPoint, modes: Optional[int] = None) -> list[np.ndarray]:
    """U(P) per mode: diag(1, T K⁻¹) in the chiral basis, returned in the (phi, G phi) basis."""
    count = len(point.thetas) if modes is None else modes
    inverse = CHIRAL_BASIS.conj().T
    return [
        CHIRAL_BASIS @ np.diag([1.0, point.T(k) / point.K(k)]) @ inverse for k in range(count)
    ]


def twist_defect(point: GrassmannPoint, modes: Optional[int] = None) -> float:
    """max_k |U P(D) U⁻¹ − P| over the listed modes."""
    worst = 0.0
    for k, U in enumerate(unitary_twist(point, modes)):
        reference = graph_projection(point.K(k))
        target = graph_projection(point.T(k))
        worst = max(worst, float(np.max(np.abs(U @ reference @ U.conj().T - target))))
    return worst


def canonical_determinant(point: GrassmannPoint) -> FredholmDeterminant:
    """det_Fr((Id + K T⁻¹)/2) over modes."""
    deviations = [0.5 * (1.0 + point.K(k) / point.T(k)) - 1.0 for k in range(len(point.thetas))]
    return fredholm_det(deviations)


def propagated_graph(mu: float, R: float, far_line: float = 0.5 * math.pi) -> complex:
    """K_R: the Cauchy line at u = 0 of solutions of D f = 0 on [0, R] with P f(R) = 0."""
    at_far_end = line_vector(far_line + 0.5 * math.pi)
    back = np.linalg.solve(propagator(0.0, mu, R), at_far_end)
    return line_to_graph(math.atan2(back[1], back[0]))


def scattering_block(point: GrassmannPoint, R: float, mus: np.ndarray) -> list[complex]:
    """S_R(P) = (1 + K_R T⁻¹)/2 per perturbed mode on the half-model of length R."""
    if len(mus) < len(point.thetas):
        raise DomainError("need one μ per perturbed mode")
    blocks = []
    for k in range(len(point.thetas)):
        K_R = propagated_graph(float(mus[k]), R)
        blocks.append(0.5 * (1.0 + K_R / point.T(k)))
    return blocks


def eta_variation_formula(thetas, profile: Callable = profile_gamma) -> float:
    """Predicted η shift −(1/π) ∫₀¹ dr ∫₀¹ du γ'(u)·Tr Θ of the path r ↦ e^{irΘγ(u)}.

    The integrand does not depend on r and the u-integral is γ(1) − γ(0), so the
    shift is evaluated in closed form; only the profile endpoints enter.

    Raises:
        DomainError: the profile does not run from 1 at u = 0 to 0 at u = 1.
    """
    start, end = float(profile(0.0)), float(profile(1.0))
    if abs(start - 1.0) > 1e-12 or abs(end) > 1e-12:
        raise DomainError(f"profile must run from 1 to 0, got γ(0)={start:g}, γ(1)={end:g}")
    trace_theta = math.fsum(float(th) for th in thetas)
    return -(end - start) * trace_theta / math.pi
