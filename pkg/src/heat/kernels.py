"""Half-cylinder heat kernels per mode pair.

On [0, ∞) × Y with D² = -∂ᵤ² + B², each mode pair (phi, G phi) carries a
scalar kernel times e^{-tμ²}. The boundary sits at u = 0. Diagonals are
returned as 2×2 matrices in the (phi, G phi) basis.
"""

import csv
import logging
import math
from enum import Enum
from pathlib import Path
from typing import Iterable

import numpy as np
from scipy import integrate
from scipy.special import erf

from src.errors import DomainError, QuadratureError
from src.spectral import ModePair, TangentialSpectrum, tree_sum
from .special import erfcx, gaussian

logger = logging.getLogger(__name__)

QUAD_TOLERANCE = 1e-12


class CylinderBC(str, Enum):
    """Boundary conditions with an explicit half-cylinder kernel."""

    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"
    CHIRAL_PLUS = "chiral_plus"
    CHIRAL_MINUS = "chiral_minus"
    APS = "aps"


_G = np.array([[0.0, -1.0], [1.0, 0.0]])
# Chiral projections P± = (I ∓ iG)/2 onto the ±i eigenlines of G.
P_PLUS = 0.5 * (np.eye(2) - 1j * _G)
P_MINUS = 0.5 * (np.eye(2) + 1j * _G)


def _check_t(t: float) -> None:
    if not t > 0:
        raise DomainError(f"heat kernel needs t > 0, got t={t}")


def free_diag(t: float) -> float:
    """Massless free-line diagonal (4πt)^{-1/2}."""
    return 1.0 / math.sqrt(4.0 * math.pi * t)


def image_diag(t: float, u):
    """Reflected term (4πt)^{-1/2} e^{-u²/t} at the point u."""
    return gaussian(t, 2.0 * np.asarray(u, dtype=np.float64))


def robin_correction(t: float, u, beta: float):
    """β e^{β(2u)+β²t} erfc(u/√t + β√t), written through erfcx to avoid overflow."""
    u = np.asarray(u, dtype=np.float64)
    root_t = math.sqrt(t)
    return beta * np.exp(-np.square(u) / t) * erfcx(u / root_t + beta * root_t)


def scalar_diag(kind: str, t: float, u, mu: float = 0.0):
    """Massless scalar diagonal for 'dirichlet', 'neumann' or 'robin' (∂ᵤf = μf at u=0)."""
    free = free_diag(t)
    image = image_diag(t, u)
    if kind == "dirichlet":
        return free - image
    if kind == "neumann":
        return free + image
    if kind == "robin":
        return free + image - robin_correction(t, u, mu)
    raise DomainError(f"unknown scalar boundary kind: {kind}")


def mode_kernel_diag(bc: CylinderBC, mode: ModePair, t: float, u: float) -> np.ndarray:
    """Diagonal K(t; u, u) of the half-cylinder heat kernel on one mode pair.

    APS kills the +μ component at u = 0 (Dirichlet) and leaves the -μ component
    with the Robin condition ∂ᵤf = μf. Chiral conditions are Dirichlet on one
    G-chirality and Neumann on the other, so their matrices are complex.
    """
    _check_t(t)
    if u < 0:
        raise DomainError(f"half-cylinder point must satisfy u >= 0, got u={u}")

    mass = math.exp(-t * mode.mu**2)
    dirichlet = float(scalar_diag("dirichlet", t, u))
    neumann = float(scalar_diag("neumann", t, u))

    if bc is CylinderBC.DIRICHLET:
        return mass * dirichlet * np.eye(2)
    if bc is CylinderBC.NEUMANN:
        return mass * neumann * np.eye(2)
    if bc is CylinderBC.CHIRAL_PLUS:
        return mass * (dirichlet * P_PLUS + neumann * P_MINUS)
    if bc is CylinderBC.CHIRAL_MINUS:
        return mass * (neumann * P_PLUS + dirichlet * P_MINUS)
    robin = float(scalar_diag("robin", t, u, mode.mu))
    return mass * np.diag([dirichlet, robin])


def aps_boundary_trace(mu: float, t: float) -> float:
    """∫₀^∞ (Robin diagonal − free) du = ½·erfcx(μ√t) − ¼ (massless)."""
    return 0.5 * float(erfcx(mu * math.sqrt(t))) - 0.25


def _robin_integral(t: float, length: float, mu: float) -> float:
    value, abserr = integrate.quad(
        lambda u: float(robin_correction(t, u, mu)),
        0.0,
        length,
        epsabs=QUAD_TOLERANCE,
        epsrel=1e-12,
        limit=200,
    )
    if abserr > 1e-9:
        raise QuadratureError(
            f"Robin correction integral did not converge (t={t}, μ={mu}, R={length})",
            residual=abserr,
        )
    return value


def pair_segment_trace(bc: CylinderBC, mu: float, t: float, length: float) -> float:
    """∫₀^R tr K(t; u, u) du for one mode pair."""
    bulk = length * free_diag(t)
    image = 0.25 * math.erf(length / math.sqrt(t))
    if bc is CylinderBC.DIRICHLET:
        massless = 2.0 * (bulk - image)
    elif bc is CylinderBC.NEUMANN:
        massless = 2.0 * (bulk + image)
    elif bc in (CylinderBC.CHIRAL_PLUS, CylinderBC.CHIRAL_MINUS):
        massless = 2.0 * bulk
    else:
        massless = (bulk - image) + (bulk + image - _robin_integral(t, length, mu))
    return math.exp(-t * mu**2) * massless


def trace_on_segment(
    bc: CylinderBC,
    spec: TangentialSpectrum,
    t: float,
    R: float,
    cutoff: int = 64,
) -> float:
    """Half-cylinder heat trace restricted to the collar [0, R], summed over modes.

    Dirichlet/Neumann/chiral use the erf closed form of the image integral; APS
    integrates its erfc correction by adaptive quadrature.
    """
    _check_t(t)
    if not R > 0:
        raise DomainError(f"segment length must be positive, got R={R}")

    mu, mult = spec.modes(cutoff)
    if bc is not CylinderBC.APS:
        per_mode = np.array([pair_segment_trace(bc, m, t, R) for m in mu])
        return tree_sum(mult * per_mode)

    values = []
    for m, k in zip(mu, mult):
        if t * m**2 > 745.0:
            values.append(0.0)
            continue
        values.append(k * pair_segment_trace(bc, float(m), t, R))
    return tree_sum(values)


def segment_eigen_trace(bc: CylinderBC, spec: TangentialSpectrum, t: float, length: float,
                        cutoff: int = 64) -> float:
    """Σ e^{-tλ} over the D² spectrum of [0, L] with the same condition at both ends.

    Closed-form eigenvalues μ² + (jπ/L)²; valid for Dirichlet, Neumann and chiral.
    """
    _check_t(t)
    if bc is CylinderBC.APS:
        raise DomainError("APS segment spectra come from the secular solver, not a closed form")

    j_max = int(math.ceil(length / math.pi * math.sqrt(42.0 / t))) + 2
    j = np.arange(1, j_max + 1, dtype=np.float64)
    interior = tree_sum(np.exp(-t * (j * math.pi / length) ** 2))
    dirichlet = interior
    neumann = interior + 1.0
    if bc is CylinderBC.DIRICHLET:
        massless = 2.0 * dirichlet
    elif bc is CylinderBC.NEUMANN:
        massless = 2.0 * neumann
    else:
        massless = dirichlet + neumann

    mu, mult = spec.modes(cutoff)
    return tree_sum(mult * np.exp(-t * mu**2)) * massless


def dump_kernel_csv(
    path: Path,
    bc: CylinderBC,
    modes: Iterable[ModePair],
    t_values: Iterable[float],
    u_values: Iterable[float],
) -> int:
    """Write tr K(t; u, u) per mode as CSV rows (t, u, mode, value). Returns the row count."""
    rows = 0
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    modes = list(modes)
    u_values = list(u_values)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["t", "u", "mode", "value"])
        for t in t_values:
            for u in u_values:
                for mode in modes:
                    value = float(np.trace(mode_kernel_diag(bc, mode, t, u)).real)
                    writer.writerow([f"{t:.16e}", f"{u:.16e}", f"{mode.mu:.16e}", f"{value:.16e}"])
                    rows += 1
    logger.debug(f"Wrote {rows} kernel rows to {path}")
    return rows
