"""Per-mode boundary-value problems and their spectra.

First-order problems solve f' = M(λ) f with M(λ) = [[−μ, λ], [−λ, μ]], the mode
form of G(∂ᵤ + B) f = λ f. Since M² = (μ² − λ²) Id the propagator over [0, R]
is c·Id + s·M with (c, s) = (cosh κR, sinh κR / κ), κ² = μ² − λ², continued to
trigonometric functions for |λ| > μ. Eigenvalues are the zeros of the secular
function v_rᵀ Φ(R, λ) w_l, where w_l spans the kernel of the left projection
and v_r spans the range of the right one.

Second-order problems split into two scalar components −f'' + μ² f with ends in
{dirichlet, neumann, robin}, robin meaning ∂_inward f = μ f, or a circle.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from src.errors import BracketError, DomainError, InvertibilityError
from src.heat.special import erfcx
from src.spectral import ModePair, tree_sum
from .projections import BoundaryProjection, ProjectionKind, line_vector

logger = logging.getLogger(__name__)

GRID_PER_PERIOD = 8
BOUND_STATE_GRID = 257
MAX_BISECTIONS = 200
SPATIAL_SWITCH = 40.0


class Topology(str, Enum):
    SEGMENT = "segment"
    CIRCLE = "circle"


@dataclass
class SecularRoots:
    """Certified roots: each value lies in [lower, upper] across a sign change."""

    values: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    @property
    def widths(self) -> np.ndarray:
        return self.upper - self.lower


def bisect_brackets(f: Callable[[np.ndarray], np.ndarray], lo: np.ndarray, hi: np.ndarray,
                    rel_tol: float = 1e-12) -> SecularRoots:
    """Vectorized bisection over all brackets at once.

    Raises:
        BracketError: some bracket carries no sign change.
    """
    lo = np.asarray(lo, dtype=np.float64).copy()
    hi = np.asarray(hi, dtype=np.float64).copy()
    if lo.size == 0:
        empty = np.empty(0)
        return SecularRoots(empty, empty, empty)

    f_lo = f(lo)
    f_hi = f(hi)
    bad = (f_lo * f_hi > 0) & (lo != hi)
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise BracketError(
            f"no sign change on [{lo[i]:.15g}, {hi[i]:.15g}]", interval=(float(lo[i]), float(hi[i]))
        )

    for _ in range(MAX_BISECTIONS):
        width = hi - lo
        active = width > rel_tol * (1.0 + np.abs(lo))
        if not np.any(active):
            break
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        hit = f_mid == 0.0
        go_right = (np.sign(f_mid) == np.sign(f_lo)) & ~hit
        lo = np.where(active & (go_right | hit), mid, lo)
        f_lo = np.where(active & go_right, f_mid, f_lo)
        hi = np.where(active & (~go_right | hit), mid, hi)
    else:
        i = int(np.argmax(hi - lo))
        raise BracketError("bisection did not converge", interval=(float(lo[i]), float(hi[i])))

    return SecularRoots(0.5 * (lo + hi), lo, hi)


def _sign_change_brackets(f: Callable[[np.ndarray], np.ndarray], grid: np.ndarray):
    values = f(grid)
    exact = values == 0.0
    change = np.flatnonzero((values[:-1] * values[1:] < 0) & ~exact[:-1] & ~exact[1:])
    lo = np.concatenate([grid[change], grid[exact]])
    hi = np.concatenate([grid[change + 1], grid[exact]])
    order = np.argsort(lo)
    return lo[order], hi[order]


# ---------------------------------------------------------------------------
# First-order problems


def propagator_coefficients(lam: np.ndarray, mu: float, R: float) -> tuple[np.ndarray, np.ndarray]:
    """(c, s) with Φ(R, λ) ∝ c·Id + s·M(λ); scaled by e^{−κR} when κ² > 0."""
    lam = np.asarray(lam, dtype=np.float64)
    k2 = mu**2 - lam**2
    small = np.abs(k2) * R**2 < 1e-8
    kappa = np.sqrt(np.abs(k2))
    safe = np.where(small, 1.0, kappa)

    decay = np.exp(-2.0 * safe * R)
    c_pos = 0.5 * (1.0 + decay)
    s_pos = 0.5 * (1.0 - decay) / safe
    c_osc = np.cos(safe * R)
    s_osc = np.sin(safe * R) / safe
    c_small = 1.0 + 0.5 * k2 * R**2
    s_small = R * (1.0 + k2 * R**2 / 6.0)

    c = np.where(small, c_small, np.where(k2 > 0, c_pos, c_osc))
    s = np.where(small, s_small, np.where(k2 > 0, s_pos, s_osc))
    return c, s


def propagator(lam: float, mu: float, R: float) -> np.ndarray:
    """Unscaled 2×2 propagator Φ(R, λ) of f' = M(λ) f."""
    M = np.array([[-mu, lam], [-lam, mu]])
    c, s = propagator_coefficients(np.array([lam]), mu, R)
    k2 = mu**2 - lam**2
    scale = math.exp(math.sqrt(k2) * R) if k2 * R**2 >= 1e-8 and k2 > 0 else 1.0
    return scale * (c[0] * np.eye(2) + s[0] * M)


def first_order_secular(mu: float, R: float, alpha_left: float, alpha_right: float):
    """λ ↦ v_{α_r}ᵀ Φ(R, λ) v_{α_l + π/2}, vectorized, with positive rescaling."""
    w = line_vector(alpha_left + 0.5 * math.pi)
    v = line_vector(alpha_right)
    vw = float(v @ w)

    def secular(lam: np.ndarray) -> np.ndarray:
        lam = np.asarray(lam, dtype=np.float64)
        c, s = propagator_coefficients(lam, mu, R)
        mw0 = -mu * w[0] + lam * w[1]
        mw1 = -lam * w[0] + mu * w[1]
        return c * vw + s * (v[0] * mw0 + v[1] * mw1)

    return secular


def solve_first_order(mu: float, R: float, alpha_left: float, alpha_right: float,
                      lam_max: float) -> SecularRoots:
    """All eigenvalues with |λ| <= lam_max of the segment problem with line ends.

    Raises:
        InvertibilityError: λ = 0 is an eigenvalue.
        BracketError: bisection failed.
    """
    secular = first_order_secular(mu, R, alpha_left, alpha_right)
    if abs(secular(np.array([0.0]))[0]) <= 1e-13:
        raise InvertibilityError(
            f"zero mode for μ={mu:g}, R={R:g}, lines ({alpha_left:.6g}, {alpha_right:.6g})"
        )

    spacing = math.pi / (GRID_PER_PERIOD * R)
    outer = np.arange(0.0, lam_max + spacing, spacing)
    inner = np.linspace(0.0, min(mu, lam_max), BOUND_STATE_GRID)
    half = np.union1d(outer, inner)
    grid = np.union1d(-half, half)
    lo, hi = _sign_change_brackets(secular, grid)
    roots = bisect_brackets(secular, lo, hi)
    keep = np.abs(roots.values) <= lam_max
    return SecularRoots(roots.values[keep], roots.lower[keep], roots.upper[keep])


def circle_first_order(mu: float, R: float, lam_max: float) -> np.ndarray:
    """±√(μ² + (jπ/R)²), j ∈ ℤ, on the circle of circumference 2R."""
    j_max = int(math.ceil(R * lam_max / math.pi)) + 1
    j = np.arange(-j_max, j_max + 1, dtype=np.float64)
    lam = np.sqrt(mu**2 + (j * math.pi / R) ** 2)
    lam = lam[lam <= lam_max]
    return np.sort(np.concatenate([-lam, lam]))


# ---------------------------------------------------------------------------
# Scalar components of second-order problems

COMPONENT_KINDS = ("dirichlet", "neumann", "robin")


@dataclass(frozen=True)
class Component:
    """−f'' + μ² f on [0, L] (or a circle of circumference L)."""

    left: str
    right: str
    mu: float
    length: float

    def __post_init__(self):
        circle = self.left == "circle"
        if circle != (self.right == "circle"):
            raise DomainError("a circle component must be a circle at both ends")
        if not circle and (self.left not in COMPONENT_KINDS or self.right not in COMPONENT_KINDS):
            raise DomainError(f"unknown component ends ({self.left}, {self.right})")
        if not self.length > 0:
            raise DomainError(f"component length must be positive, got {self.length}")

    @property
    def is_circle(self) -> bool:
        return self.left == "circle"

    @property
    def ends(self) -> frozenset:
        return frozenset((self.left, self.right))

    def constants(self) -> tuple[float, float]:
        """(C(0), C'(0)) with ln det = Lμ + 2C(0) ln μ − C'(0) + O(e^{−2μL})."""
        if self.is_circle:
            return 0.0, 0.0
        pair = (self.left, self.right)
        if pair == ("dirichlet", "dirichlet"):
            return -0.5, 0.0
        if pair == ("neumann", "neumann"):
            return 0.5, 0.0
        if self.ends == {"dirichlet", "robin"}:
            return 0.0, -math.log(2.0)
        raise DomainError(f"no closed-form constants for component {pair}")

    def closed_log_det(self) -> float:
        """Exact ln det_ζ of the massive component."""
        mu, L = self.mu, self.length
        if self.is_circle:
            return mu * L + 2.0 * math.log1p(-math.exp(-mu * L))
        C0, C1 = self.constants()
        base = mu * L + 2.0 * C0 * math.log(mu) - C1
        if self.ends == {"dirichlet", "robin"}:
            return base
        return base + math.log1p(-math.exp(-2.0 * mu * L))

    def substitution_bound(self) -> float:
        """|closed_log_det − leading asymptotics|, bounded by x/(1 − x) with x = e^{−2μL}."""
        if self.ends == {"dirichlet", "robin"}:
            return 0.0
        x = math.exp(-(1.0 if self.is_circle else 2.0) * self.mu * self.length)
        return (2.0 if self.is_circle else 1.0) * x / (1.0 - x)


def _scalar_secular(comp: Component) -> Callable[[np.ndarray], np.ndarray]:
    """k ↦ right-end condition applied to the solution started by the left-end condition."""
    mu, L = comp.mu, comp.length
    start = {"dirichlet": (0.0, 1.0), "neumann": (1.0, 0.0), "robin": (1.0, mu)}[comp.left]
    a, b = start

    def secular(k: np.ndarray) -> np.ndarray:
        k = np.asarray(k, dtype=np.float64)
        safe = np.where(k == 0.0, 1.0, k)
        sin_over_k = np.where(k == 0.0, L, np.sin(safe * L) / safe)
        f = a * np.cos(k * L) + b * sin_over_k
        df = -a * k * np.sin(k * L) + b * np.cos(k * L)
        if comp.right == "dirichlet":
            return f
        if comp.right == "neumann":
            return df
        return df + mu * f

    return secular


def component_roots(comp: Component, k_max: float, force_generic: bool = False) -> np.ndarray:
    """Wave numbers k >= 0 with μ² + k² in the component spectrum, up to k_max.

    Circle roots are listed with multiplicity (±j twice for j ≠ 0).
    """
    L = comp.length
    if comp.is_circle:
        j_max = int(math.floor(k_max * L / (2.0 * math.pi)))
        j = np.arange(-j_max, j_max + 1, dtype=np.float64)
        return np.sort(np.abs(2.0 * math.pi * j / L))

    pair = (comp.left, comp.right)
    j_max = int(math.floor(k_max * L / math.pi)) + 1
    j = np.arange(1, j_max + 1, dtype=np.float64)

    if not force_generic:
        if pair == ("dirichlet", "dirichlet"):
            k = j * math.pi / L
            return k[k <= k_max]
        if pair == ("neumann", "neumann"):
            k = np.concatenate([[0.0], j * math.pi / L])
            return k[k <= k_max]
        if comp.ends == {"dirichlet", "neumann"}:
            k = (j - 0.5) * math.pi / L
            return k[k <= k_max]
        if comp.ends == {"dirichlet", "robin"}:
            roots = bisect_brackets(_scalar_secular(comp), (j - 0.5) * math.pi / L, j * math.pi / L)
            return roots.values[roots.values <= k_max]

    secular = _scalar_secular(comp)
    spacing = math.pi / (GRID_PER_PERIOD * L)
    grid = np.arange(spacing / 2.0, k_max + spacing, spacing)
    lo, hi = _sign_change_brackets(secular, grid)
    roots = bisect_brackets(secular, lo, hi).values
    if pair == ("neumann", "neumann"):
        roots = np.concatenate([[0.0], roots])
    return roots[roots <= k_max]


@lru_cache(maxsize=4096)
def _cached_roots(comp: Component, k_max: float) -> np.ndarray:
    return component_roots(comp, k_max)


def component_gap(comp: Component) -> float:
    """Smallest eigenvalue μ² + k₁² of the massive component."""
    first = component_roots(comp, 4.0 * math.pi / comp.length)
    return comp.mu**2 + float(first[0]) ** 2


def component_trace(comp: Component, t: float) -> float:
    """Massless heat trace Σ e^{−t k²}.

    Spatial image form when L²/t > 40, eigen-sum otherwise; the two agree to
    machine precision at the switch.
    """
    if not t > 0:
        raise DomainError(f"component trace needs t > 0, got t={t}")
    L = comp.length

    if comp.is_circle:
        if L**2 / (4.0 * t) > SPATIAL_SWITCH:
            return L / math.sqrt(4.0 * math.pi * t) * (1.0 + 2.0 * math.exp(-(L**2) / (4.0 * t)))
    elif L**2 / t > SPATIAL_SWITCH:
        bulk = L / math.sqrt(4.0 * math.pi * t)
        images = 2.0 * bulk * math.exp(-(L**2) / t)
        pair = (comp.left, comp.right)
        if pair == ("dirichlet", "dirichlet"):
            return bulk + images - 0.5
        if pair == ("neumann", "neumann"):
            return bulk + images + 0.5
        if comp.ends == {"dirichlet", "neumann"}:
            return bulk - images
        if comp.ends == {"dirichlet", "robin"}:
            return bulk - 0.25 + 0.5 * float(erfcx(comp.mu * math.sqrt(t))) - 0.25

    k_max = math.sqrt(SPATIAL_SWITCH / t) + 2.0 * math.pi / L
    k_max = math.ceil(k_max * L / math.pi) * math.pi / L
    k = _cached_roots(comp, k_max)
    return tree_sum(np.exp(-t * k**2))


# ---------------------------------------------------------------------------
# Mode problems


@dataclass(frozen=True)
class ModeProblem:
    """D or D² on one mode pair over a segment [0, R] or a circle of circumference 2R.

    index is the position of the mode in the spectrum, used to read per-mode
    phases of rotated conditions.
    """

    mode: ModePair
    length: float
    left: Optional[BoundaryProjection] = None
    right: Optional[BoundaryProjection] = None
    topology: Topology = Topology.SEGMENT
    operator_order: int = 2
    index: int = 0

    def __post_init__(self):
        if not self.length > 0:
            raise DomainError(f"mode problem needs R > 0, got R={self.length}")
        if self.operator_order not in (1, 2):
            raise DomainError(f"operator order must be 1 or 2, got {self.operator_order}")
        if self.topology is Topology.SEGMENT:
            if self.left is None or self.right is None:
                raise DomainError("segment problems need a condition at both ends")
            lines = self.left.is_grassmannian and self.right.is_grassmannian
            if self.operator_order == 1 and not lines:
                raise DomainError("first-order segment problems need Grassmannian conditions")

    @property
    def mu(self) -> float:
        return self.mode.mu

    def with_mode(self, mu: float, index: int) -> "ModeProblem":
        return ModeProblem(ModePair(mu), self.length, self.left, self.right, self.topology,
                           self.operator_order, index)

    def line_angles(self) -> tuple[float, float]:
        return self.left.line_angle(self.index), self.right.line_angle(self.index)

    def components(self) -> Optional[list[Component]]:
        """Scalar components of the D² problem, or None when the ends couple them."""
        mu, R = self.mu, self.length
        if self.topology is Topology.CIRCLE:
            return [Component("circle", "circle", mu, 2.0 * R)] * 2
        kinds = (self.left.kind, self.right.kind)
        if kinds == (ProjectionKind.DIRICHLET, ProjectionKind.DIRICHLET):
            return [Component("dirichlet", "dirichlet", mu, R)] * 2
        if kinds == (ProjectionKind.NEUMANN, ProjectionKind.NEUMANN):
            return [Component("neumann", "neumann", mu, R)] * 2
        if kinds in (
            (ProjectionKind.CHIRAL_PLUS, ProjectionKind.CHIRAL_PLUS),
            (ProjectionKind.CHIRAL_MINUS, ProjectionKind.CHIRAL_MINUS),
        ):
            return [
                Component("dirichlet", "dirichlet", mu, R),
                Component("neumann", "neumann", mu, R),
            ]
        if self.left.is_grassmannian and self.right.is_grassmannian:
            a_l, a_r = self.line_angles()
            if abs(a_l) < 1e-15 and abs(a_r - 0.5 * math.pi) < 1e-15:
                return [
                    Component("dirichlet", "robin", mu, R),
                    Component("robin", "dirichlet", mu, R),
                ]
            return None
        raise DomainError(f"unsupported end pair {kinds[0].value}/{kinds[1].value}")

    def first_order_roots(self, lam_max: float) -> SecularRoots:
        if self.topology is Topology.CIRCLE:
            lam = circle_first_order(self.mu, self.length, lam_max)
            return SecularRoots(lam, lam, lam)
        a_l, a_r = self.line_angles()
        return solve_first_order(self.mu, self.length, a_l, a_r, lam_max)

    def eigenvalues_up_to(self, bound: float) -> np.ndarray:
        """All eigenvalues with |λ| <= bound (first order) or λ <= bound (second order)."""
        if self.operator_order == 1:
            lam = self.first_order_roots(bound).values
            return lam[np.lexsort((lam, np.abs(lam)))]
        comps = self.components()
        if comps is None:
            lam = self.first_order_roots(math.sqrt(bound)).values
            return np.sort(lam**2)
        if bound < self.mu**2:
            return np.empty(0)
        k_max = math.sqrt(bound - self.mu**2)
        parts = [self.mu**2 + component_roots(c, k_max) ** 2 for c in comps]
        return np.sort(np.concatenate(parts))


def mode_spectrum(p: ModeProblem, count: int) -> np.ndarray:
    """The first `count` eigenvalues of a mode problem.

    First-order spectra are ordered by |λ|, negative first on ties; second-order
    spectra ascending.
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    per_unit = p.length / math.pi
    bound = p.mu + (count + 4) / (2.0 * per_unit)
    for _ in range(60):
        level = bound if p.operator_order == 1 else bound**2
        values = p.eigenvalues_up_to(level)
        if values.size >= count:
            return values[:count]
        bound *= 2.0
    raise BracketError(f"could not collect {count} eigenvalues for μ={p.mu:g}")
