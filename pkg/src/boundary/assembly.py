"""Assemble per-mode problems into full heat traces and log-determinants."""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from src.config import Config
from src.errors import DomainError
from src.spectral import ArithmeticGenerator, TangentialSpectrum, tree_sum, zeta_B2
from src.zeta import HeatTraceSamples, fit_small_time, zeta_from_trace
from .secular import Component, ModeProblem, component_gap, component_trace

logger = logging.getLogger(__name__)

MODE_TRACE_WINDOW = 45.0
FIT_ORDER = 6


@dataclass
class ComponentLogDet:
    value: float
    error_estimate: float
    zeta_at_0: float


@lru_cache(maxsize=8192)
def component_log_det(comp: Component, method: str = "zeta", t0: float = 1.0) -> ComponentLogDet:
    """ln det_ζ(−∂² + μ²) of one scalar component.

    method="zeta" runs the split-Mellin engine on the hybrid component trace
    with mass μ; method="closed" returns the exact closed form.
    """
    if method == "closed":
        return ComponentLogDet(comp.closed_log_det(), 0.0, float("nan"))
    if method != "zeta":
        raise DomainError(f"unknown log-det method {method!r}")

    samples = HeatTraceSamples.from_function(
        lambda t: component_trace(comp, t),
        dimension_n=1,
        step=1.0 if comp.is_circle else 0.5,
        mass=comp.mu,
        gap=component_gap(comp),
        label=f"{comp.left}/{comp.right} μ={comp.mu:g} L={comp.length:g}",
    )
    result = zeta_from_trace(samples, fit_small_time(samples, FIT_ORDER), t0)
    return ComponentLogDet(result.log_det, result.error_estimate, result.zeta_at_0)


@dataclass
class ModeSplitResult:
    """Regularized log det over all modes, with its error accounting."""

    log_det: float
    error_estimate: float
    substitution_bound: float
    modes_numeric: int
    modes_substituted: int
    length: float


def _tail_bound(spec: TangentialSpectrum, cutoff: int, length: float) -> float:
    """Σ over modes past the cutoff of 2·mult·x/(1 − x), x = e^{−2μL}."""
    gen = spec.generator
    if not isinstance(gen, ArithmeticGenerator):
        return 0.0
    x = math.exp(-2.0 * (gen.a + gen.d * cutoff) * length)
    ratio = math.exp(-2.0 * gen.d * length)
    return 2.0 * gen.multiplicity * x / ((1.0 - x) * (1.0 - ratio))


def log_det_mode_split(
    spec: TangentialSpectrum,
    template: ModeProblem,
    cutoff: int = Config.DEFAULT_MODE_CUTOFF,
    method: str = "zeta",
    t0: float = Config.DEFAULT_T0,
) -> ModeSplitResult:
    """L·ζ_{B²}(−½) − C(0)ζ'_{B²}(0) − C'(0)ζ_{B²}(0) + Σ_components remainder.

    C(0), C'(0) are the component constants averaged over the two components of
    a mode pair. Components with μL above the substitution threshold take their
    leading asymptotics, and the discarded remainder is reported as a bound.

    Raises:
        DomainError: the template does not split into scalar components.
    """
    spec.require_invertible()
    mu, mult = spec.modes(cutoff)
    first = template.with_mode(float(mu[0]), 0).components()
    if first is None:
        raise DomainError("mode-split log det needs a template with scalar components")
    length = first[0].length
    c0 = 0.5 * sum(c.constants()[0] for c in first)
    c1 = 0.5 * sum(c.constants()[1] for c in first)

    zeta_terms = length * zeta_B2(spec, -0.5).real
    if c0:
        zeta_terms -= c0 * zeta_B2(spec, 0.0, derivative=1).real
    if c1:
        zeta_terms -= c1 * zeta_B2(spec, 0.0).real

    remainders = []
    error = 0.0
    bound = _tail_bound(spec, cutoff, length)
    numeric = substituted = 0
    for k, (m, n) in enumerate(zip(mu, mult)):
        comps = template.with_mode(float(m), k).components()
        if m * length > Config.TAIL_SUBSTITUTION_MU_R:
            bound += float(n) * sum(c.substitution_bound() for c in comps)
            substituted += 1
            continue
        numeric += 1
        for comp in comps:
            C0, C1 = comp.constants()
            det = component_log_det(comp, method, t0)
            leading = length * m + 2.0 * C0 * math.log(m) - C1
            remainders.append(float(n) * (det.value - leading))
            error += float(n) * det.error_estimate

    log_det = zeta_terms + tree_sum(remainders)
    logger.debug(
        f"mode-split log det over {numeric} numeric + {substituted} substituted modes "
        f"(L={length:g}): {log_det:.15g}, bound {bound:.2e}"
    )
    return ModeSplitResult(
        log_det=float(log_det),
        error_estimate=float(error),
        substitution_bound=float(bound),
        modes_numeric=numeric,
        modes_substituted=substituted,
        length=length,
    )


def _pair_trace(problem: ModeProblem, t: float, roots: Optional[np.ndarray]) -> float:
    """Massless D² trace of one mode pair (mass factor e^{−tμ²} removed)."""
    if roots is not None:
        return tree_sum(np.exp(-t * (roots**2 - problem.mu**2)))
    return sum(component_trace(c, t) for c in problem.components())


def assemble_zeta_inputs(
    spec: TangentialSpectrum,
    template: ModeProblem,
    mode_cutoff: int = Config.DEFAULT_MODE_CUTOFF,
    per_mode_count: int = 0,
    t_min: float = 1e-4,
) -> HeatTraceSamples:
    """Full two-dimensional heat trace Σ_k mult_k e^{−tμ_k²} θ_k(t) as zeta-engine input.

    Modes whose ends couple the components (rotated lines) use squared
    first-order secular roots reaching e^{−t_min λ²} < e^{−45}, or at least
    per_mode_count roots. Every other mode uses its hybrid component trace,
    and modes past mode_cutoff are enumerated until e^{−tμ²} is negligible.

    Raises:
        InvertibilityError: B has a kernel or some mode problem has a zero mode.
    """
    spec.require_invertible()
    if template.operator_order != 2:
        raise DomainError("assembled traces are built for D² problems")

    ends = [bp for bp in (template.left, template.right) if bp is not None]
    if any(bp.perturbed_modes > mode_cutoff for bp in ends):
        raise DomainError("perturbed modes must lie below the mode cutoff")
    lam_max = math.sqrt(MODE_TRACE_WINDOW / t_min)
    mu, mult = spec.modes(mode_cutoff)
    coupled: dict[int, np.ndarray] = {}
    gaps = []
    for k, m in enumerate(mu):
        problem = template.with_mode(float(m), k)
        if problem.components() is None:
            first = problem.first_order_roots(lam_max).values
            if first.size < per_mode_count:
                raise DomainError(f"mode {k}: only {first.size} roots below {lam_max:g}")
            coupled[k] = first
            gaps.append(float(np.min(first**2)))
        else:
            gaps.append(min(component_gap(c) for c in problem.components()))
    if coupled:
        logger.info(f"{len(coupled)} coupled modes solved by the first-order secular equation")

    gen = spec.generator
    finite = not isinstance(gen, ArithmeticGenerator)

    def trace(t: float) -> float:
        terms = []
        for k, (m, n) in enumerate(zip(mu, mult)):
            weight = math.exp(-t * m**2)
            if weight == 0.0:
                break
            problem = template.with_mode(float(m), k)
            terms.append(n * weight * _pair_trace(problem, t, coupled.get(k)))
        if not finite:
            k = mode_cutoff
            while True:
                m = gen.a + gen.d * k
                weight = math.exp(-t * m**2)
                if t * m**2 > MODE_TRACE_WINDOW:
                    break
                problem = template.with_mode(m, k)
                terms.append(gen.multiplicity * weight * _pair_trace(problem, t, None))
                k += 1
        return tree_sum(terms)

    return HeatTraceSamples.from_function(
        trace,
        dimension_n=2,
        step=0.5,
        gap=min(gaps),
        t_min=t_min,
        label=f"assembled {spec.describe()}",
    )