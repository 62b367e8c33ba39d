"""Split-Mellin zeta and eta engine.

ζ(s) = Γ(s)⁻¹ ∫₀^∞ t^{s-1} Tr e^{-tΔ} dt is split at t₀. Below t₀ the small-time
expansion Σ a_p t^p is subtracted and integrated analytically; above t₀ the
trace is integrated directly up to a truncation time fixed by the spectral gap.
A trace may declare a mass factor e^{-m²t}; the expansion then describes the
trace with that factor removed, and the analytic pieces become incomplete
gamma functions.
"""

import csv
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import mpmath
import numpy as np
from scipy import integrate, special

from src.errors import ConfigError, DomainError, FitError, InvertibilityError, QuadratureError
from src.spectral import tree_sum

logger = logging.getLogger(__name__)

EULER_GAMMA = float(np.euler_gamma)
QUAD_ABS_TOL = 1e-12
MAX_FIT_CONDITION = 1e12
TRUNCATION_LEVEL = 1e-16

TraceFunction = Callable[[float], float]


@dataclass
class HeatTraceSamples:
    """A heat-trace source sampled on a log-spaced grid.

    trace_fn returns the trace with any declared mass factor e^{-mass²·t}
    removed. step is the spacing of the small-time exponents (1/2 for problems
    with boundary, 1 for closed ones). gap is a lower bound for the smallest
    eigenvalue of the full operator (mass included).
    """

    trace_fn: TraceFunction
    t_grid: np.ndarray
    dimension_n: int
    step: float = 0.5
    mass: float = 0.0
    gap: Optional[float] = None
    label: str = "trace"
    values: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.t_grid = np.asarray(self.t_grid, dtype=np.float64)
        if self.t_grid.ndim != 1 or self.t_grid.size < 2 or np.any(np.diff(self.t_grid) <= 0):
            raise ConfigError("t_grid must be a strictly increasing 1-D grid")
        if self.t_grid[0] > 1e-4 or self.t_grid[-1] < 50.0:
            raise ConfigError(
                "t_grid must span at least [1e-4, 50], "
                f"got [{self.t_grid[0]:g}, {self.t_grid[-1]:g}]"
            )
        if self.gap is not None and self.gap <= 0:
            raise InvertibilityError(
                f"{self.label}: smallest eigenvalue {self.gap:g} is not positive"
            )
        self.values = np.array([self.trace_fn(float(t)) for t in self.t_grid])

    @property
    def t_min(self) -> float:
        return float(self.t_grid[0])

    def full_trace(self, t: float) -> float:
        return math.exp(-self.mass**2 * t) * self.trace_fn(t)

    @classmethod
    def from_function(
        cls,
        trace_fn: TraceFunction,
        dimension_n: int,
        step: float = 0.5,
        mass: float = 0.0,
        gap: Optional[float] = None,
        t_min: float = 1e-4,
        t_max: float = 50.0,
        per_decade: int = 24,
        label: str = "trace",
    ) -> "HeatTraceSamples":
        decades = math.log10(t_max / t_min)
        grid = np.logspace(math.log10(t_min), math.log10(t_max), int(per_decade * decades) + 1)
        return cls(trace_fn, grid, dimension_n, step, mass, gap, label)

    @classmethod
    def from_spectrum(
        cls,
        eigenvalues: np.ndarray,
        dimension_n: int = 0,
        step: float = 1.0,
        t_min: float = 1e-4,
        label: str = "spectrum",
    ) -> "HeatTraceSamples":
        """Trace Σ e^{-tλ} of a list of positive Laplacian eigenvalues.

        For a truncated infinite spectrum the list must reach λ with
        e^{-t_min·λ} negligible.
        """
        lam = np.sort(np.asarray(eigenvalues, dtype=np.float64))
        if lam.size == 0:
            raise DomainError("empty spectrum")
        if lam[0] <= 0:
            raise InvertibilityError(f"{label}: eigenvalue {lam[0]:g} is not positive")
        return cls.from_function(
            lambda t: tree_sum(np.exp(-t * lam)),
            dimension_n=dimension_n,
            step=step,
            gap=float(lam[0]),
            t_min=t_min,
            label=label,
        )


@dataclass
class AsymptoticExpansion:
    """Small-time expansion Σ_k a_k t^{p_k} of a heat trace (mass factor removed)."""

    exponents: tuple[float, ...]
    coefficients: tuple[float, ...]
    order: int
    fit_residual: float
    condition: float
    pure_exponential: bool = False

    def coefficient(self, p: float) -> float:
        for q, a in zip(self.exponents, self.coefficients):
            if abs(q - p) < 1e-12:
                return a
        return 0.0

    def singular_terms(self) -> list[tuple[float, float]]:
        return [(p, a) for p, a in zip(self.exponents, self.coefficients) if p <= 1e-12]

    def regular_terms(self) -> list[tuple[float, float]]:
        return [(p, a) for p, a in zip(self.exponents, self.coefficients) if p > 1e-12]

    def singular_value(self, t):
        t = np.asarray(t, dtype=np.float64)
        return sum(a * t**p for p, a in self.singular_terms())


@dataclass
class ZetaResult:
    """ζ(0), ζ'(0) and the determinant exp(-ζ'(0))."""

    zeta_at_0: float
    zeta_prime_at_0: float
    det_zeta: float
    error_estimate: float
    split_point: float

    @property
    def log_det(self) -> float:
        return -self.zeta_prime_at_0


@dataclass
class EtaResult:
    """η(0) with its numerical error estimate."""

    eta_at_0: float
    error_estimate: float


def _least_squares(
    t: np.ndarray, y: np.ndarray, powers: np.ndarray
) -> tuple[np.ndarray, float, float]:
    """Fit y ≈ Σ c_k t^{powers_k} with columns scaled to the top of the window."""
    t_hi = t[-1]
    design = (t[:, None] / t_hi) ** powers[None, :]
    condition = float(np.linalg.cond(design))
    if not np.isfinite(condition) or condition > MAX_FIT_CONDITION:
        raise FitError(f"small-time fit is ill-conditioned (cond={condition:.3e})", condition)
    scaled, *_ = np.linalg.lstsq(design, y, rcond=None)
    scale = np.max(np.abs(y)) or 1.0
    residual = float(np.max(np.abs(design @ scaled - y)) / scale)
    return scaled / t_hi**powers, residual, condition


def fit_small_time(samples: HeatTraceSamples, order: int) -> AsymptoticExpansion:
    """Least-squares fit of t^{n/2}·trace(t) against powers of t on the smallest decade.

    A trace with no t^{-n/2} growth is flagged as a pure exponential source and
    refitted as a Taylor series in integer powers.

    Raises:
        FitError: too few points in the window or condition number above 1e12.
    """
    if order < 1:
        raise DomainError(f"fit order must be >= 1, got {order}")
    window = samples.t_grid <= 10.0 * samples.t_min * (1 + 1e-12)
    t = samples.t_grid[window]
    if t.size < 3 * order:
        raise FitError(f"smallest decade holds {t.size} samples, need >= {3 * order}")
    trace = samples.values[window]

    half_n = samples.dimension_n / 2.0
    powers = samples.step * np.arange(order + 1, dtype=np.float64)
    coeffs, residual, condition = _least_squares(t, t**half_n * trace, powers)
    exponents = powers - half_n

    leading_scale = np.max(np.abs(t**half_n * trace)) or 1.0
    pure = samples.dimension_n > 0 and abs(coeffs[0]) < 1e-9 * leading_scale
    if pure:
        logger.info(
            f"{samples.label}: no t^(-{half_n:g}) growth, treating source as pure exponential"
        )
        powers = np.arange(order + 1, dtype=np.float64)
        coeffs, residual, condition = _least_squares(t, trace, powers)
        exponents = powers

    logger.debug(
        f"{samples.label}: fitted {order + 1} coefficients, "
        f"residual {residual:.2e}, cond {condition:.2e}"
    )
    return AsymptoticExpansion(
        exponents=tuple(float(p) for p in exponents),
        coefficients=tuple(float(a) for a in coeffs),
        order=order,
        fit_residual=residual,
        condition=condition,
        pure_exponential=bool(pure),
    )


def _quad_log(
    f: Callable[[float], float], t_lo: float, t_hi: float, what: str
) -> tuple[float, float]:
    """∫_{t_lo}^{t_hi} f(t) dt/t by Gauss–Kronrod in x = ln t."""
    if t_hi <= t_lo:
        return 0.0, 0.0
    value, abserr = integrate.quad(
        lambda x: f(math.exp(x)), math.log(t_lo), math.log(t_hi), epsabs=QUAD_ABS_TOL,
        epsrel=1e-12, limit=400,
    )
    if abserr > 1e-7:
        raise QuadratureError(f"{what} did not converge", residual=abserr)
    return value, abserr


def _mellin_factor(p: float) -> tuple[float, float]:
    """f(0) and f'(0) for f(s) = Γ(s + p)/Γ(s)."""
    q = -p
    if abs(q - round(q)) < 1e-12 and q > -1e-12:
        q = int(round(q))
        f0 = (-1) ** q / math.factorial(q)
        harmonic = sum(1.0 / j for j in range(1, q + 1))
        return f0, f0 * harmonic
    return 0.0, math.gamma(p)


def large_time_tail_bound(gap: float, trace_at_one: float, T: float) -> float:
    """Bound on ∫_T^∞ Tr e^{-tΔ} dt/t when every eigenvalue is >= gap."""
    if gap <= 0:
        raise InvertibilityError(f"spectral gap {gap:g} is not positive")
    return abs(trace_at_one) * math.exp(-gap * (T - 1.0)) / (gap * T)


def _truncation_time(samples: HeatTraceSamples, t0: float) -> tuple[float, float]:
    gap = samples.gap
    if gap is None:
        t_a, t_b = samples.t_grid[-2], samples.t_grid[-1]
        v_a, v_b = samples.full_trace(t_a), samples.full_trace(t_b)
        if v_b <= 0 or v_a <= v_b:
            raise InvertibilityError(f"{samples.label}: trace does not decay at large t")
        gap = math.log(v_a / v_b) / (t_b - t_a)
    trace_at_one = samples.full_trace(1.0)
    T = 1.0 + math.log(max(abs(trace_at_one), 1.0) / TRUNCATION_LEVEL) / gap
    T = max(T, 2.0 * t0)
    return T, large_time_tail_bound(gap, trace_at_one, T)


def zeta_from_trace(
    samples: HeatTraceSamples,
    expansion: AsymptoticExpansion,
    t0: float = 1.0,
) -> ZetaResult:
    """ζ(0) and ζ'(0) of the operator whose heat trace is sampled.

    Raises:
        ConfigError: t0 outside the sampled range.
        InvertibilityError: non-positive gap or non-decaying trace.
        QuadratureError: an integral missed its tolerance.
    """
    if not samples.t_grid[0] < t0 < samples.t_grid[-1]:
        raise ConfigError(
            f"split point t0={t0} outside sampled range "
            f"[{samples.t_grid[0]:g}, {samples.t_grid[-1]:g}]"
        )

    m2 = samples.mass**2
    t_min = samples.t_min
    singular = expansion.singular_terms()
    regular = expansion.regular_terms()

    def remainder(t: float) -> float:
        return math.exp(-m2 * t) * (samples.trace_fn(t) - sum(a * t**p for p, a in singular))

    small, err_small = _quad_log(remainder, t_min, t0, f"{samples.label}: small-time integral")
    T, tail = _truncation_time(samples, t0)
    large, err_large = _quad_log(samples.full_trace, t0, T, f"{samples.label}: large-time integral")

    if m2 == 0.0:
        zeta0 = expansion.coefficient(0.0)
        analytic = zeta0 * (math.log(t0) + EULER_GAMMA)
        analytic += sum(a * t0**p / p for p, a in singular if p < -1e-12)
        below = sum(a * t_min**p / p for p, a in regular)
    else:
        m = samples.mass
        zeta0 = 0.0
        analytic = 0.0
        for p, a in singular:
            f0, f1 = _mellin_factor(p)
            scale = a * m ** (-2.0 * p)
            zeta0 += scale * f0
            upper = float(mpmath.gammainc(p, a=m2 * t0))
            analytic += scale * (f1 - 2.0 * math.log(m) * f0 - upper)
        below = sum(
            a * m ** (-2.0 * p) * special.gammainc(p, m2 * t_min) * special.gamma(p)
            for p, a in regular
        )

    zeta_prime = analytic + small + large + below
    error = err_small + err_large + tail + abs(below) * max(expansion.fit_residual, 1e-15)
    log_det = -zeta_prime
    det = math.exp(log_det) if log_det < 709.0 else math.inf

    logger.debug(
        f"{samples.label}: ζ(0)={zeta0:.12g}, ζ'(0)={zeta_prime:.15g}, error≈{error:.2e}, T={T:.3g}"
    )
    return ZetaResult(
        zeta_at_0=float(zeta0),
        zeta_prime_at_0=float(zeta_prime),
        det_zeta=det,
        error_estimate=float(error),
        split_point=t0,
    )


def eta_from_spectrum(
    eigenvalues: np.ndarray,
    t0: float = 1.0,
    finite: bool = False,
    order: int = 6,
    pairing_shortcut: bool = True,
) -> EtaResult:
    """η(0) = (1/√π)∫₀^∞ t^{-1/2} Σ λ e^{-tλ²} dt.

    finite=True treats the list as the whole spectrum (η = Σ sign λ exactly).
    Otherwise the list is a truncation whose omitted high eigenvalues cancel in
    ± pairs; it must be long enough that e^{-t_min λ_max²} is negligible for the
    t_min used below. Spectra with exact ± pairing return 0 without integration
    unless pairing_shortcut is off.

    Raises:
        DomainError: a zero eigenvalue, or a list too short to resolve small t.
    """
    lam = np.asarray(eigenvalues, dtype=np.float64)
    if lam.size == 0:
        return EtaResult(0.0, 0.0)
    if np.any(lam == 0.0):
        raise DomainError("η needs a spectrum without zero eigenvalues")

    if finite:
        return EtaResult(float(np.sum(np.sign(lam))), 0.0)

    positive = np.sort(lam[lam > 0])
    negative = np.sort(-lam[lam < 0])
    if pairing_shortcut and np.array_equal(positive, negative):
        return EtaResult(0.0, 0.0)

    lam_max = float(np.max(np.abs(lam)))
    t_min = 37.0 / lam_max**2
    if t_min > t0 / 20.0:
        raise DomainError(
            f"spectrum reaches only |λ| = {lam_max:g}; "
            f"too short to resolve small times below t0={t0}"
        )

    signs = np.sign(lam)
    sq = lam**2

    def h(t: float) -> float:
        return tree_sum(lam * np.exp(-t * sq))

    large = tree_sum(signs * special.erfc(np.abs(lam) * math.sqrt(t0)))
    small, err_small = _quad_log(
        lambda t: math.sqrt(t) * h(t), t_min, t0, "η small-time integral"
    )
    small /= math.sqrt(math.pi)

    window = np.logspace(math.log10(t_min), math.log10(10.0 * t_min), 4 * order)
    powers = 0.5 * np.arange(order + 1, dtype=np.float64)
    coeffs, residual, _ = _least_squares(window, np.array([h(t) for t in window]), powers)
    below = sum(c * t_min ** (p + 0.5) / (p + 0.5) for p, c in zip(powers, coeffs))
    below /= math.sqrt(math.pi)

    eta = large + small + below
    error = err_small / math.sqrt(math.pi) + abs(below) * max(residual, 1e-15) + 1e-12 * lam.size
    logger.debug(f"η(0)={eta:.12g} (large {large:.6g}, small {small:.6g}, below {below:.3g})")
    return EtaResult(float(eta), float(error))


def nearest_integer_residue(x: float) -> float:
    """x minus the nearest integer, in [-1/2, 1/2]."""
    return float(x - round(x))


def det_zeta_dirac(zeta_d2: ZetaResult, eta: EtaResult) -> complex:
    """det_ζ D on the '−' branch: exp(iπ/2·(ζ_{D²}(0) − η(0)))·exp(−ζ'_{D²}(0)/2)."""
    phase = 0.5j * math.pi * (zeta_d2.zeta_at_0 - eta.eta_at_0)
    return complex(np.exp(phase) * math.exp(-0.5 * zeta_d2.zeta_prime_at_0))


def duhamel_derivative(
    eigenvalues: np.ndarray,
    alpha: np.ndarray,
    r: float = 0.0,
    h: float = 1e-4,
    dimension_n: int = 1,
    t0: float = 1.0,
) -> float:
    """Central difference of r ↦ ln det_ζ(Δ·e^{rα}) for a diagonal insertion α."""
    lam = np.asarray(eigenvalues, dtype=np.float64)
    alpha = np.zeros_like(lam) if alpha is None else np.asarray(alpha, dtype=np.float64)
    if alpha.size < lam.size:
        alpha = np.concatenate([alpha, np.zeros(lam.size - alpha.size)])

    def log_det(rr: float) -> float:
        samples = HeatTraceSamples.from_spectrum(
            lam * np.exp(rr * alpha), dimension_n=dimension_n, step=0.5, label="duhamel"
        )
        return zeta_from_trace(samples, fit_small_time(samples, 6), t0).log_det

    return (log_det(r + h) - log_det(r - h)) / (2.0 * h)


def log_det_ratio(reference: np.ndarray, perturbed: np.ndarray, t0: float = 1.0) -> ZetaResult:
    """ln det_ζ(perturbed) − ln det_ζ(reference) from the difference of heat traces.

    Both lists pair eigenvalues index by index. Pairs that agree cancel exactly,
    so for a trace-class perturbation the difference trace is smooth at t = 0
    and is fitted in integer powers.

    Raises:
        DomainError: the lists differ in length.
        InvertibilityError: a non-positive eigenvalue.
    """
    ref = np.asarray(reference, dtype=np.float64)
    new = np.asarray(perturbed, dtype=np.float64)
    if ref.shape != new.shape:
        raise DomainError(f"spectra must pair up, got {ref.size} and {new.size} eigenvalues")
    moved = ref != new
    ref, new = ref[moved], new[moved]
    if ref.size == 0:
        return ZetaResult(0.0, 0.0, 1.0, 0.0, t0)
    gap = float(min(ref.min(), new.min()))
    if gap <= 0:
        raise InvertibilityError(f"eigenvalue {gap:g} is not positive")

    samples = HeatTraceSamples.from_function(
        lambda t: tree_sum(np.exp(-t * new) - np.exp(-t * ref)),
        dimension_n=0,
        step=1.0,
        gap=gap,
        label="ratio",
    )
    return zeta_from_trace(samples, fit_small_time(samples, 6), t0)


def dump_trace_csv(
    path: Path, samples: HeatTraceSamples, expansion: Optional[AsymptoticExpansion] = None
) -> int:
    """Write (t, trace, singular_fit) rows for the sampled trace. Returns the row count."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["t", "trace", "singular_fit"])
        for t, value in zip(samples.t_grid, samples.values):
            fitted = float(expansion.singular_value(t)) if expansion is not None else math.nan
            writer.writerow([f"{t:.16e}", f"{value:.16e}", f"{fitted:.16e}"])
    logger.debug(f"Wrote {samples.t_grid.size} trace rows to {path}")
    return int(samples.t_grid.size)
