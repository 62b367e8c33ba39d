"""Tangential operator B as a spectral datum.

B never acts on a discretized manifold. It is stored as the positive half of a
symmetric spectrum {±mu_k} with multiplicities, together with the action of the
Clifford element G on each (phi, G phi) mode pair.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from scipy.special import erfc

from src.errors import DomainError, InvertibilityError, PoleError
from .hurwitz import hurwitz_zeta
from .summation import tree_sum

logger = logging.getLogger(__name__)

DEFAULT_CUTOFF = 64


@dataclass(frozen=True)
class ArithmeticGenerator:
    """mu_k = a + k*d for k >= 0, every mode with the same multiplicity."""

    a: float
    d: float
    multiplicity: int = 1

    def __post_init__(self):
        if self.a <= 0 or self.d <= 0:
            raise DomainError(
                f"arithmetic spectrum needs a > 0 and d > 0, got a={self.a}, d={self.d}"
            )
        if self.multiplicity < 1:
            raise DomainError(f"multiplicity must be >= 1, got {self.multiplicity}")


@dataclass(frozen=True)
class ExplicitGenerator:
    """A finite list of positive eigenvalues.

    tail_exponent records the power law the caller truncated (mu_k ~ k^p);
    it is bookkeeping only, the spectrum itself is exactly the listed values.
    """

    values: tuple[float, ...]
    multiplicities: tuple[int, ...]
    tail_exponent: Optional[float] = None

    def __post_init__(self):
        if not self.values:
            raise DomainError("explicit spectrum must list at least one eigenvalue")
        if len(self.values) != len(self.multiplicities):
            raise DomainError("explicit spectrum: values and multiplicities differ in length")
        if any(v <= 0 for v in self.values):
            raise DomainError(f"explicit spectrum must be strictly positive, got {self.values}")
        if any(b < a for a, b in zip(self.values, self.values[1:])):
            raise DomainError(f"explicit spectrum must be nondecreasing, got {self.values}")
        if any(m < 1 for m in self.multiplicities):
            raise DomainError(f"multiplicities must be >= 1, got {self.multiplicities}")


Generator = Union[ArithmeticGenerator, ExplicitGenerator]


@dataclass(frozen=True)
class TangentialSpectrum:
    """Symmetric spectrum of B, stored through its positive half."""

    generator: Generator
    kernel_dimension: int = 0

    def __post_init__(self):
        if self.kernel_dimension < 0:
            raise DomainError(f"kernel_dimension must be >= 0, got {self.kernel_dimension}")

    @classmethod
    def arithmetic(cls, a: float, d: float, multiplicity: int = 1) -> "TangentialSpectrum":
        return cls(ArithmeticGenerator(float(a), float(d), int(multiplicity)))

    @classmethod
    def explicit(
        cls,
        values: list[float],
        multiplicities: Optional[list[int]] = None,
        tail_exponent: Optional[float] = None,
    ) -> "TangentialSpectrum":
        values = tuple(float(v) for v in values)
        mults = tuple(int(m) for m in multiplicities) if multiplicities else (1,) * len(values)
        return cls(ExplicitGenerator(values, mults, tail_exponent))

    @property
    def is_finite(self) -> bool:
        return isinstance(self.generator, ExplicitGenerator)

    @property
    def is_invertible(self) -> bool:
        return self.kernel_dimension == 0

    def require_invertible(self) -> None:
        if not self.is_invertible:
            raise InvertibilityError(
                f"B has a {self.kernel_dimension}-dimensional kernel; determinant experiments "
                f"need an invertible tangential operator"
            )

    def mode_count(self, cutoff: Optional[int] = None) -> int:
        if self.is_finite:
            n = len(self.generator.values)
            return n if cutoff is None else min(n, cutoff)
        return DEFAULT_CUTOFF if cutoff is None else cutoff

    def modes(self, cutoff: Optional[int] = None) -> tuple[np.ndarray, np.ndarray]:
        """First `cutoff` positive eigenvalues and their multiplicities."""
        count = self.mode_count(cutoff)
        gen = self.generator
        if isinstance(gen, ArithmeticGenerator):
            mu = gen.a + gen.d * np.arange(count, dtype=np.float64)
            mult = np.full(count, gen.multiplicity, dtype=np.int64)
        else:
            mu = np.asarray(gen.values[:count], dtype=np.float64)
            mult = np.asarray(gen.multiplicities[:count], dtype=np.int64)
        return mu, mult

    def positive_eigenvalues(self, cutoff: Optional[int] = None) -> list[tuple[float, int]]:
        mu, mult = self.modes(cutoff)
        return [(float(m), int(k)) for m, k in zip(mu, mult)]

    def full_spectrum(self, cutoff: Optional[int] = None) -> np.ndarray:
        """Signed eigenvalues with multiplicity, as interleaved (+mu, -mu) pairs."""
        mu, mult = self.modes(cutoff)
        repeated = np.repeat(mu, mult)
        out = np.empty(2 * repeated.size, dtype=np.float64)
        out[0::2] = repeated
        out[1::2] = -repeated
        return out

    def doubled(self) -> "TangentialSpectrum":
        """Spectrum of B on Y0 ⊔ Y0 (a two-cut boundary): multiplicities doubled."""
        gen = self.generator
        if isinstance(gen, ArithmeticGenerator):
            new_gen: Generator = ArithmeticGenerator(gen.a, gen.d, 2 * gen.multiplicity)
        else:
            new_gen = ExplicitGenerator(
                gen.values, tuple(2 * m for m in gen.multiplicities), gen.tail_exponent
            )
        return TangentialSpectrum(new_gen, 2 * self.kernel_dimension)

    def mode_pairs(self, cutoff: Optional[int] = None) -> list["ModePair"]:
        mu, _ = self.modes(cutoff)
        return [ModePair(float(m)) for m in mu]

    def describe(self) -> str:
        gen = self.generator
        if isinstance(gen, ArithmeticGenerator):
            return f"arithmetic(a={gen.a:g}, d={gen.d:g}, mult={gen.multiplicity})"
        return f"explicit({list(gen.values)}, mult={list(gen.multiplicities)})"


_G = np.array([[0.0, -1.0], [1.0, 0.0]])


@dataclass(frozen=True)
class ModePair:
    """One (phi, G phi) pair: B = diag(mu, -mu), G = [[0, -1], [1, 0]]."""

    mu: float
    b_matrix: np.ndarray = field(init=False, repr=False, compare=False)
    g_matrix: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.mu > 0:
            raise DomainError(f"mode eigenvalue must be positive, got mu={self.mu}")
        object.__setattr__(self, "b_matrix", np.diag([self.mu, -self.mu]))
        object.__setattr__(self, "g_matrix", _G.copy())

    def algebra_defect(self) -> float:
        """max |G² + I| + max |GB + BG|; zero for every constructed pair."""
        g, b = self.g_matrix, self.b_matrix
        return float(np.max(np.abs(g @ g + np.eye(2))) + np.max(np.abs(g @ b + b @ g)))


def heat_trace_B2(spec: TangentialSpectrum, t: float, cutoff: int = DEFAULT_CUTOFF) -> float:
    """Tr e^{-tB²} = 2 Σ mult·e^{-t mu²} with an Euler–Maclaurin tail for arithmetic spectra."""
    if not t > 0:
        raise DomainError(f"heat trace needs t > 0, got t={t}")
    if cutoff < 1:
        raise DomainError(f"cutoff must be >= 1, got {cutoff}")

    mu, mult = spec.modes(cutoff)
    head = tree_sum(mult * np.exp(-t * mu**2))

    tail = 0.0
    gen = spec.generator
    if isinstance(gen, ArithmeticGenerator):
        start = gen.a + gen.d * cutoff
        f_start = math.exp(-t * start**2)
        integral = math.sqrt(math.pi) / (2.0 * gen.d * math.sqrt(t)) * erfc(math.sqrt(t) * start)
        slope = -2.0 * t * gen.d * start * f_start
        tail = gen.multiplicity * (integral + 0.5 * f_start - slope / 12.0)

    return 2.0 * (head + tail)


def zeta_B2(spec: TangentialSpectrum, s: complex, derivative: int = 0) -> complex:
    """ζ_{B²}(s) = Tr (B²)^{-s}, or its s-derivative.

    Arithmetic spectra use 2·mult·d^{-2s}·ζ_H(2s, a/d); finite spectra the plain sum.

    Raises:
        PoleError: at s = 1/2 for arithmetic spectra (residue mult/d).
        InvertibilityError: when B has a kernel.
    """
    spec.require_invertible()
    s = complex(s)
    gen = spec.generator

    if isinstance(gen, ExplicitGenerator):
        mu, mult = spec.modes()
        log_mu2 = 2.0 * np.log(mu)
        terms = mult * np.exp(-s * log_mu2)
        if derivative:
            terms = -log_mu2 * terms
        return 2.0 * tree_sum(terms.astype(np.complex128))

    q = gen.a / gen.d
    scale = 2.0 * gen.multiplicity * np.exp(-2.0 * s * math.log(gen.d))
    try:
        value = hurwitz_zeta(2.0 * s, q)
        if not derivative:
            return complex(scale * value)
        slope = hurwitz_zeta(2.0 * s, q, derivative=1)
    except PoleError as e:
        raise PoleError(
            f"ζ_B² has a pole at s = 1/2 for {spec.describe()}",
            residue=gen.multiplicity / gen.d,
        ) from e
    return complex(scale * (-2.0 * math.log(gen.d) * value + 2.0 * slope))


def det_zeta_B2(spec: TangentialSpectrum) -> float:
    """det_ζ B² = exp(-ζ'_{B²}(0)); Π mu^{4·mult} for finite spectra."""
    spec.require_invertible()
    if spec.is_finite:
        mu, mult = spec.modes()
        return float(np.exp(tree_sum(4.0 * mult * np.log(mu))))
    return float(np.exp(-zeta_B2(spec, 0.0, derivative=1).real))
