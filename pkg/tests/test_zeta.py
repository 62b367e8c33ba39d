"""Tests for the split-Mellin engine and Fredholm determinants."""

import csv
import math

import numpy as np
import pytest

from src.errors import ConfigError, DomainError, InvertibilityError
from src.zeta import (
    EtaResult,
    HeatTraceSamples,
    ZetaResult,
    det_zeta_dirac,
    dump_trace_csv,
    duhamel_derivative,
    eta_from_spectrum,
    fit_small_time,
    fredholm_det,
    large_time_tail_bound,
    log_det_ratio,
    nearest_integer_residue,
    zeta_from_trace,
)


def _theta_circle(t: float) -> float:
    """Σ_{j∈ℤ} e^{−tj²}, by Poisson summation below t = 1."""
    if t < 1.0:
        k = np.arange(1, 11, dtype=np.float64)
        images = float(np.sum(np.exp(-(math.pi**2) * k**2 / t)))
        return math.sqrt(math.pi / t) * (1.0 + 2.0 * images)
    j = np.arange(1, 41, dtype=np.float64)
    return 1.0 + 2.0 * float(np.sum(np.exp(-t * j**2)))


class TestHeatTraceSamples:
    """Tests for sampling and grid validation."""

    def test_grid_must_span_range(self):
        with pytest.raises(ConfigError):
            HeatTraceSamples(lambda t: 1.0, np.logspace(-3, 2, 50), dimension_n=1)

    def test_nonpositive_gap(self):
        with pytest.raises(InvertibilityError):
            HeatTraceSamples.from_function(lambda t: 1.0, dimension_n=0, gap=0.0)

    def test_zero_eigenvalue(self):
        with pytest.raises(InvertibilityError):
            HeatTraceSamples.from_spectrum(np.array([0.0, 1.0]))

    def test_dump_trace_csv(self, tmp_path, dirichlet_eigenvalues):
        samples = HeatTraceSamples.from_spectrum(dirichlet_eigenvalues, dimension_n=1, step=0.5)
        expansion = fit_small_time(samples, 6)
        path = tmp_path / "trace.csv"
        rows = dump_trace_csv(path, samples, expansion)
        with path.open() as f:
            lines = list(csv.reader(f))
        assert rows == samples.t_grid.size
        assert lines[0] == ["t", "trace", "singular_fit"]
        assert len(lines) == rows + 1


class TestFitSmallTime:
    """Tests for the small-time least-squares fit."""

    def test_dirichlet_coefficients(self, dirichlet_eigenvalues):
        """Σ e^{−tj²} = √π/(2√t) − 1/2 + exponentially small."""
        samples = HeatTraceSamples.from_spectrum(dirichlet_eigenvalues, dimension_n=1, step=0.5)
        expansion = fit_small_time(samples, 6)
        assert expansion.coefficient(-0.5) == pytest.approx(0.5 * math.sqrt(math.pi), abs=1e-6)
        assert expansion.coefficient(0.0) == pytest.approx(-0.5, abs=1e-6)
        assert not expansion.pure_exponential

    def test_order_must_be_positive(self, dirichlet_eigenvalues):
        samples = HeatTraceSamples.from_spectrum(dirichlet_eigenvalues, dimension_n=1, step=0.5)
        with pytest.raises(DomainError):
            fit_small_time(samples, 0)


class TestZetaFromTrace:
    """Tests for ζ(0) and ζ'(0) against closed-form determinants."""

    def test_dirichlet_interval(self, dirichlet_eigenvalues):
        """−d²/dx² on [0, π]: det_ζ = 2π, ζ(0) = −1/2."""
        samples = HeatTraceSamples.from_spectrum(dirichlet_eigenvalues, dimension_n=1, step=0.5)
        result = zeta_from_trace(samples, fit_small_time(samples, 6))
        assert result.zeta_at_0 == pytest.approx(-0.5, abs=1e-6)
        assert result.det_zeta == pytest.approx(2.0 * math.pi, rel=1e-6)
        assert result.log_det == pytest.approx(-result.zeta_prime_at_0)

    @pytest.mark.parametrize("t0", [0.5, 1.0, 2.0])
    def test_split_point_independent(self, dirichlet_eigenvalues, t0):
        samples = HeatTraceSamples.from_spectrum(dirichlet_eigenvalues, dimension_n=1, step=0.5)
        result = zeta_from_trace(samples, fit_small_time(samples, 6), t0)
        assert result.log_det == pytest.approx(math.log(2.0 * math.pi), abs=1e-6)

    def test_massive_dirichlet_interval(self):
        """−d²/dx² + 1 on [0, π]: det_ζ = 2 sinh π."""
        j = np.arange(1, 801, dtype=np.float64)
        samples = HeatTraceSamples.from_function(
            lambda t: float(np.sum(np.exp(-t * j**2))), dimension_n=1, step=0.5, mass=1.0, gap=2.0
        )
        result = zeta_from_trace(samples, fit_small_time(samples, 6))
        assert result.zeta_at_0 == pytest.approx(-0.5, abs=1e-6)
        assert result.log_det == pytest.approx(math.log(2.0 * math.sinh(math.pi)), abs=1e-6)

    def test_massive_circle(self):
        """−d²/dx² + 1 on the circle of length 2π: det_ζ = (2 sinh π)², ζ(0) = 0."""
        samples = HeatTraceSamples.from_function(
            _theta_circle, dimension_n=1, step=1.0, mass=1.0, gap=1.0
        )
        result = zeta_from_trace(samples, fit_small_time(samples, 4))
        assert result.zeta_at_0 == pytest.approx(0.0, abs=1e-6)
        assert result.log_det == pytest.approx(2.0 * math.log(2.0 * math.sinh(math.pi)), abs=1e-6)

    def test_massive_unit_interval(self):
        """−d²/dx² + 1 on [0, 1]: det_ζ = 2 sinh 1, ζ(0) = −1/2."""
        k = (math.pi * np.arange(1, 801, dtype=np.float64)) ** 2
        samples = HeatTraceSamples.from_function(
            lambda t: float(np.sum(np.exp(-t * k))),
            dimension_n=1,
            step=0.5,
            mass=1.0,
            gap=math.pi**2 + 1.0,
        )
        result = zeta_from_trace(samples, fit_small_time(samples, 6))
        assert result.zeta_at_0 == pytest.approx(-0.5, abs=1e-6)
        assert result.log_det == pytest.approx(math.log(2.0 * math.sinh(1.0)), abs=1e-6)

    def test_massive_circle_of_length_two(self):
        """−d²/dx² + 1 on the circle of length 2: det_ζ = 4 sinh² 1, ζ(0) = 0."""
        samples = HeatTraceSamples.from_function(
            lambda t: _theta_circle(math.pi**2 * t), dimension_n=1, step=1.0, mass=1.0, gap=1.0
        )
        result = zeta_from_trace(samples, fit_small_time(samples, 4))
        assert result.zeta_at_0 == pytest.approx(0.0, abs=1e-6)
        assert result.log_det == pytest.approx(2.0 * math.log(2.0 * math.sinh(1.0)), abs=1e-6)

    def test_split_point_outside_grid(self, dirichlet_eigenvalues):
        samples = HeatTraceSamples.from_spectrum(dirichlet_eigenvalues, dimension_n=1, step=0.5)
        with pytest.raises(ConfigError):
            zeta_from_trace(samples, fit_small_time(samples, 6), t0=100.0)

    def test_tail_bound(self):
        assert large_time_tail_bound(2.0, 1.0, 1.0) == pytest.approx(0.5)
        with pytest.raises(InvertibilityError):
            large_time_tail_bound(0.0, 1.0, 1.0)


class TestDuhamel:
    """Tests for the numeric derivative of ln det under rescaling."""

    def test_uniform_rescaling(self, dirichlet_eigenvalues):
        """ln det(e^r Δ) = ln det Δ + r ζ(0), so the slope is ζ(0) = −1/2."""
        slope = duhamel_derivative(dirichlet_eigenvalues, np.ones_like(dirichlet_eigenvalues))
        assert slope == pytest.approx(-0.5, abs=1e-3)


class TestLogDetRatio:
    """Tests for ln det_ζ of a trace-class multiplicative perturbation."""

    def test_matches_fredholm(self, dirichlet_eigenvalues):
        """ln det_ζ(Δe^α) − ln det_ζ Δ = ln det(e^α) for α_k = e^{−k}."""
        alpha = np.exp(-np.arange(1, dirichlet_eigenvalues.size + 1, dtype=np.float64))
        ratio = log_det_ratio(dirichlet_eigenvalues, dirichlet_eigenvalues * np.exp(alpha))
        expected = fredholm_det(np.expm1(alpha)).log_modulus
        assert expected == pytest.approx(float(np.sum(alpha)), abs=1e-14)
        assert ratio.log_det == pytest.approx(expected, abs=1e-8)
        assert ratio.zeta_at_0 == pytest.approx(0.0, abs=1e-8)

    def test_separate_determinants(self, dirichlet_eigenvalues):
        """The same identity from two independent Mellin splits."""
        alpha = 0.3 * np.exp(-0.5 * np.arange(dirichlet_eigenvalues.size, dtype=np.float64))
        results = []
        for lam in (dirichlet_eigenvalues, dirichlet_eigenvalues * np.exp(alpha)):
            samples = HeatTraceSamples.from_spectrum(lam, dimension_n=1, step=0.5)
            results.append(zeta_from_trace(samples, fit_small_time(samples, 6)))
        shift = results[1].log_det - results[0].log_det
        assert shift == pytest.approx(fredholm_det(np.expm1(alpha)).log_modulus, abs=2e-6)

    def test_unchanged_spectrum(self, dirichlet_eigenvalues):
        assert log_det_ratio(dirichlet_eigenvalues, dirichlet_eigenvalues).log_det == 0.0

    def test_shape_mismatch(self, dirichlet_eigenvalues):
        with pytest.raises(DomainError):
            log_det_ratio(dirichlet_eigenvalues, dirichlet_eigenvalues[:-1])

    def test_nonpositive_eigenvalue(self):
        with pytest.raises(InvertibilityError):
            log_det_ratio(np.array([1.0, 4.0]), np.array([-1.0, 4.0]))


class TestEta:
    """Tests for η(0) from spectra."""

    def test_symmetric_spectrum(self):
        lam = np.arange(1, 50, dtype=np.float64)
        assert eta_from_spectrum(np.concatenate([lam, -lam])).eta_at_0 == 0.0

    def test_symmetric_spectrum_integrated(self):
        """Without the pairing shortcut the integral still cancels."""
        lam = np.arange(1, 50, dtype=np.float64)
        result = eta_from_spectrum(np.concatenate([lam, -lam]), pairing_shortcut=False)
        assert abs(result.eta_at_0) <= 1e-10 + result.error_estimate

    @pytest.mark.parametrize("c", [0.3, 0.5, 0.8])
    def test_shifted_lattice(self, c):
        """{j + c : j ∈ ℤ} has η(0) = 1 − 2c."""
        lam = np.arange(-400, 400, dtype=np.float64) + c
        result = eta_from_spectrum(lam)
        assert result.eta_at_0 == pytest.approx(1.0 - 2.0 * c, abs=1e-6)

    def test_finite_counts_signs(self):
        assert eta_from_spectrum(np.array([1.0, 2.0, -3.0]), finite=True).eta_at_0 == 1.0

    def test_zero_eigenvalue(self):
        with pytest.raises(DomainError):
            eta_from_spectrum(np.array([0.0, 1.0]))

    def test_too_short(self):
        with pytest.raises(DomainError):
            eta_from_spectrum(np.array([1.0, -2.0, 3.0]))

    @pytest.mark.parametrize("x,expected", [(2.3, 0.3), (-0.7, 0.3), (1.0, 0.0)])
    def test_nearest_integer_residue(self, x, expected):
        assert nearest_integer_residue(x) == pytest.approx(expected, abs=1e-14)


class TestDiracDeterminant:
    """Tests for the first-order determinant phase."""

    def test_phase_branch(self):
        zeta = ZetaResult(1.0, 0.0, 1.0, 0.0, 1.0)
        assert det_zeta_dirac(zeta, EtaResult(0.0, 0.0)) == pytest.approx(1j)

    def test_modulus(self):
        zeta = ZetaResult(0.0, -2.0 * math.log(3.0), 9.0, 0.0, 1.0)
        assert det_zeta_dirac(zeta, EtaResult(0.0, 0.0)) == pytest.approx(3.0)


class TestFredholm:
    """Tests for diagonal Fredholm determinants."""

    def test_empty_is_one(self):
        assert fredholm_det([]).value == 1.0

    def test_product(self):
        result = fredholm_det([0.5, -0.5])
        assert result.value == pytest.approx(0.75)
        assert not result.singular

    def test_phase(self):
        result = fredholm_det([1j])
        assert result.phase == pytest.approx(math.pi / 4)
        assert result.log_modulus == pytest.approx(0.5 * math.log(2.0))

    def test_singular(self):
        result = fredholm_det([0.1, -1.0, 0.2])
        assert result.singular
        assert result.singular_index == 1
        assert result.value == 0.0

    def test_not_finite(self):
        with pytest.raises(DomainError):
            fredholm_det([float("nan")])

    @pytest.mark.parametrize("seed", range(100))
    def test_multiplicative(self, seed):
        """det(I + A)·det(I + B) = det((I + A)(I + B)) for small diagonal A, B."""
        rng = np.random.default_rng(seed)
        a = 0.4 * (rng.uniform(-1.0, 1.0, 20) + 1j * rng.uniform(-1.0, 1.0, 20)) / math.sqrt(2.0)
        b = 0.4 * (rng.uniform(-1.0, 1.0, 20) + 1j * rng.uniform(-1.0, 1.0, 20)) / math.sqrt(2.0)
        left, right = fredholm_det(a), fredholm_det(b)
        both = fredholm_det(a + b + a * b)
        assert both.log_modulus == pytest.approx(left.log_modulus + right.log_modulus, abs=1e-12)
        assert both.phase == pytest.approx(left.phase + right.phase, abs=1e-12)
        assert both.value == pytest.approx(left.value * right.value, rel=1e-12)

    def test_tiny_deviation_keeps_precision(self):
        result = fredholm_det([1e-17])
        assert result.log_modulus == pytest.approx(1e-17, rel=1e-12)
        assert result.phase == 0.0
