"""Tests for boundary projections, secular solvers and Grassmannian points."""

import math

import numpy as np
import pytest

from src.boundary import (
    BoundaryProjection,
    Component,
    GrassmannPoint,
    ModeProblem,
    ProjectionKind,
    Topology,
    assemble_zeta_inputs,
    bisect_brackets,
    calderon_graph,
    canonical_determinant,
    check_projection,
    component_log_det,
    component_roots,
    eta_variation_formula,
    line_to_graph,
    log_det_mode_split,
    mode_spectrum,
    propagated_graph,
    scattering_block,
    solve_first_order,
    twist_defect,
)
from src.errors import BracketError, DomainError, InvertibilityError
from src.spectral import ModePair


class TestBoundaryProjection:
    """Tests for per-mode line conditions."""

    def test_aps_lines(self):
        assert BoundaryProjection.aps_pos().line_angle(0) == 0.0
        assert BoundaryProjection.aps_neg().line_angle(3) == pytest.approx(0.5 * math.pi)

    def test_rotated_lines(self):
        """A phase θ turns the line by −θ/2 on the listed modes only."""
        bp = BoundaryProjection.rotated("aps_pos", [0.5 * math.pi])
        assert bp.phase(0) == pytest.approx(0.5 * math.pi)
        assert bp.line_angle(0) == pytest.approx(0.75 * math.pi)
        assert bp.line_angle(1) == 0.0
        assert bp.perturbed_modes == 1

    def test_sigma_lines(self):
        bp = BoundaryProjection.sigma(1, [0.25 * math.pi])
        assert bp.line_angle(0) == pytest.approx(0.25 * math.pi)
        assert bp.phase(0) == pytest.approx(-0.5 * math.pi)
        assert bp.line_angle(1) == 0.0

    def test_sigma_angle_count(self):
        with pytest.raises(DomainError):
            BoundaryProjection.sigma(2, [0.1])

    def test_complement(self):
        assert BoundaryProjection.aps_pos().complement() == BoundaryProjection.aps_neg()
        bp = BoundaryProjection.rotated("aps_pos", [0.7, 0.2])
        comp = bp.complement()
        for k in range(3):
            assert np.allclose(bp.per_mode_matrix(k) + comp.per_mode_matrix(k), np.eye(2))

    @pytest.mark.parametrize(
        "bp",
        [
            BoundaryProjection(ProjectionKind.CHIRAL_PLUS),
            BoundaryProjection.aps_neg(),
            BoundaryProjection.rotated("aps_pos", [0.3, -1.2, 2.0]),
            BoundaryProjection.sigma(2, [0.1, 1.4]),
        ],
    )
    def test_projection_algebra(self, bp):
        assert check_projection(bp, 4) <= 1e-12

    @pytest.mark.parametrize("seed", range(100))
    def test_random_projection_algebra(self, seed):
        rng = np.random.default_rng(seed)
        phases = rng.uniform(-math.pi, math.pi, 5)
        angles = rng.uniform(0.0, math.pi, 3)
        assert check_projection(BoundaryProjection.rotated("aps_pos", phases), 6) <= 1e-12
        assert check_projection(BoundaryProjection.sigma(3, angles), 4) <= 1e-12

    def test_line_angle_needs_line_condition(self):
        with pytest.raises(DomainError):
            BoundaryProjection(ProjectionKind.DIRICHLET).line_angle(0)

    def test_rejects_nonfinite_phase(self):
        with pytest.raises(DomainError):
            BoundaryProjection.rotated("aps_pos", [float("inf")])


class TestFirstOrderSecular:
    """Tests for the first-order segment spectrum."""

    def test_own_aps_is_symmetric(self):
        roots = solve_first_order(1.0, 1.0, 0.0, 0.5 * math.pi, 20.0).values
        assert np.allclose(np.sort(roots), np.sort(-roots), atol=1e-9)

    def test_own_aps_matches_components(self):
        """Positive roots square to μ² + k² over the D/R component."""
        roots = solve_first_order(1.0, 1.0, 0.0, 0.5 * math.pi, 20.0).values
        positive = np.sort(roots[roots > 0])
        k = component_roots(Component("dirichlet", "robin", 1.0, 1.0), math.sqrt(399.0))
        assert positive.size == k.size
        assert np.allclose(positive, np.sqrt(1.0 + k**2), rtol=1e-9)

    def test_zero_mode(self):
        """Both ends on Π_< leave e^{−μu} in the kernel."""
        with pytest.raises(InvertibilityError):
            solve_first_order(1.0, 1.0, 0.5 * math.pi, 0.5 * math.pi, 10.0)

    def test_reversed_aps_has_small_eigenvalues(self):
        """Lines (π/2, 0) carry ±λ with λ ≈ 2μe^{−μR}."""
        roots = solve_first_order(1.0, 4.0, 0.5 * math.pi, 0.0, 5.0).values
        assert float(np.min(np.abs(roots))) == pytest.approx(2.0 * math.exp(-4.0), rel=1e-2)

    def test_reversed_aps_long_segment_is_numerically_singular(self):
        with pytest.raises(InvertibilityError):
            solve_first_order(1.0, 16.0, 0.5 * math.pi, 0.0, 5.0)

    def test_bracket_without_sign_change(self):
        with pytest.raises(BracketError):
            bisect_brackets(lambda x: x**2 + 1.0, np.array([0.0]), np.array([1.0]))

    def test_mode_spectrum_order(self):
        """First-order spectra come ordered by |λ|, negative first."""
        problem = ModeProblem(
            ModePair(1.0),
            1.0,
            BoundaryProjection.aps_pos(),
            BoundaryProjection.aps_neg(),
            operator_order=1,
        )
        values = mode_spectrum(problem, 4)
        assert values[0] < 0
        assert values[0] == pytest.approx(-values[1], rel=1e-10)
        assert abs(values[0]) > 1.0

    def test_second_order_dirichlet(self):
        dirichlet = BoundaryProjection(ProjectionKind.DIRICHLET)
        problem = ModeProblem(ModePair(1.0), 1.0, dirichlet, dirichlet)
        values = mode_spectrum(problem, 3)
        expected = [1.0 + math.pi**2, 1.0 + math.pi**2, 1.0 + 4.0 * math.pi**2]
        assert values == pytest.approx(expected, rel=1e-12)

    def test_segment_needs_both_ends(self):
        with pytest.raises(DomainError):
            ModeProblem(ModePair(1.0), 1.0, BoundaryProjection.aps_pos())


class TestComponents:
    """Tests for scalar components of second-order problems."""

    @pytest.mark.parametrize(
        "left,right",
        [("dirichlet", "dirichlet"), ("neumann", "neumann"), ("dirichlet", "robin")],
    )
    def test_closed_roots_match_generic(self, left, right):
        comp = Component(left, right, 0.7, 1.3)
        closed = component_roots(comp, 30.3)
        generic = component_roots(comp, 30.3, force_generic=True)
        assert closed.size == generic.size
        assert np.allclose(closed, generic, atol=1e-9)

    def test_circle_mismatch(self):
        with pytest.raises(DomainError):
            Component("circle", "dirichlet", 1.0, 1.0)

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "comp",
        [
            Component("dirichlet", "dirichlet", 1.0, 1.0),
            Component("dirichlet", "robin", 1.0, 1.0),
            Component("circle", "circle", 1.0, 2.0),
        ],
    )
    def test_zeta_matches_closed_form(self, comp):
        numeric = component_log_det(comp, "zeta")
        closed = component_log_det(comp, "closed")
        assert numeric.value == pytest.approx(closed.value, abs=1e-5)

    def test_unknown_method(self):
        with pytest.raises(DomainError):
            component_log_det(Component("dirichlet", "dirichlet", 1.0, 1.0), "spectral")


class TestGrassmannPoint:
    """Tests for Grassmannian points and the canonical determinant."""

    @pytest.mark.parametrize("theta", [0.3, 1.0, 2.5])
    def test_canonical_modulus(self, theta):
        """|(1 + e^{−iθ})/2|² = cos²(θ/2)."""
        det = canonical_determinant(GrassmannPoint((theta,)))
        assert abs(det.value) ** 2 == pytest.approx(math.cos(0.5 * theta) ** 2, rel=1e-12)

    def test_canonical_singular(self):
        assert canonical_determinant(GrassmannPoint((math.pi,))).singular

    def test_twist_conjugates_reference(self):
        assert twist_defect(GrassmannPoint((0.4, 1.1, -2.0))) < 1e-12

    @pytest.mark.parametrize("seed", range(100))
    def test_random_points(self, seed):
        """Twist defect vanishes and |det|² = ∏ cos²(θ_k/2) at random points."""
        rng = np.random.default_rng(seed)
        thetas = rng.uniform(-3.0, 3.0, 4)
        point = GrassmannPoint(tuple(float(th) for th in thetas))
        expected = float(np.prod(np.cos(0.5 * thetas) ** 2))
        assert twist_defect(point) < 1e-12
        assert abs(canonical_determinant(point).value) ** 2 == pytest.approx(expected, rel=1e-10)

    def test_geometric(self):
        point = GrassmannPoint.geometric(1.0, 3)
        assert point.thetas == pytest.approx((1.0, math.exp(-1.0), math.exp(-2.0)))

    def test_from_projection(self):
        bp = BoundaryProjection.rotated("aps_pos", [0.3, 0.4])
        assert GrassmannPoint.from_projection(bp, 3).thetas == (0.3, 0.4, 0.0)

    def test_rejects_nonfinite(self):
        with pytest.raises(DomainError):
            GrassmannPoint((float("nan"),))

    def test_rejects_nonunitary_reference(self):
        with pytest.raises(DomainError):
            GrassmannPoint((0.1,), reference=(2.0,))

    def test_calderon_graph_side(self, mode_pair):
        with pytest.raises(DomainError):
            calderon_graph(mode_pair, "up")

    @pytest.mark.parametrize("mu", [0.25, 1.0, 3.0, 40.0])
    def test_calderon_graph_is_aps(self, mu):
        """Decaying Cauchy data on [0, ∞) span the Π_> line, on (−∞, 0] the Π_< line."""
        right = line_to_graph(BoundaryProjection.aps_pos().line_angle(0))
        left = line_to_graph(BoundaryProjection.aps_neg().line_angle(0))
        assert calderon_graph(ModePair(mu), "right") == pytest.approx(right, abs=1e-12)
        assert calderon_graph(ModePair(mu), "left") == pytest.approx(left, abs=1e-12)


class TestScatteringBlock:
    """Tests for the half-model scattering block."""

    def test_propagated_graph_is_aps(self):
        assert propagated_graph(1.0, 2.0) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("R", [0.5, 4.0])
    def test_matches_canonical(self, R):
        point = GrassmannPoint((0.4, 0.9))
        blocks = scattering_block(point, R, np.array([1.0, 2.0]))
        expected = canonical_determinant(point).value
        assert complex(np.prod(blocks)) == pytest.approx(expected, abs=1e-12)

    def test_needs_one_mu_per_mode(self):
        with pytest.raises(DomainError):
            scattering_block(GrassmannPoint((0.4, 0.9)), 1.0, np.array([1.0]))


class TestEtaVariation:
    def test_formula(self):
        """−(1/π)·(∫γ')·Σθ with ∫γ' = −1."""
        assert eta_variation_formula([0.3, 0.2]) == pytest.approx(0.5 / math.pi, rel=1e-8)

    def test_geometric_thetas(self):
        """θ_k = e^{−k}: the shift is Σθ/π = e/((e − 1)π) in the limit."""
        thetas = GrassmannPoint.geometric(1.0, 40).thetas
        expected = math.e / ((math.e - 1.0) * math.pi)
        assert eta_variation_formula(thetas) == pytest.approx(expected, rel=1e-12)

    def test_profile_independent(self):
        linear = eta_variation_formula([0.7, -0.1], profile=lambda u: 1.0 - u)
        assert linear == pytest.approx(eta_variation_formula([0.7, -0.1]), rel=1e-14)

    def test_rejects_bad_profile(self):
        with pytest.raises(DomainError):
            eta_variation_formula([0.3], profile=lambda u: 1.0)


class TestModeSplit:
    """Tests for the mode-split log det."""

    def _circle(self, R):
        return ModeProblem(ModePair(1.0), R, topology=Topology.CIRCLE)

    def _dirichlet(self, R):
        dirichlet = BoundaryProjection(ProjectionKind.DIRICHLET)
        return ModeProblem(ModePair(1.0), R, dirichlet, dirichlet)

    def _aps(self, R):
        return ModeProblem(
            ModePair(1.0), R, BoundaryProjection.aps_pos(), BoundaryProjection.aps_neg()
        )

    def test_dirichlet_ratio_closed(self, unit_spectrum):
        """Circle over two Dirichlet halves leaves exactly det_ζ B² = (2π)²."""
        closed = log_det_mode_split(unit_spectrum, self._circle(1.0), 16, "closed")
        piece = log_det_mode_split(unit_spectrum, self._dirichlet(1.0), 16, "closed")
        assert math.exp(closed.log_det - 2.0 * piece.log_det) == pytest.approx(
            4.0 * math.pi**2, rel=1e-9
        )

    def test_aps_ratio_closed(self, unit_spectrum):
        """With μ_k = k + 1 the own-APS ratio is 4·∏(1 − e^{−2μR})⁴."""
        R = 1.0
        closed = log_det_mode_split(unit_spectrum, self._circle(R), 16, "closed")
        piece = log_det_mode_split(unit_spectrum, self._aps(R), 16, "closed")
        mu = np.arange(1, 17, dtype=np.float64)
        expected = 4.0 * float(np.prod((1.0 - np.exp(-2.0 * mu * R)) ** 4))
        assert math.exp(closed.log_det - 2.0 * piece.log_det) == pytest.approx(expected, rel=1e-10)

    def test_coupled_ends_rejected(self, unit_spectrum):
        rotated = BoundaryProjection.rotated("aps_pos", [0.5])
        template = ModeProblem(ModePair(1.0), 1.0, rotated, BoundaryProjection.aps_neg())
        with pytest.raises(DomainError):
            log_det_mode_split(unit_spectrum, template, 8, "closed")

    @pytest.mark.slow
    def test_zeta_matches_closed(self, unit_spectrum):
        numeric = log_det_mode_split(unit_spectrum, self._dirichlet(1.0), 8, "zeta")
        closed = log_det_mode_split(unit_spectrum, self._dirichlet(1.0), 8, "closed")
        assert numeric.log_det == pytest.approx(closed.log_det, abs=1e-4)
        assert numeric.modes_numeric == 8


class TestAssembledTrace:
    """Tests for the assembled two-dimensional heat trace."""

    @pytest.mark.parametrize("t", [0.02, 0.3])
    def test_double_sum(self, finite_spectrum, t):
        """Σ_k mult_k Σ_λ e^{−tλ²} over each mode's first-order segment spectrum."""
        left = BoundaryProjection.rotated("aps_pos", [0.7])
        right = BoundaryProjection.aps_neg()
        template = ModeProblem(ModePair(1.0), 1.0, left, right)
        samples = assemble_zeta_inputs(finite_spectrum, template, mode_cutoff=2)

        expected = 0.0
        for k, (mu, mult) in enumerate([(1.0, 1), (2.0, 2)]):
            roots = solve_first_order(mu, 1.0, left.line_angle(k), right.line_angle(k), 60.0)
            expected += mult * float(np.sum(np.exp(-t * roots.values**2)))
        assert samples.trace_fn(t) == pytest.approx(expected, rel=1e-9)

    def test_needs_second_order(self, finite_spectrum):
        template = ModeProblem(
            ModePair(1.0),
            1.0,
            BoundaryProjection.aps_pos(),
            BoundaryProjection.aps_neg(),
            operator_order=1,
        )
        with pytest.raises(DomainError):
            assemble_zeta_inputs(finite_spectrum, template, mode_cutoff=2)
