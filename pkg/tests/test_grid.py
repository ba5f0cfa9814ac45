import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bogolib.errors import ConfigurationError, DegeneracyError, DimensionMismatchError
from bogolib.grid import (
    ComplexField,
    apply_kinetic,
    build_grid,
    inner_product,
    kinetic_matrix,
    norm,
    orthonormalize,
)

TWO_PI = 2.0 * np.pi


def random_field(grid, rng):
    values = rng.standard_normal(grid.n_points) + 1j * rng.standard_normal(grid.n_points)
    return ComplexField(values, grid)


class TestBuildGrid:
    def test_periodic_points_and_wavenumbers(self):
        grid = build_grid(8, TWO_PI, "periodic")
        assert np.allclose(grid.points, np.arange(8) * np.pi / 4)
        assert sorted(grid.wavenumbers) == [-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]

    def test_box_interior_spacing(self):
        grid = build_grid(16, 10.0, "box")
        assert grid.n_points == 16
        assert grid.dx == pytest.approx(10.0 / 17.0, abs=0)
        assert grid.points[0] == pytest.approx(10.0 / 17.0)
        assert grid.points[-1] == pytest.approx(16 * 10.0 / 17.0)

    def test_periodic_requires_power_of_two(self):
        with pytest.raises(ConfigurationError):
            build_grid(12, TWO_PI, "periodic")

    def test_bad_parameters(self):
        with pytest.raises(ConfigurationError):
            build_grid(4, 1.0, "box")
        with pytest.raises(ConfigurationError):
            build_grid(16, -1.0, "box")
        with pytest.raises(ConfigurationError):
            build_grid(16, 1.0, "moebius")


class TestApplyKinetic:
    def test_plane_wave_eigenfunction(self):
        grid = build_grid(32, TWO_PI, "periodic")
        for k in (1.0, 3.0, -5.0):
            f = ComplexField(np.exp(1j * k * grid.points), grid)
            out = apply_kinetic(f)
            assert np.max(np.abs(out.values - 0.5 * k**2 * f.values)) < 1e-12

    def test_constant_maps_to_zero(self):
        grid = build_grid(32, TWO_PI, "periodic")
        out = apply_kinetic(ComplexField(np.full(32, 2.0 + 1j), grid))
        assert np.max(np.abs(out.values)) < 1e-13

    def test_box_sine_against_analytic_second_derivative(self):
        # Oracle: -1/2 (d^2/dx^2) sin(2 pi x / L) = (1/2)(2 pi / L)^2 sin(2 pi x / L).
        grid = build_grid(64, 10.0, "box")
        f = ComplexField(np.sin(2 * np.pi * grid.points / 10.0), grid)
        expected = 0.5 * (2 * np.pi / 10.0) ** 2 * f.values
        out = apply_kinetic(f)
        assert np.max(np.abs(out.values - expected)) < 1e-12

    def test_hermitian_and_positive(self):
        rng = np.random.default_rng(7)
        for boundary, length in (("periodic", TWO_PI), ("box", 9.0)):
            grid = build_grid(32, length, boundary)
            for _ in range(20):
                f, g = random_field(grid, rng), random_field(grid, rng)
                lhs = inner_product(f, apply_kinetic(g))
                rhs = np.conj(inner_product(g, apply_kinetic(f)))
                assert abs(lhs - rhs) < 1e-10
                quad = inner_product(f, apply_kinetic(f))
                assert quad.real >= -1e-12

    def test_dense_matrix_matches_operator(self):
        rng = np.random.default_rng(3)
        for boundary in ("periodic", "box"):
            grid = build_grid(16, 5.0, boundary) if boundary == "periodic" else build_grid(16, 5.0, "box")
            f = random_field(grid, rng)
            dense = kinetic_matrix(grid)
            assert np.max(np.abs(dense @ f.values - apply_kinetic(f).values)) < 1e-11
            assert np.max(np.abs(dense - dense.T)) < 1e-12


class TestInnerProduct:
    def test_normalized_gaussian(self):
        grid = build_grid(256, 20.0, "box")
        x = grid.points - grid.center
        g = np.exp(-0.5 * x**2) / np.pi**0.25
        f = ComplexField(g, grid)
        assert abs(inner_product(f, f) - 1.0) < 1e-12

    def test_plane_wave_orthogonality(self):
        grid = build_grid(32, TWO_PI, "periodic")
        f = ComplexField(np.exp(1j * grid.points) / np.sqrt(TWO_PI), grid)
        g = ComplexField(np.exp(3j * grid.points) / np.sqrt(TWO_PI), grid)
        assert abs(inner_product(f, g)) < 1e-14

    def test_linear_ramp_quadrature_vs_analytic(self):
        # Rectangle rule of integral x dx over [0, L]: off from L^2/2 by
        # exactly L dx / 2 on the interior-point grid.
        grid = build_grid(64, 10.0, "box")
        one = ComplexField(np.ones(64), grid)
        ramp = ComplexField(grid.points.astype(complex), grid)
        value = inner_product(one, ramp).real
        assert abs(value - 10.0**2 / 2) == pytest.approx(10.0 * grid.dx / 2, rel=1e-12)

    def test_mismatched_grids_rejected(self):
        f = ComplexField(np.ones(16), build_grid(16, 1.0, "box"))
        g = ComplexField(np.ones(16), build_grid(16, 2.0, "box"))
        with pytest.raises(DimensionMismatchError):
            inner_product(f, g)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_conjugate_symmetry(self, seed):
        rng = np.random.default_rng(seed)
        grid = build_grid(16, 3.0, "box")
        f, g = random_field(grid, rng), random_field(grid, rng)
        assert inner_product(f, g) == pytest.approx(np.conj(inner_product(g, f)), abs=1e-12)


class TestOrthonormalize:
    def test_idempotent_on_orthonormal_set(self):
        grid = build_grid(32, TWO_PI, "periodic")
        waves = [
            ComplexField(np.exp(1j * k * grid.points) / np.sqrt(TWO_PI), grid)
            for k in (1.0, 2.0)
        ]
        out = orthonormalize(waves)
        for before, after in zip(waves, out):
            phase = inner_product(after, before)
            assert np.max(np.abs(before.values - phase * after.values)) < 1e-12

    def test_hand_gram_schmidt(self):
        # {1/sqrt(L), (1 + e^{ikx})/sqrt(2L)}: removing the constant leaves
        # e^{ikx}/sqrt(2L), which normalizes to e^{ikx}/sqrt(L).
        grid = build_grid(32, TWO_PI, "periodic")
        L = TWO_PI
        const = ComplexField(np.full(32, 1 / np.sqrt(L), dtype=complex), grid)
        mixed = ComplexField((1 + np.exp(1j * grid.points)) / np.sqrt(2 * L), grid)
        out = orthonormalize([const, mixed])
        target = np.exp(1j * grid.points) / np.sqrt(L)
        phase = np.vdot(out[1].values, target) * grid.dx
        assert np.max(np.abs(out[1].values * phase - target)) < 1e-12

    def test_degenerate_input_names_index(self):
        grid = build_grid(16, 4.0, "box")
        f = ComplexField(np.sin(np.pi * grid.points / 4.0), grid)
        with pytest.raises(DegeneracyError) as excinfo:
            orthonormalize([f.copy()], against=f)
        assert excinfo.value.index == 0

    def test_gram_identity_and_span(self):
        rng = np.random.default_rng(11)
        grid = build_grid(32, 7.0, "box")
        fields = [random_field(grid, rng) for _ in range(5)]
        against = random_field(grid, rng)
        out = orthonormalize(fields, against=against)
        mat = np.vstack([f.values for f in out])
        gram = mat.conj() @ mat.T * grid.dx
        assert np.max(np.abs(gram - np.eye(5))) < 1e-12
        a_hat = against.values / norm(against)
        for f in out:
            assert abs(np.vdot(a_hat, f.values) * grid.dx) < 1e-12
        # Span check: each input is reproduced by its expansion in the
        # output basis plus its component along `against`.
        for f in fields:
            coeffs = mat.conj() @ f.values * grid.dx
            a_coeff = np.vdot(a_hat, f.values) * grid.dx
            recon = coeffs @ mat + a_coeff * a_hat
            assert np.max(np.abs(recon - f.values)) / np.max(np.abs(f.values)) < 1e-10
