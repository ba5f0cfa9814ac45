import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import bogolib.homogeneous as homogeneous
from bogolib._fock_kernels import (
    NUMBA_AVAILABLE,
    assemble_dense,
    build_index_map,
    numba_enabled,
)
from bogolib.bdg import assemble, diagonalize, plane_wave_basis
from bogolib.errors import ConfigurationError, ResourceError
from bogolib.gpe import solve_stationary, zero_potential
from bogolib.grid import build_grid
from bogolib.homogeneous import (
    _enumerate_states,
    bogoliubov_dispersion,
    compare_asymptotics,
    exact_fock_spectrum,
    fock_hamiltonian_reference,
    hydro_coefficients,
    number_conservation_offblock,
    sound_mode_energy,
)

TWO_PI = 2.0 * np.pi


class TestDispersion:
    def test_free_limit(self):
        assert bogoliubov_dispersion(1.7, 0.0, 5.0) == pytest.approx(0.5 * 1.7**2, abs=0)

    def test_hand_value(self):
        # sqrt(0.5 * (0.5 + 4)) = 1.5 for k = 1, u_tilde = 2, L = 1.
        assert bogoliubov_dispersion(1.0, 2.0, 1.0) == pytest.approx(1.5, abs=1e-15)

    def test_small_k_slope_is_sound_speed(self):
        u_tilde, L = 7.0, 3.0
        v = np.sqrt(u_tilde / L)
        k = 1e-7
        assert bogoliubov_dispersion(k, u_tilde, L) / k == pytest.approx(v, rel=1e-10)

    def test_zero_k_rejected(self):
        with pytest.raises(ConfigurationError):
            bogoliubov_dispersion(0.0, 1.0, 1.0)

    def test_matches_grid_pipeline(self):
        grid = build_grid(32, TWO_PI, "periodic")
        state = solve_stationary(grid, zero_potential(grid), u_tilde=2.0)
        basis = plane_wave_basis(state, 8)
        spec = diagonalize(assemble(state, basis), basis)
        expected = np.sort(
            [bogoliubov_dispersion(s * j, 2.0, TWO_PI) for j in (1, 2, 3, 4) for s in (1, -1)]
        )
        assert np.max(np.abs(spec.energies - expected) / expected) < 1e-8


class TestHydroCoefficients:
    def test_canonical_pair_product(self):
        rng = np.random.default_rng(42)
        for _ in range(1000):
            k = 10.0 ** rng.uniform(-3, 2)
            u = 10.0 ** rng.uniform(-4, 1)
            n = int(rng.integers(1, 10**6))
            vol = 10.0 ** rng.uniform(-1, 3)
            hc = hydro_coefficients(k, u, n, vol)
            assert abs(hc.phi_coeff * hc.rho_coeff - 0.5) < 1e-15

    def test_sound_speed_definition(self):
        hc = hydro_coefficients(0.1, 1.0 / 50, 50, 4.0)
        assert hc.v_sound == pytest.approx(np.sqrt(1.0 / 4.0), abs=1e-15)

    def test_scaling_with_n_at_fixed_u_tilde(self):
        # Doubling N at fixed u_tilde = u N leaves v fixed and rescales the
        # mode amplitudes by 1/sqrt(2) and sqrt(2).
        k, u_tilde, vol = 0.3, 1.0, 5.0
        a = hydro_coefficients(k, u_tilde / 1000, 1000, vol)
        b = hydro_coefficients(k, u_tilde / 2000, 2000, vol)
        assert b.v_sound == pytest.approx(a.v_sound, rel=1e-14)
        assert b.phi_coeff == pytest.approx(a.phi_coeff / np.sqrt(2), rel=1e-14)
        assert b.rho_coeff == pytest.approx(a.rho_coeff * np.sqrt(2), rel=1e-14)

    def test_mode_energy_equals_kv_and_matches_dispersion_at_small_k(self):
        u, n, vol = 2e-3, 1000, 100.0
        u_tilde = u * n
        hc_any = hydro_coefficients(1.0, u, n, vol)
        v = hc_any.v_sound
        for k in (0.01 * v, 0.05 * v):
            hc = hydro_coefficients(k, u, n, vol)
            energy = sound_mode_energy(hc)
            assert energy == pytest.approx(k * v, rel=1e-12)
            eps = bogoliubov_dispersion(k, u_tilde, vol)
            assert abs(energy - eps) / eps < 0.01

    def test_domain_checks(self):
        with pytest.raises(ConfigurationError):
            hydro_coefficients(-1.0, 1.0, 10, 1.0)
        with pytest.raises(ConfigurationError):
            hydro_coefficients(1.0, 0.0, 10, 1.0)

    @settings(max_examples=200, deadline=None)
    @given(
        k=st.floats(1e-4, 1e3),
        u=st.floats(1e-6, 1e2),
        n=st.integers(1, 10**9),
        volume=st.floats(1e-3, 1e4),
    )
    def test_canonical_pair_property(self, k, u, n, volume):
        hc = hydro_coefficients(k, u, n, volume)
        assert abs(hc.phi_coeff * hc.rho_coeff - 0.5) < 1e-15
        assert sound_mode_energy(hc) == pytest.approx(k * hc.v_sound, rel=1e-12)


class TestFockOracle:
    def test_free_gas(self):
        spec = exact_fock_spectrum(10, 1.0, 0.0, 1.0, 10)
        assert spec.ground_energy == pytest.approx(0.0, abs=1e-14)
        assert spec.first_gap == pytest.approx(0.5, abs=1e-14)

    def test_two_particle_hand_diagonalization(self):
        # Zero-momentum sector at N = 2 is the 2x2 matrix
        # [[u/V, sqrt(2) u/V], [sqrt(2) u/V, 2 w + 2 u/V]]  (w = k^2/2).
        u, vol, k = 0.3, 1.0, 1.0
        w = 0.5 * k**2
        hand = np.linalg.eigvalsh(
            np.array([[u / vol, np.sqrt(2) * u / vol], [np.sqrt(2) * u / vol, 2 * w + 2 * u / vol]])
        )
        spec = exact_fock_spectrum(2, k, u, vol, 2)
        assert spec.ground_energy == pytest.approx(hand[0], abs=1e-14)
        assert spec.sector_minima[0] == pytest.approx(hand[0], abs=1e-14)

    def test_every_state_has_fixed_total(self):
        states = _enumerate_states(12, 7)
        assert np.all(states.sum(axis=1) == 12)
        assert np.all(states >= 0)

    def test_kernel_matches_reference(self):
        states = _enumerate_states(6, 6)
        fast = assemble_dense(states, 6, 0.5, 0.15)
        ref = fock_hamiltonian_reference(states, 0.5, 0.15)
        assert np.max(np.abs(fast - ref)) < 1e-12

    def test_numpy_fallback_matches_jit(self, monkeypatch):
        states = _enumerate_states(8, 8)
        default = assemble_dense(states, 8, 0.5, 0.07)
        monkeypatch.setenv("BOGOLIB_DISABLE_NUMBA", "1")
        assert not numba_enabled()
        fallback = assemble_dense(states, 8, 0.5, 0.07)
        assert np.array_equal(default, fallback) or np.max(np.abs(default - fallback)) < 1e-14
        monkeypatch.delenv("BOGOLIB_DISABLE_NUMBA")
        if NUMBA_AVAILABLE:
            assert numba_enabled()

    def test_number_conservation_offblock_zero(self):
        assert number_conservation_offblock(8, 1.0, 0.2, 1.0, 8) == 0.0

    def test_gap_error_shrinks_with_n(self):
        u_tilde = 1.0
        spectra = [exact_fock_spectrum(n, 1.0, u_tilde / n, 1.0, n) for n in (10, 20, 40)]
        report = compare_asymptotics(spectra, u_tilde)
        errs = [row.gap_error for row in report.rows]
        assert errs[0] > errs[1] > errs[2]
        assert 0.5 <= report.fitted_power <= 1.5
        # Error roughly halves per doubling of N.
        for a, b in zip(errs, errs[1:]):
            assert a / b == pytest.approx(2.0, rel=0.3)

    def test_cap_convergence(self):
        a = exact_fock_spectrum(40, 2.0, 1.0 / 40, 1.0, 20)
        b = exact_fock_spectrum(40, 2.0, 1.0 / 40, 1.0, 40)
        assert abs(a.first_gap - b.first_gap) < 1e-8

    def test_free_gas_asymptotics_identically_zero(self):
        spec = exact_fock_spectrum(20, 1.0, 0.0, 1.0, 20)
        report = compare_asymptotics(spec, 0.0)
        assert report.rows[0].gap_error == pytest.approx(0.0, abs=1e-13)
        assert report.rows[0].ground_error == pytest.approx(0.0, abs=1e-13)

    def test_ground_prediction_validates_omega_g_formula(self):
        # Restricting the grid pipeline to one +-k pair, the Fock-oracle
        # ground prediction (u/2V) N (N-1) + eps - e_k - u_tilde/V must
        # equal N h1 + omega_g: the pair zero-point shift is omega_g - E3,
        # and E3 = -u_tilde/(2V) converts N h1 into the N(N-1) c-number.
        L, u_tilde, n = TWO_PI, 2.0, 37
        grid = build_grid(32, L, "periodic")
        state = solve_stationary(grid, zero_potential(grid), u_tilde=u_tilde)
        basis = plane_wave_basis(state, 2)
        qh = assemble(state, basis)
        spec = diagonalize(qh, basis)
        k = TWO_PI / L
        e_k = 0.5 * k**2
        eps = bogoliubov_dispersion(k, u_tilde, L)
        assert spec.omega_g - qh.e3 == pytest.approx(eps - e_k - u_tilde / L, abs=1e-12)
        h1_uniform = 0.5 * u_tilde / L
        ground_pred = 0.5 * (u_tilde / n / L) * n * (n - 1) + eps - e_k - u_tilde / L
        assert ground_pred == pytest.approx(n * h1_uniform + spec.omega_g, abs=1e-12)

    def test_parameter_validation(self):
        with pytest.raises(ConfigurationError):
            exact_fock_spectrum(61, 1.0, 0.1, 1.0, 10)
        with pytest.raises(ConfigurationError):
            exact_fock_spectrum(10, 1.0, 0.1, 1.0, 11)
        with pytest.raises(ConfigurationError):
            exact_fock_spectrum(10, 0.0, 0.1, 1.0, 10)

    def test_resource_guard(self, monkeypatch):
        monkeypatch.setattr(homogeneous, "MAX_FOCK_STATES", 10)
        with pytest.raises(ResourceError):
            exact_fock_spectrum(30, 1.0, 0.1, 1.0, 30)

    def test_mismatched_u_tilde_rejected(self):
        spec = exact_fock_spectrum(10, 1.0, 0.1, 1.0, 10)
        with pytest.raises(ConfigurationError):
            compare_asymptotics(spec, 2.0)

    def test_index_map_roundtrip(self):
        states = _enumerate_states(9, 5)
        index_map = build_index_map(states, 5)
        for i, (n0, npl, nmi) in enumerate(states):
            assert index_map[npl, nmi] == i
