"""Analytic and exact-diagonalization oracles for the uniform gas.

Everything here is independent of the grid-based pipeline and serves to
validate it: the closed-form quasiparticle dispersion, the long-wavelength
velocity-potential / density-fluctuation mode coefficients, and an exact
diagonalization of the number-conserving Hamiltonian truncated to the
three momentum modes {0, +k, -k}.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np
import scipy.linalg

from ._fock_kernels import assemble_dense
from .errors import ConfigurationError, ResourceError

MAX_FOCK_STATES = 200_000


def bogoliubov_dispersion(k: float, u_tilde: float, length: float) -> float:
    """Quasiparticle energy sqrt(e_k (e_k + 2 u_tilde / L)), e_k = k^2/2."""
    if k == 0:
        raise ConfigurationError("k = 0 is the condensate mode; dispersion undefined")
    if u_tilde < 0:
        raise ConfigurationError("u_tilde must be non-negative")
    e_k = 0.5 * k * k
    return float(np.sqrt(e_k * (e_k + 2.0 * u_tilde / length)))


@dataclass(frozen=True)
class HydroCoefficients:
    """Long-wavelength mode amplitudes of phase and density fluctuations.

    ``phi_coeff`` multiplies the velocity-potential mode, ``rho_coeff``
    the density mode; their product is exactly 1/2 (canonical pair), and
    assembling the sound-wave energy from them returns k * v_sound.
    """

    k: float
    phi_coeff: float
    rho_coeff: float
    v_sound: float
    rho0: float
    n_particles: int
    volume: float


def hydro_coefficients(
    k: float, u: float, n_particles: int, volume: float
) -> HydroCoefficients:
    """Mode coefficients sqrt(v/2kN) and sqrt(Nk/2v) with v = sqrt(uN/V)."""
    if k <= 0:
        raise ConfigurationError("k must be positive")
    if u <= 0:
        raise ConfigurationError("u must be positive")
    if n_particles < 1 or volume <= 0:
        raise ConfigurationError("need n_particles >= 1 and volume > 0")
    v = float(np.sqrt(u * n_particles / volume))
    phi = float(np.sqrt(v / (2.0 * k * n_particles)))
    rho = float(np.sqrt(n_particles * k / (2.0 * v)))
    return HydroCoefficients(
        k=float(k),
        phi_coeff=phi,
        rho_coeff=rho,
        v_sound=v,
        rho0=n_particles / volume,
        n_particles=int(n_particles),
        volume=float(volume),
    )


def sound_mode_energy(hc: HydroCoefficients) -> float:
    """Normal-ordered per-mode energy of the sound Hamiltonian.

    Kinetic part rho0 k^2 phi^2 V plus compressional part
    v^2 rho^2 / (rho0 V); each contributes k v / 2.
    """
    kinetic = hc.rho0 * hc.k**2 * hc.phi_coeff**2 * hc.volume
    compress = hc.v_sound**2 * hc.rho_coeff**2 / (hc.rho0 * hc.volume)
    return float(kinetic + compress)


# ---------------------------------------------------------------------------
# Exact three-mode Fock oracle
# ---------------------------------------------------------------------------

# Mode momenta in units of k: index 0 -> 0, 1 -> +1, 2 -> -1.
_MODE_MOMENTA = (0, 1, -1)


@dataclass(frozen=True)
class FockSpectrum:
    """Exact spectrum of the three-mode number-conserving Hamiltonian."""

    n_particles: int
    k_mode: float
    u: float
    ground_energy: float
    gaps: np.ndarray
    dimension: int
    volume: float
    n_max_excited: int
    first_gap: float
    sector_minima: dict


def _enumerate_states(n_particles: int, cap: int) -> np.ndarray:
    states = []
    for n_plus in range(cap + 1):
        for n_minus in range(cap + 1 - n_plus):
            n0 = n_particles - n_plus - n_minus
            if n0 < 0:
                continue
            assert n0 + n_plus + n_minus == n_particles
            states.append((n0, n_plus, n_minus))
    return np.asarray(states, dtype=np.int64)


def exact_fock_spectrum(
    n_particles: int,
    k_mode: float,
    u: float,
    volume: float,
    n_max_excited: int,
    n_gaps: int = 6,
) -> FockSpectrum:
    """Exact diagonalization over states |n0, n+, n-> with fixed total N.

    The basis is capped at ``n_max_excited`` particles outside the zero
    mode and split into momentum sectors s = n+ - n-, which the
    Hamiltonian does not couple.  Interaction terms carry the coupling
    u / (2 * volume) with every momentum-conserving quartic term inside
    the three-mode truncation retained.
    """
    if n_particles < 1 or n_particles > 60:
        raise ConfigurationError("n_particles must be in 1..60")
    if n_max_excited < 1 or n_max_excited > n_particles:
        raise ConfigurationError("need 1 <= n_max_excited <= n_particles")
    if k_mode == 0:
        raise ConfigurationError("k_mode must be nonzero")
    if u < 0:
        raise ConfigurationError("u must be non-negative")

    cap = n_max_excited
    states = _enumerate_states(n_particles, cap)
    if states.shape[0] > MAX_FOCK_STATES:
        raise ResourceError(
            f"Fock basis has {states.shape[0]} states (limit {MAX_FOCK_STATES})"
        )

    omega_k = 0.5 * k_mode * k_mode
    g2 = u / (2.0 * volume)

    sectors = states[:, 1] - states[:, 2]
    sector_minima = {}
    all_eigs = []
    for s in np.unique(sectors):
        block_states = states[sectors == s]
        h = assemble_dense(block_states, cap, omega_k, g2)
        eigs = scipy.linalg.eigvalsh(h)
        sector_minima[int(s)] = float(eigs[0])
        all_eigs.append(eigs)
    all_eigs = np.sort(np.concatenate(all_eigs))

    ground = sector_minima[0]
    excitations = all_eigs - ground
    excitations = excitations[excitations > 1e-12]
    gap_candidates = [sector_minima[s] - ground for s in (+1, -1) if s in sector_minima]
    first_gap = float(min(gap_candidates)) if gap_candidates else float("nan")

    return FockSpectrum(
        n_particles=int(n_particles),
        k_mode=float(k_mode),
        u=float(u),
        ground_energy=float(ground),
        gaps=excitations[:n_gaps].copy(),
        dimension=int(states.shape[0]),
        volume=float(volume),
        n_max_excited=int(n_max_excited),
        first_gap=first_gap,
        sector_minima=sector_minima,
    )


def fock_hamiltonian_reference(
    states: np.ndarray, omega_k: float, g2: float
) -> np.ndarray:
    """Readable term-by-term assembly used to cross-check the kernels.

    Applies every ordered momentum-conserving quartic term
    a^dag_{i1} a^dag_{i2} a_{i3} a_{i4} over the three modes, plus the
    kinetic term, to each basis state.  States may mix different totals;
    particle-number conservation then shows up as exactly zero matrix
    elements between different-total sectors.
    """
    index = {tuple(s): i for i, s in enumerate(np.asarray(states, dtype=np.int64))}
    n_states = len(index)
    h = np.zeros((n_states, n_states))

    quartics = [
        (i1, i2, i3, i4)
        for i1, i2, i3, i4 in product(range(3), repeat=4)
        if _MODE_MOMENTA[i1] + _MODE_MOMENTA[i2] == _MODE_MOMENTA[i3] + _MODE_MOMENTA[i4]
    ]

    for occ, col in index.items():
        occ = np.asarray(occ, dtype=np.int64)
        h[col, col] += omega_k * (occ[1] + occ[2])
        for i1, i2, i3, i4 in quartics:
            n = occ.astype(np.float64).copy()
            amp = g2
            # a_{i4}, a_{i3}, then a^dag_{i2}, a^dag_{i1}
            for down in (i4, i3):
                if n[down] <= 0:
                    amp = 0.0
                    break
                amp *= np.sqrt(n[down])
                n[down] -= 1
            if amp == 0.0:
                continue
            for up in (i2, i1):
                n[up] += 1
                amp *= np.sqrt(n[up])
            key = tuple(int(x) for x in n)
            if key in index:
                h[index[key], col] += amp
    return h


def number_conservation_offblock(
    n_particles: int, k_mode: float, u: float, volume: float, n_max_excited: int
) -> float:
    """Largest |matrix element| between sectors of different total number.

    Assembles the Hamiltonian over the union of the N and N-1 particle
    bases with the generic term-by-term applier and returns the maximum
    magnitude in the cross blocks (identically zero when the Hamiltonian
    conserves the total).
    """
    cap = min(n_max_excited, n_particles - 1)
    states_n = _enumerate_states(n_particles, cap)
    states_m = _enumerate_states(n_particles - 1, cap)
    union = np.vstack([states_n, states_m])
    h = fock_hamiltonian_reference(union, 0.5 * k_mode**2, u / (2.0 * volume))
    n_top = states_n.shape[0]
    cross = h[:n_top, n_top:]
    return float(np.max(np.abs(cross)))


@dataclass(frozen=True)
class AsymptoticsRow:
    n_particles: int
    gap_exact: float
    gap_predicted: float
    gap_error: float
    ground_exact: float
    ground_predicted: float
    ground_error: float


@dataclass(frozen=True)
class AsymptoticsReport:
    rows: tuple
    fitted_power: float | None


def compare_asymptotics(spectra, u_tilde: float) -> AsymptoticsReport:
    """Exact-vs-quadratic-theory errors across an N sequence.

    Accepts one spectrum or an iterable of spectra computed at fixed
    u_tilde = u * N.  The gap prediction is the dispersion at the oracle's
    wavenumber; the ground-state prediction adds the pair zero-point shift
    eps_k - e_k - u_tilde/V to the c-number (u/2V) N (N-1).  With two or
    more N values the report fits the power p in gap_error ~ N^(-p).
    """
    if isinstance(spectra, FockSpectrum):
        spectra = [spectra]
    spectra = list(spectra)
    rows = []
    for spec in spectra:
        if abs(spec.u * spec.n_particles - u_tilde) > 1e-9 * max(1.0, abs(u_tilde)):
            raise ConfigurationError(
                f"spectrum at N={spec.n_particles} has u*N={spec.u * spec.n_particles}, "
                f"expected u_tilde={u_tilde}"
            )
        e_k = 0.5 * spec.k_mode**2
        disp = bogoliubov_dispersion(spec.k_mode, u_tilde, spec.volume)
        ground_pred = (
            0.5 * (spec.u / spec.volume) * spec.n_particles * (spec.n_particles - 1)
            + disp
            - e_k
            - u_tilde / spec.volume
        )
        rows.append(
            AsymptoticsRow(
                n_particles=spec.n_particles,
                gap_exact=spec.first_gap,
                gap_predicted=disp,
                gap_error=abs(spec.first_gap - disp),
                ground_exact=spec.ground_energy,
                ground_predicted=ground_pred,
                ground_error=abs(spec.ground_energy - ground_pred),
            )
        )
    fitted_power = None
    usable = [r for r in rows if r.gap_error > 0]
    if len(usable) >= 2:
        logn = np.log([r.n_particles for r in usable])
        logerr = np.log([r.gap_error for r in usable])
        slope = np.polyfit(logn, logerr, 1)[0]
        fitted_power = float(-slope)
    return AsymptoticsReport(rows=tuple(rows), fitted_power=fitted_power)
