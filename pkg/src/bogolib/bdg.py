"""Quadratic phonon Hamiltonian in the subspace orthogonal to the condensate.

The quadratic energy in a K-mode basis {xi_k} orthogonal to the condensate
xi is parametrized by a Hermitian matrix M = L + F and a symmetric matrix G:

    L_kq = <xi_k | -1/2 d^2/dx^2 + V | xi_q>
    F_kq = <xi_k | 2 u_tilde |xi|^2 - mu | xi_q>
    G_kq = u_tilde * integral( xi^2 conj(xi_k) conj(xi_q) ) dx
    E3   = -(u_tilde/2) * integral |xi|^4 dx

Quasiparticles follow from the positive-norm eigenpairs of the 2K x 2K
block matrix [[M, G], [-conj(G), -conj(M)]]; an eigenvector (u; v) with
u^H u - v^H v = 1 gives transformation columns c = u and s = conj(v), and
mode wavefunctions p_m = sum_k c_km xi_k, q_m = sum_k s_km xi_k.  The
scalar left over after normal ordering is

    omega_g = E3 + (sum_m eps_m - tr M) / 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.linalg

from .errors import ConfigurationError, DegeneracyError, DimensionMismatchError
from .gpe import CondensateState
from .grid import ComplexField, Grid1D, _kinetic_values, kinetic_matrix

POSITIVE_NORM_THRESHOLD = 1e-8
REALITY_TOLERANCE = 1e-9


@dataclass(eq=False)
class PhononBasis:
    """Orthonormal mode functions spanning the subspace orthogonal to xi."""

    modes: list[ComplexField]
    condensate: ComplexField
    K: int

    @cached_property
    def mode_matrix(self) -> np.ndarray:
        """Stacked (K, n_points) array of mode values."""
        return np.vstack([m.values for m in self.modes])

    @property
    def grid(self) -> Grid1D:
        return self.condensate.grid


@dataclass(frozen=True, eq=False)
class QuadraticHamiltonian:
    """Matrices and scalar defining the phonon-quadratic energy."""

    e3: float
    m_matrix: np.ndarray
    g_matrix: np.ndarray
    mu: float

    @property
    def n_modes(self) -> int:
        return self.m_matrix.shape[0]


@dataclass(frozen=True, eq=False)
class QuasiparticleSpectrum:
    """Quasiparticle energies, transformation matrices, and wavefunctions."""

    energies: np.ndarray
    c_matrix: np.ndarray
    s_matrix: np.ndarray
    p_waves: list[ComplexField]
    q_waves: list[ComplexField]
    omega_g: float
    stable: bool
    anomalies: tuple[str, ...] = field(default=())


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    offending_modes: tuple[int, ...]
    messages: tuple[str, ...]


def build_phonon_basis(state: CondensateState, K: int) -> PhononBasis:
    """Lowest-K single-particle modes projected orthogonal to the condensate.

    Takes the K+1 lowest eigenfunctions of -1/2 d^2/dx^2 + V, removes the
    component along xi, drops any candidate that loses essentially all its
    norm to the projection (the condensate direction itself), and returns
    the first K orthonormal survivors.
    """
    grid = state.grid
    if K < 1:
        raise ConfigurationError("K must be at least 1")
    if K >= grid.n_points - 1:
        raise ConfigurationError(
            f"K = {K} too large for grid with {grid.n_points} points"
        )
    h0 = kinetic_matrix(grid) + np.diag(state.potential.values.real)
    _, vecs = scipy.linalg.eigh(h0, subset_by_index=[0, K])
    candidates = vecs.T / np.sqrt(grid.dx)

    dx = grid.dx
    xi_hat = state.xi.values / np.sqrt(np.vdot(state.xi.values, state.xi.values).real * dx)
    accepted: list[np.ndarray] = []
    for cand in candidates:
        v = cand.astype(np.complex128, copy=True)
        for _ in range(2):
            v -= xi_hat * (np.vdot(xi_hat, v) * dx)
            for b in accepted:
                v -= b * (np.vdot(b, v) * dx)
        nrm = np.sqrt(np.vdot(v, v).real * dx)
        if nrm < 1e-6:
            continue  # candidate was the condensate direction
        accepted.append(v / nrm)
        if len(accepted) == K:
            break
    if len(accepted) < K:
        raise DegeneracyError(
            f"only {len(accepted)} independent modes found, requested {K}",
            index=len(accepted),
        )
    modes = [ComplexField(v, grid) for v in accepted]
    return PhononBasis(modes=modes, condensate=state.xi, K=K)


def plane_wave_basis(state: CondensateState, K: int) -> PhononBasis:
    """Complex plane waves exp(ikx)/sqrt(L) in +-k pairs (periodic grids).

    K must be even so every retained +k mode keeps its -k partner; the
    anomalous coupling closes only on complete pairs.
    """
    grid = state.grid
    if grid.boundary != "periodic":
        raise ConfigurationError("plane-wave basis requires a periodic grid")
    if K % 2:
        raise ConfigurationError("K must be even to keep +-k pairs together")
    if K >= grid.n_points - 1:
        raise ConfigurationError("K too large for the grid")
    base = 2.0 * np.pi / grid.length
    modes = []
    for j in range(1, K // 2 + 1):
        for sign in (+1, -1):
            k = sign * j * base
            modes.append(
                ComplexField(np.exp(1j * k * grid.points) / np.sqrt(grid.length), grid)
            )
    return PhononBasis(modes=modes, condensate=state.xi, K=K)


def assemble_from_fields(
    xi_values: np.ndarray,
    basis: PhononBasis,
    potential_values: np.ndarray,
    u_tilde: float,
    mu: float,
) -> QuadraticHamiltonian:
    """Assemble (M, G, E3) from raw condensate/potential arrays."""
    grid = basis.grid
    phi = basis.mode_matrix
    if xi_values.shape != (grid.n_points,):
        raise DimensionMismatchError("condensate values do not match basis grid")

    density = np.abs(xi_values) ** 2
    w = potential_values.real + 2.0 * u_tilde * density - mu
    op_phi = _kinetic_values(grid, phi) + w * phi
    m_matrix = (phi.conj() @ op_phi.T) * grid.dx

    g_matrix = u_tilde * ((phi.conj() * (xi_values**2 * grid.dx)) @ phi.conj().T)
    e3 = -0.5 * u_tilde * float(np.sum(density**2) * grid.dx)
    return QuadraticHamiltonian(e3=e3, m_matrix=m_matrix, g_matrix=g_matrix, mu=float(mu))


def assemble(state: CondensateState, basis: PhononBasis) -> QuadraticHamiltonian:
    """Quadratic Hamiltonian of a converged stationary state."""
    if basis.grid.n_points != state.grid.n_points:
        raise DimensionMismatchError("basis and state grids differ")
    return assemble_from_fields(
        state.xi.values, basis, state.potential.values.real, state.u_tilde, state.mu
    )


def _bdg_eigensystem(m_matrix: np.ndarray, g_matrix: np.ndarray):
    """All eigenpairs of [[M, G], [-G*, -M*]] with their symplectic norms."""
    k = m_matrix.shape[0]
    block = np.zeros((2 * k, 2 * k), dtype=np.complex128)
    block[:k, :k] = m_matrix
    block[:k, k:] = g_matrix
    block[k:, :k] = -g_matrix.conj()
    block[k:, k:] = -m_matrix.conj()
    eigvals, eigvecs = scipy.linalg.eig(block)
    u = eigvecs[:k, :]
    v = eigvecs[k:, :]
    norms = (np.sum(np.abs(u) ** 2, axis=0) - np.sum(np.abs(v) ** 2, axis=0)).real
    total = np.sum(np.abs(u) ** 2, axis=0) + np.sum(np.abs(v) ** 2, axis=0)
    return eigvals, u, v, norms / total


def _symplectic_reorthonormalize(u: np.ndarray, v: np.ndarray, energies: np.ndarray):
    """B-orthonormalize degenerate clusters (B = u^H u' - v^H v')."""
    k = u.shape[1]
    order = np.argsort(energies.real)
    u, v, energies = u[:, order], v[:, order], energies[order]
    start = 0
    while start < k:
        stop = start + 1
        scale = max(1.0, abs(energies[start].real))
        while stop < k and abs(energies[stop].real - energies[start].real) < 1e-8 * scale:
            stop += 1
        if stop - start > 1:
            uu = u[:, start:stop]
            vv = v[:, start:stop]
            gram = uu.conj().T @ uu - vv.conj().T @ vv
            gram = 0.5 * (gram + gram.conj().T)
            try:
                chol = scipy.linalg.cholesky(gram, lower=True)
                inv = scipy.linalg.inv(chol.conj().T)
                u[:, start:stop] = uu @ inv
                v[:, start:stop] = vv @ inv
            except scipy.linalg.LinAlgError:
                pass  # cluster not positive definite; leave as-is
        start = stop
    return u, v, energies


def diagonalize(qh: QuadraticHamiltonian, basis: PhononBasis) -> QuasiparticleSpectrum:
    """Positive-norm quasiparticle branch of the quadratic Hamiltonian.

    Complex eigenvalues signal dynamical instability: the spectrum is
    still returned (real parts, Euclidean-normalized vectors) with
    ``stable = False`` and an explanatory anomaly entry.
    """
    k = qh.n_modes
    if basis.K != k:
        raise DimensionMismatchError("basis size does not match Hamiltonian")
    eigvals, u, v, rel_norms = _bdg_eigensystem(qh.m_matrix, qh.g_matrix)

    anomalies: list[str] = []
    complex_mask = np.abs(eigvals.imag) > REALITY_TOLERANCE
    has_complex = bool(np.any(complex_mask))
    if has_complex:
        anomalies.append(
            f"{int(np.sum(complex_mask))} eigenvalues with |Im| > {REALITY_TOLERANCE:g}"
        )

    pos = np.flatnonzero(rel_norms > POSITIVE_NORM_THRESHOLD)
    sel_u = u[:, pos].copy()
    sel_v = v[:, pos].copy()
    sel_e = eigvals[pos].copy()
    # Normalize to u^H u - v^H v = 1.
    sigma = np.sum(np.abs(sel_u) ** 2, axis=0) - np.sum(np.abs(sel_v) ** 2, axis=0)
    sel_u /= np.sqrt(sigma)
    sel_v /= np.sqrt(sigma)
    sel_u, sel_v, sel_e = _symplectic_reorthonormalize(sel_u, sel_v, sel_e)

    if sel_e.shape[0] < k:
        # Null-norm pairs (complex-frequency or Goldstone-like); keep one
        # representative per conjugate pair so the mode count stays K.
        anomalies.append(
            f"{k - sel_e.shape[0]} modes taken from zero-norm subspace"
        )
        rest = np.flatnonzero(rel_norms <= POSITIVE_NORM_THRESHOLD)
        order = np.lexsort((-eigvals[rest].imag, np.abs(eigvals[rest].real)))
        picked = []
        for idx in rest[order]:
            ev = eigvals[idx]
            if any(
                abs(ev - np.conj(eigvals[j])) < 1e-10 and abs(ev.imag) > REALITY_TOLERANCE
                for j in picked
            ):
                continue
            picked.append(idx)
            if sel_e.shape[0] + len(picked) == k:
                break
        extra_u = u[:, picked]
        extra_v = v[:, picked]
        scale = np.sqrt(np.sum(np.abs(extra_u) ** 2, axis=0) + np.sum(np.abs(extra_v) ** 2, axis=0))
        sel_u = np.hstack([sel_u, extra_u / scale])
        sel_v = np.hstack([sel_v, extra_v / scale])
        sel_e = np.concatenate([sel_e, eigvals[picked]])
        order = np.argsort(sel_e.real)
        sel_u, sel_v, sel_e = sel_u[:, order], sel_v[:, order], sel_e[order]

    energies = sel_e.real.copy()
    c_matrix = sel_u
    s_matrix = sel_v.conj()

    phi = basis.mode_matrix
    p_stack = c_matrix.T @ phi
    q_stack = s_matrix.T @ phi
    grid = basis.grid
    p_waves = [ComplexField(row, grid) for row in p_stack]
    q_waves = [ComplexField(row, grid) for row in q_stack]

    omega_g = qh.e3 + 0.5 * float(np.sum(energies) - np.trace(qh.m_matrix).real)
    stable = (not has_complex) and bool(np.all(energies >= -REALITY_TOLERANCE))

    return QuasiparticleSpectrum(
        energies=energies,
        c_matrix=c_matrix,
        s_matrix=s_matrix,
        p_waves=p_waves,
        q_waves=q_waves,
        omega_g=omega_g,
        stable=stable,
        anomalies=tuple(anomalies),
    )


def check_stability(spectrum: QuasiparticleSpectrum) -> StabilityReport:
    """All energies real and non-negative?  Reports offending modes."""
    offending = []
    messages = []
    for m, eps in enumerate(spectrum.energies):
        if eps < -REALITY_TOLERANCE:
            offending.append(m)
            messages.append(f"mode {m}: negative energy {eps:.6g}")
    for note in spectrum.anomalies:
        messages.append(note)
    stable = spectrum.stable and not offending
    return StabilityReport(
        stable=stable, offending_modes=tuple(offending), messages=tuple(messages)
    )


def h3_expectation(qh: QuadraticHamiltonian, occupations) -> float:
    """Energy omega_g + sum_m n_m eps_m for given quasiparticle occupations."""
    occ = np.asarray(occupations, dtype=float)
    if occ.shape != (qh.n_modes,):
        raise DimensionMismatchError(
            f"expected {qh.n_modes} occupations, got shape {occ.shape}"
        )
    if np.any(occ < 0):
        raise ConfigurationError("occupations must be non-negative")
    eigvals, _, _, rel_norms = _bdg_eigensystem(qh.m_matrix, qh.g_matrix)
    pos = np.flatnonzero(rel_norms > POSITIVE_NORM_THRESHOLD)
    energies = np.sort(eigvals[pos].real)
    if energies.shape[0] != qh.n_modes:
        energies = np.sort(eigvals.real)[qh.n_modes :]  # fallback: upper half
    omega_g = qh.e3 + 0.5 * float(np.sum(energies) - np.trace(qh.m_matrix).real)
    return omega_g + float(occ @ energies)
