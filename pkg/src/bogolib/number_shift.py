"""Connection between ground states whose particle numbers differ by one.

The condensate orbital depends on the total number N through the scaled
interaction N*u.  Differentiating the solved orbital with respect to N
gives a field whose expansion over {xi, xi_k} yields a gauge coefficient
r0 (removable by a phase choice along the N-family) and coefficients r_k
of order one.  These feed the corrected transition amplitudes

    f_m = p_m - xi * sum_k r_k c_km
    g_m = q_m - xi * sum_k r_k s_km

which govern processes that add a particle while changing the
quasiparticle number, and the leading condensate matrix element
sqrt(N+1) * xi(x) between neighboring ground states.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bdg import PhononBasis, QuasiparticleSpectrum
from .errors import ConfigurationError, DimensionMismatchError, TruncationError
from .gpe import CondensateState, solve_stationary
from .grid import ComplexField, Grid1D, inner_product


@dataclass(frozen=True)
class StationaryProblem:
    """Stationary solves as a function of N at fixed physical coupling u."""

    grid: Grid1D
    potential: ComplexField
    u: float
    tol: float = 1e-11
    max_iters: int = 20000

    def solve(self, n_particles: float) -> CondensateState:
        return solve_stationary(
            self.grid,
            self.potential,
            self.u * n_particles,
            n_particles=n_particles,
            tol=self.tol,
            max_iters=self.max_iters,
        )


def _align_phase(reference: ComplexField, other: ComplexField) -> ComplexField:
    """Multiply by the phase making <reference, other> real positive."""
    overlap = inner_product(reference, other)
    phase = overlap / abs(overlap)
    return ComplexField(other.values / phase, other.grid)


def dxi_dN(
    problem: StationaryProblem,
    n_particles: float,
    delta_N: float,
    scheme: str = "central",
) -> ComplexField:
    """Finite-difference derivative of the orbital with respect to N.

    Neighboring solves are parallel-transport aligned (phase fixed so the
    overlap with the N-point orbital is real positive) before
    differencing; ``scheme`` is ``"central"`` (default) or ``"forward"``.
    """
    if delta_N <= 0:
        raise ConfigurationError("delta_N must be positive")
    ref = problem.solve(n_particles)
    plus = _align_phase(ref.xi, problem.solve(n_particles + delta_N).xi)
    if scheme == "central":
        minus = _align_phase(ref.xi, problem.solve(n_particles - delta_N).xi)
        values = (plus.values - minus.values) / (2.0 * delta_N)
    elif scheme == "forward":
        values = (plus.values - ref.xi.values) / delta_N
    else:
        raise ConfigurationError(f"unknown scheme {scheme!r}")
    return ComplexField(values, problem.grid)


@dataclass(frozen=True, eq=False)
class PhaseFixResult:
    """Expansion of the N-derivative over the condensate and mode basis."""

    r0_raw: float
    r0: float
    r: np.ndarray
    dxi_fixed: ComplexField
    truncation_residual: float


def phase_fix_and_r(
    state: CondensateState,
    basis: PhononBasis,
    dxi: ComplexField,
    truncation_tol: float = 1e-6,
) -> PhaseFixResult:
    """Gauge coefficient r0 and mode coefficients r_k of the N-derivative.

    The expansion convention is d(conj xi)/dN = (i r0 conj(xi)
    + sum_k r_k conj(xi_k)) / N, so r_k = N * conj(<xi_k, dxi>) and the
    real gauge parameter is r0 = -N * Im <xi, dxi>.  The returned ``r0``
    is evaluated after removing the condensate component (the phase
    choice along the family), hence vanishes identically; ``r0_raw`` is
    the pre-fix value.
    """
    n = state.n_particles
    c0 = inner_product(state.xi, dxi)
    ck = basis.mode_matrix.conj() @ dxi.values * basis.grid.dx
    r0_raw = -n * c0.imag
    r = n * np.conj(ck)

    fixed_values = dxi.values - c0 * state.xi.values
    dxi_fixed = ComplexField(fixed_values, dxi.grid)
    r0 = -n * inner_product(state.xi, dxi_fixed).imag

    residual = fixed_values - ck @ basis.mode_matrix
    residual_norm = float(np.sqrt(np.vdot(residual, residual).real * basis.grid.dx))
    if residual_norm > truncation_tol:
        raise TruncationError(
            f"dxi has component {residual_norm:.3e} outside span(xi, xi_k); "
            "increase the basis size K"
        )
    return PhaseFixResult(
        r0_raw=float(r0_raw),
        r0=float(r0),
        r=r,
        dxi_fixed=dxi_fixed,
        truncation_residual=residual_norm,
    )


def modified_amplitudes(
    spectrum: QuasiparticleSpectrum,
    state: CondensateState,
    r: np.ndarray,
) -> tuple[list[ComplexField], list[ComplexField]]:
    """Amplitudes f_m, g_m for adding one particle and one quasiparticle."""
    r = np.asarray(r, dtype=np.complex128)
    if r.shape[0] != spectrum.c_matrix.shape[0]:
        raise DimensionMismatchError(
            f"r has {r.shape[0]} entries, transformation expects "
            f"{spectrum.c_matrix.shape[0]}"
        )
    coef_f = r @ spectrum.c_matrix
    coef_g = r @ spectrum.s_matrix
    grid = state.grid
    f_waves = [
        ComplexField(p.values - cf * state.xi.values, grid)
        for p, cf in zip(spectrum.p_waves, coef_f)
    ]
    g_waves = [
        ComplexField(q.values - cg * state.xi.values, grid)
        for q, cg in zip(spectrum.q_waves, coef_g)
    ]
    return f_waves, g_waves


@dataclass(frozen=True, eq=False)
class NumberShiftReport:
    """Everything needed to connect the N and N+1 ground states."""

    dxi_dN: ComplexField
    r0: float
    r: np.ndarray
    f_waves: list[ComplexField]
    g_waves: list[ComplexField]
    delta_N: float
    condensate_amplitude: float
    r0_raw: float = 0.0
    truncation_residual: float = 0.0


def build_report(
    problem: StationaryProblem,
    state: CondensateState,
    basis: PhononBasis,
    spectrum: QuasiparticleSpectrum,
    delta_N: float = 0.5,
) -> NumberShiftReport:
    """Run the full derivative -> expansion -> amplitude chain."""
    dxi = dxi_dN(problem, state.n_particles, delta_N)
    fix = phase_fix_and_r(state, basis, dxi)
    f_waves, g_waves = modified_amplitudes(spectrum, state, fix.r)
    return NumberShiftReport(
        dxi_dN=dxi,
        r0=fix.r0,
        r=fix.r,
        f_waves=f_waves,
        g_waves=g_waves,
        delta_N=delta_N,
        condensate_amplitude=float(np.sqrt(state.n_particles + 1.0)),
        r0_raw=fix.r0_raw,
        truncation_residual=fix.truncation_residual,
    )


@dataclass(frozen=True, eq=False)
class MatrixElements:
    """Field-operator matrix elements between N and N+1 particle states.

    ``ground_to_ground`` is the leading amplitude sqrt(N+1) * xi(x); the
    per-quasiparticle channels are suppressed by ``channel_order``
    = 1/sqrt(N) relative to it (``f_channels`` create a quasiparticle on
    top of the particle addition, ``g_channels`` destroy one).
    """

    ground_to_ground: ComplexField
    f_channels: list[ComplexField]
    g_channels: list[ComplexField]
    condensate_amplitude: float
    channel_order: float


def matrix_elements(state: CondensateState, report: NumberShiftReport) -> MatrixElements:
    n = state.n_particles
    amp = report.condensate_amplitude
    grid = state.grid
    order = 1.0 / np.sqrt(n)
    ground = ComplexField(amp * state.xi.values, grid)
    f_channels = [ComplexField(amp * order * f.values, grid) for f in report.f_waves]
    g_channels = [ComplexField(amp * order * g.values, grid) for g in report.g_waves]
    return MatrixElements(
        ground_to_ground=ground,
        f_channels=f_channels,
        g_channels=g_channels,
        condensate_amplitude=amp,
        channel_order=float(order),
    )
