"""One-dimensional spatial grids with spectral differentiation.

Two boundary types are supported (units: hbar = m = 1):

* ``periodic`` -- uniform grid on [0, L); derivatives via FFT. The number
  of points must be a power of two.
* ``box`` -- hard walls at x = 0 and x = L; n interior points spaced
  L/(n+1); derivatives in the sine (DST-I) basis, which builds in the
  wall boundary condition.

All quadrature is the uniform rectangle rule with weight dx, which is
exact for the periodic spectral representation and consistent with the
sine basis (integrands vanish at the walls).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.fft

from .errors import ConfigurationError, DegeneracyError, DimensionMismatchError

BOUNDARIES = ("periodic", "box")


@dataclass(frozen=True, eq=False)
class Grid1D:
    """Uniform 1D grid.

    Attributes
    ----------
    n_points : int
        Number of grid points (interior points for ``box``).
    length : float
        Domain length L.
    boundary : str
        ``"periodic"`` or ``"box"``.
    points : np.ndarray
        Abscissae. Periodic: j*L/n for j = 0..n-1. Box: j*L/(n+1) for
        j = 1..n.
    wavenumbers : np.ndarray | None
        Spectral wavenumbers in FFT order (periodic grids only).
    dx : float
        Quadrature weight / grid spacing.
    """

    n_points: int
    length: float
    boundary: str
    points: np.ndarray
    wavenumbers: np.ndarray | None
    dx: float
    # Eigenvalues of -1/2 d^2/dx^2 in the grid's spectral basis.
    kinetic_eigs: np.ndarray = field(repr=False, default=None)

    @property
    def center(self) -> float:
        return 0.5 * self.length


def build_grid(n_points: int, length: float, boundary: str = "periodic") -> Grid1D:
    """Construct a grid, validating the discretization parameters."""
    if boundary not in BOUNDARIES:
        raise ConfigurationError(
            f"unknown boundary {boundary!r}; expected one of {BOUNDARIES}"
        )
    if n_points < 8:
        raise ConfigurationError(f"n_points must be >= 8, got {n_points}")
    if length <= 0:
        raise ConfigurationError(f"length must be positive, got {length}")

    if boundary == "periodic":
        if n_points & (n_points - 1):
            raise ConfigurationError(
                f"periodic grids require a power-of-two n_points, got {n_points}"
            )
        dx = length / n_points
        points = dx * np.arange(n_points)
        wavenumbers = 2.0 * np.pi * np.fft.fftfreq(n_points, d=dx)
        kinetic_eigs = 0.5 * wavenumbers**2
    else:
        dx = length / (n_points + 1)
        points = dx * np.arange(1, n_points + 1)
        wavenumbers = None
        sine_k = np.pi * np.arange(1, n_points + 1) / length
        kinetic_eigs = 0.5 * sine_k**2

    return Grid1D(
        n_points=n_points,
        length=float(length),
        boundary=boundary,
        points=points,
        wavenumbers=wavenumbers,
        dx=dx,
        kinetic_eigs=kinetic_eigs,
    )


@dataclass(frozen=True, eq=False)
class ComplexField:
    """Complex amplitudes sampled on a :class:`Grid1D`."""

    values: np.ndarray
    grid: Grid1D

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.complex128)
        if values.shape != (self.grid.n_points,):
            raise DimensionMismatchError(
                f"field has {values.shape}, grid expects ({self.grid.n_points},)"
            )
        object.__setattr__(self, "values", values)

    def copy(self) -> "ComplexField":
        return ComplexField(self.values.copy(), self.grid)


def as_field(grid: Grid1D, values) -> ComplexField:
    """Wrap raw values (broadcastable to the grid) as a ComplexField."""
    return ComplexField(np.broadcast_to(values, (grid.n_points,)).astype(np.complex128), grid)


def _check_same_grid(f: ComplexField, g: ComplexField) -> None:
    if f.grid is not g.grid and (
        f.grid.n_points != g.grid.n_points
        or f.grid.length != g.grid.length
        or f.grid.boundary != g.grid.boundary
    ):
        raise DimensionMismatchError("fields live on different grids")


def inner_product(f: ComplexField, g: ComplexField) -> complex:
    """Quadrature of integral conj(f) g dx; conjugate-linear in ``f``."""
    _check_same_grid(f, g)
    return complex(np.vdot(f.values, g.values) * f.grid.dx)


def norm(f: ComplexField) -> float:
    """L2 norm sqrt(integral |f|^2 dx)."""
    return float(np.sqrt(np.vdot(f.values, f.values).real * f.grid.dx))


def _kinetic_values(grid: Grid1D, values: np.ndarray) -> np.ndarray:
    """Apply -1/2 d^2/dx^2 to a raw complex array."""
    if grid.boundary == "periodic":
        return scipy.fft.ifft(grid.kinetic_eigs * scipy.fft.fft(values))
    # DST-I is orthogonal, so the same normalized transform inverts itself.
    re = scipy.fft.dst(values.real, type=1, norm="ortho")
    im = scipy.fft.dst(values.imag, type=1, norm="ortho")
    coeff = (re + 1j * im) * grid.kinetic_eigs
    out_re = scipy.fft.idst(coeff.real, type=1, norm="ortho")
    out_im = scipy.fft.idst(coeff.imag, type=1, norm="ortho")
    return out_re + 1j * out_im


def apply_kinetic(f: ComplexField) -> ComplexField:
    """Spectral evaluation of -1/2 f''."""
    return ComplexField(_kinetic_values(f.grid, f.values), f.grid)


def kinetic_matrix(grid: Grid1D) -> np.ndarray:
    """Dense real-symmetric matrix of -1/2 d^2/dx^2 on the grid."""
    eye = np.eye(grid.n_points)
    if grid.boundary == "periodic":
        cols = scipy.fft.ifft(grid.kinetic_eigs[:, None] * scipy.fft.fft(eye, axis=0), axis=0)
        return np.ascontiguousarray(cols.real)
    cols = scipy.fft.idst(
        grid.kinetic_eigs[:, None] * scipy.fft.dst(eye, type=1, norm="ortho", axis=0),
        type=1,
        norm="ortho",
        axis=0,
    )
    return np.ascontiguousarray(cols)


def orthonormalize(
    fields: list[ComplexField],
    against: ComplexField | None = None,
    dependency_tol: float = 1e-10,
) -> list[ComplexField]:
    """Modified Gram-Schmidt with reorthogonalization.

    Returns fields with unit L2 norm and mutual overlaps at round-off
    level; each output is also orthogonal to ``against`` when supplied.

    Raises
    ------
    DegeneracyError
        If an input loses essentially all of its norm under projection
        (post-projection norm below ``dependency_tol``); the error names
        the offending input index.
    """
    if not fields:
        return []
    grid = fields[0].grid
    basis: list[np.ndarray] = []
    if against is not None:
        _check_same_grid(against, fields[0])
        a = against.values / np.sqrt(np.vdot(against.values, against.values).real * grid.dx)
        basis.append(a)

    out: list[ComplexField] = []
    for idx, f in enumerate(fields):
        _check_same_grid(fields[0], f)
        v = f.values.astype(np.complex128, copy=True)
        for _ in range(2):  # second pass controls round-off amplification
            for b in basis:
                v -= b * (np.vdot(b, v) * grid.dx)
        nrm = np.sqrt(np.vdot(v, v).real * grid.dx)
        if nrm < dependency_tol:
            raise DegeneracyError(
                f"input field {idx} is numerically dependent on the preceding "
                f"set (residual norm {nrm:.3e})",
                index=idx,
            )
        v /= nrm
        basis.append(v)
        out.append(ComplexField(v, grid))

    return out
