"""Fourier-space Poisson solve on fully periodic boxes.

The periodic backend turns the vector Poisson problem into per-mode algebra:
the velocity spectrum recovered from a vorticity spectrum is perpendicular
to the wavenumber vector, so the reconstructed field is solenoidal to
rounding accuracy.  Transforms use the unnormalized numpy convention
(forward sums, inverse divides by N).

Conventions fixed here:
  * the k = 0 coefficient of the solve output is zero (zero-mean gauge);
  * Nyquist-mode derivative wavenumbers on even grids are zeroed, so
    differentiation never touches the sign-ambiguous odd-ball mode;
  * the solve is sign-fixed so that a solenoidal mean-free input passes
    through the curl -> solve round trip unchanged (it is the orthogonal
    projection onto divergence-free fields).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridSpec, ScalarField, VectorField


class BackendError(ValueError):
    """Raised when a grid is incompatible with the requested transform/backend."""


@dataclass(frozen=True, eq=False)
class SpectralField:
    """DFT coefficients of a scalar (1 component) or vector (dim components) field."""

    grid: GridSpec
    coeffs: tuple[np.ndarray, ...]

    def __post_init__(self):
        coeffs = tuple(np.asarray(c, dtype=complex) for c in self.coeffs)
        for c in coeffs:
            if c.shape != self.grid.shape:
                raise BackendError("coefficient array shape does not match grid")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def ncomp(self) -> int:
        return len(self.coeffs)


def _require_periodic(grid: GridSpec):
    if not grid.all_periodic:
        raise BackendError("spectral operations require a fully periodic grid")


def wavenumbers(grid: GridSpec, zero_nyquist: bool = True) -> tuple[np.ndarray, ...]:
    """Per-axis angular wavenumbers 2*pi*m/L, broadcastable against node arrays.

    With ``zero_nyquist`` the m = -n/2 entry on even axes is set to zero;
    derivatives of that mode have no consistent sign for real fields.
    """
    _require_periodic(grid)
    ks = []
    for a in range(grid.dim):
        k = 2.0 * np.pi * np.fft.fftfreq(grid.n[a], d=grid.h[a])
        if zero_nyquist and grid.n[a] % 2 == 0:
            k[grid.n[a] // 2] = 0.0
        ks.append(k)
    return tuple(np.meshgrid(*ks, indexing="ij", sparse=True))


def forward_dft(f: ScalarField | VectorField) -> SpectralField:
    _require_periodic(f.grid)
    if isinstance(f, ScalarField):
        return SpectralField(f.grid, (np.fft.fftn(f.values),))
    return SpectralField(f.grid, tuple(np.fft.fftn(c) for c in f.components))


def inverse_dft(spec: SpectralField) -> ScalarField | VectorField:
    """Back to physical space; the imaginary part (rounding noise for real
    fields) is dropped."""
    fields = tuple(np.fft.ifftn(c).real for c in spec.coeffs)
    if spec.ncomp == 1:
        return ScalarField(spec.grid, fields[0])
    return VectorField(spec.grid, fields)


def spectral_curl(u_hat: SpectralField) -> SpectralField:
    """Vorticity spectrum i k x u_hat (scalar in 2D, vector in 3D)."""
    g = u_hat.grid
    k = wavenumbers(g)
    c = u_hat.coeffs
    if g.dim == 2:
        if u_hat.ncomp != 2:
            raise BackendError("2D curl needs a 2-component spectrum")
        return SpectralField(g, (1j * (k[0] * c[1] - k[1] * c[0]),))
    if u_hat.ncomp != 3:
        raise BackendError("3D curl needs a 3-component spectrum")
    return SpectralField(
        g,
        (
            1j * (k[1] * c[2] - k[2] * c[1]),
            1j * (k[2] * c[0] - k[0] * c[2]),
            1j * (k[0] * c[1] - k[1] * c[0]),
        ),
    )


def solve_poisson_periodic(omega_hat: SpectralField) -> SpectralField:
    """Velocity spectrum from a vorticity spectrum.

    Solves -|k|^2 u_hat = -(i k x omega_hat) mode by mode, i.e.
    u_hat = i (k x omega_hat) / |k|^2, and gauges every mode the
    derivative operators cannot see (k = 0 and pure-Nyquist modes) to zero.
    k . u_hat = 0 for every retained mode.
    """
    g = omega_hat.grid
    k = wavenumbers(g)
    k2 = sum(ki * ki for ki in k)
    k2 = np.broadcast_to(k2, g.shape)
    with np.errstate(divide="ignore"):
        inv = np.where(k2 > 0.0, 1.0 / np.where(k2 > 0.0, k2, 1.0), 0.0)

    w = omega_hat.coeffs
    if g.dim == 2:
        if omega_hat.ncomp != 1:
            raise BackendError("2D solve needs the scalar vorticity spectrum")
        u1 = 1j * k[1] * w[0] * inv
        u2 = -1j * k[0] * w[0] * inv
        return SpectralField(g, (u1, u2))
    if omega_hat.ncomp != 3:
        raise BackendError("3D solve needs the 3-component vorticity spectrum")
    u1 = 1j * (k[1] * w[2] - k[2] * w[1]) * inv
    u2 = 1j * (k[2] * w[0] - k[0] * w[2]) * inv
    u3 = 1j * (k[0] * w[1] - k[1] * w[0]) * inv
    return SpectralField(g, (u1, u2, u3))


def spectral_divergence(u_hat: SpectralField) -> ScalarField:
    """Physical-space divergence computed as the inverse transform of i k . u_hat."""
    g = u_hat.grid
    if u_hat.ncomp != g.dim:
        raise BackendError("divergence needs a full vector spectrum")
    k = wavenumbers(g)
    div_hat = sum(1j * k[a] * u_hat.coeffs[a] for a in range(g.dim))
    return ScalarField(g, np.fft.ifftn(div_hat).real)
