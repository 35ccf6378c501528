import numpy as np
import pytest

from divfree import GridSpec, VectorField


def periodic_grid(n=32, dim=2, length=2.0 * np.pi):
    return GridSpec((n,) * dim, (0.0,) * dim, (length,) * dim, periodic=True)


def bounded_grid(n=33, dim=2, lo=0.0, hi=1.0):
    return GridSpec((n,) * dim, (lo,) * dim, (hi,) * dim, periodic=False)


def band_limited_scalar(grid, rng, kmax=4):
    """Smooth random periodic scalar: random field low-pass filtered in
    Fourier space (modes with any |m| > kmax dropped)."""
    raw = rng.standard_normal(grid.shape)
    hat = np.fft.fftn(raw)
    for a in range(grid.dim):
        m = np.fft.fftfreq(grid.n[a]) * grid.n[a]
        keep = np.abs(m) <= kmax
        shape = [1] * grid.dim
        shape[a] = grid.n[a]
        hat = hat * keep.reshape(shape)
    return np.fft.ifftn(hat).real


def random_smooth_field(grid, rng, kmax=4):
    return VectorField(grid, tuple(band_limited_scalar(grid, rng, kmax) for _ in range(grid.dim)))


def random_solenoidal_field(grid, rng, kmax=4):
    """Exactly (spectrally) divergence-free mean-free 2D field, built from a
    random streamfunction: u = (d psi/dx2, -d psi/dx1) evaluated in Fourier
    space."""
    assert grid.dim == 2
    psi_hat = np.fft.fftn(band_limited_scalar(grid, rng, kmax))
    from divfree import wavenumbers

    k1, k2 = wavenumbers(grid)
    u1 = np.fft.ifftn(1j * k2 * psi_hat).real
    u2 = np.fft.ifftn(-1j * k1 * psi_hat).real
    return VectorField(grid, (u1, u2))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
