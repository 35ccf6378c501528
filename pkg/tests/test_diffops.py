import numpy as np
import pytest

from divfree import (
    GridSpec,
    ScalarField,
    StencilSpec,
    VectorField,
    curl,
    curl_of_vorticity,
    divergence,
    laplacian,
)
from divfree.diffops import _deriv1
from tests.conftest import bounded_grid, periodic_grid


def interior(a, width=1):
    return a[(slice(width, -width),) * a.ndim]


class TestStencilSpec:
    def test_default_is_the_implemented_scheme(self):
        s = StencilSpec()
        assert s.order == 2 and s.boundary_scheme == "one-sided-2"

    def test_unsupported_order_rejected(self):
        with pytest.raises(ValueError):
            StencilSpec(order=4)
        with pytest.raises(ValueError):
            StencilSpec(boundary_scheme="ghost")


class TestCurl:
    def test_rigid_rotation_gives_constant_vorticity(self):
        g = bounded_grid(33, lo=-1.0, hi=1.0)
        x1, x2 = g.mesh()
        w = curl(VectorField(g, (-x2, x1)))
        assert np.allclose(interior(w.values), 2.0, atol=1e-13)

    def test_zero_field(self):
        g = bounded_grid(17)
        w = curl(VectorField.zeros(g))
        assert np.all(w.values == 0.0)

    def test_3d_bilinear_curl_exact(self):
        # u = (0, 0, x1 x2) -> curl = (x1, -x2, 0); oracle: analytic curl at nodes
        g = GridSpec((9, 9, 9), (0, 0, 0), (1, 1, 1))
        x1, x2, x3 = g.mesh()
        u = VectorField(g, (np.zeros(g.shape), np.zeros(g.shape), x1 * x2))
        w = curl(u)
        assert np.allclose(interior(w.components[0]), interior(x1), atol=1e-13)
        assert np.allclose(interior(w.components[1]), interior(-x2), atol=1e-13)
        assert np.allclose(interior(w.components[2]), 0.0, atol=1e-13)


class TestCurlOfVorticity:
    def test_constant_vorticity(self):
        g = bounded_grid(17)
        out = curl_of_vorticity(ScalarField(g, np.full(g.shape, 2.0)))
        for c in out.components:
            assert np.allclose(c, 0.0, atol=1e-13)

    def test_linear_vorticity(self):
        g = bounded_grid(17)
        x1, _ = g.mesh()
        out = curl_of_vorticity(ScalarField(g, x1))
        assert np.allclose(interior(out.components[0]), 0.0, atol=1e-13)
        assert np.allclose(interior(out.components[1]), -1.0, atol=1e-13)

    def test_sinusoidal_vorticity_second_order(self):
        # oracle: analytic derivatives; error drops ~4x per refinement
        errs = []
        for n in (32, 64):
            g = periodic_grid(n)
            x1, x2 = g.mesh()
            out = curl_of_vorticity(ScalarField(g, np.sin(x1) * np.sin(x2)))
            exact = (np.sin(x1) * np.cos(x2), -np.cos(x1) * np.sin(x2))
            errs.append(max(np.max(np.abs(out.components[c] - exact[c])) for c in range(2)))
        assert 3.5 <= errs[0] / errs[1] <= 4.5


class TestDivergence:
    def test_linear_expansion_exact(self):
        g = bounded_grid(17, lo=-1.0, hi=1.0)
        x1, x2 = g.mesh()
        d = divergence(VectorField(g, (x1, x2)))
        assert np.allclose(interior(d.values), 2.0, atol=1e-13)

    def test_swap_field_divergence_free(self):
        g = bounded_grid(17, lo=-1.0, hi=1.0)
        x1, x2 = g.mesh()
        d = divergence(VectorField(g, (x2, x1)))
        assert np.allclose(d.values, 0.0, atol=1e-13)


class TestLaplacian:
    def test_quadratic_exact(self):
        g = bounded_grid(17, lo=-1.0, hi=1.0)
        x1, _ = g.mesh()
        lap = laplacian(ScalarField(g, x1**2))
        assert np.allclose(interior(lap.values), 2.0, atol=1e-12)

    def test_harmonic_linear(self):
        g = bounded_grid(17)
        x1, x2 = g.mesh()
        lap = laplacian(ScalarField(g, x1 + x2))
        assert np.allclose(interior(lap.values), 0.0, atol=1e-12)

    def test_sine_product_second_order(self):
        errs = []
        for n in (33, 65):
            g = bounded_grid(n)
            x1, x2 = g.mesh()
            s = np.sin(np.pi * x1) * np.sin(np.pi * x2)
            lap = laplacian(ScalarField(g, s))
            errs.append(np.max(np.abs(interior(lap.values) + 2.0 * np.pi**2 * interior(s))))
        assert 3.5 <= errs[0] / errs[1] <= 4.5


class TestDiscreteIdentities:
    def test_div_of_curl_of_vorticity_vanishes(self, rng):
        # centered cross-derivatives commute: the identity the Dirichlet
        # route's harmonicity argument rests on
        g = bounded_grid(33, lo=-1.0, hi=1.0)
        w = ScalarField(g, rng.standard_normal(g.shape))
        d = divergence(curl_of_vorticity(w))
        scale = max(1.0, w.max_abs() / min(g.h) ** 2)
        assert np.max(np.abs(interior(d.values))) <= 1e-13 * scale

    def test_div_of_curl_of_vorticity_vanishes_3d(self, rng):
        g = GridSpec((12, 12, 12), (0, 0, 0), (1, 1, 1))
        w = VectorField(g, tuple(rng.standard_normal(g.shape) for _ in range(3)))
        d = divergence(curl_of_vorticity(w))
        scale = max(1.0, w.max_abs() / min(g.h) ** 2)
        assert np.max(np.abs(interior(d.values))) <= 1e-13 * scale

    def test_curl_of_gradient_vanishes(self, rng):
        g = bounded_grid(33)
        s = rng.standard_normal(g.shape)
        grad = VectorField(g, (_deriv1(s, 0, g), _deriv1(s, 1, g)))
        w = curl(grad)
        scale = max(1.0, np.max(np.abs(s)) / min(g.h) ** 2)
        assert np.max(np.abs(interior(w.values))) <= 1e-13 * scale


class TestConvergenceOrder:
    @pytest.mark.parametrize("op", ["curl", "divergence"])
    def test_second_order_on_smooth_bounded_field(self, op):
        errs = []
        for n in (33, 65, 129):
            g = bounded_grid(n, lo=-1.0, hi=1.0)
            x1, x2 = g.mesh()
            u = VectorField(g, (np.sin(2 * x1) * np.cos(x2), np.cos(x1) * np.sin(2 * x2)))
            if op == "curl":
                got = curl(u).values
                exact = -np.sin(x1) * np.sin(2 * x2) + np.sin(2 * x1) * np.sin(x2)
            else:
                got = divergence(u).values
                exact = 2.0 * np.cos(2 * x1) * np.cos(x2) + 2.0 * np.cos(x1) * np.cos(2 * x2)
            errs.append(np.max(np.abs(interior(got) - interior(exact))))
        for e0, e1 in zip(errs, errs[1:]):
            assert 3.5 <= e0 / e1 <= 4.5
