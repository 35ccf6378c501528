import numpy as np
import pytest

from divfree import (
    ConvergenceError,
    GridSpec,
    ScalarField,
    SorConfig,
    VectorField,
    solve_poisson_dirichlet,
    solve_velocity_dirichlet,
)
from tests.conftest import bounded_grid


def manufactured(n):
    """laplacian(s) = -2 pi^2 sin(pi x1) sin(pi x2) on [0,1]^2, s=0 on the walls."""
    g = bounded_grid(n)
    x1, x2 = g.mesh()
    exact = np.sin(np.pi * x1) * np.sin(np.pi * x2)
    return g, ScalarField(g, -2.0 * np.pi**2 * exact), exact


class TestSolvePoissonDirichlet:
    def test_manufactured_solution(self):
        g, rhs, exact = manufactured(65)
        sol, iters, res = solve_poisson_dirichlet(rhs, SorConfig(tol=1e-10))
        err = np.max(np.abs(sol.values[1:-1, 1:-1] - exact[1:-1, 1:-1]))
        h = g.h[0]
        assert err <= 2.0 * h**2  # interior max error bounded by C h^2
        assert np.all(sol.values[0, :] == 0.0) and np.all(sol.values[:, -1] == 0.0)
        assert iters >= 1 and res <= 1e-10 * 2.0 * np.pi**2

    def test_zero_rhs_converges_in_one_sweep(self):
        g = bounded_grid(33)
        sol, iters, res = solve_poisson_dirichlet(ScalarField(g, np.zeros(g.shape)))
        assert iters == 1
        assert res == 0.0
        assert np.all(sol.values == 0.0)

    def test_second_order_convergence_under_refinement(self):
        errs = []
        for n in (33, 65, 129):
            _, rhs, exact = manufactured(n)
            sol, _, _ = solve_poisson_dirichlet(rhs, SorConfig(tol=1e-10))
            errs.append(np.max(np.abs(sol.values - exact)))
        for e0, e1 in zip(errs, errs[1:]):
            assert 3.5 <= e0 / e1 <= 4.5

    def test_monotone_residual_for_relaxation_at_most_one(self):
        _, rhs, _ = manufactured(33)
        for omega in (0.8, 1.0):
            with pytest.raises(ConvergenceError) as excinfo:
                solve_poisson_dirichlet(rhs, SorConfig(relaxation=omega, tol=1e-30, max_iters=400))
            hist = np.array(excinfo.value.residual_history)
            assert np.all(np.diff(hist) <= 1e-12 * hist[0])

    def test_red_black_agrees_with_lexicographic(self):
        _, rhs, _ = manufactured(65)
        tol = 1e-8
        lex, _, _ = solve_poisson_dirichlet(rhs, SorConfig(tol=tol))
        rb, _, _ = solve_poisson_dirichlet(rhs, SorConfig(tol=tol, sweep="red-black"))
        assert np.max(np.abs(lex.values - rb.values)) <= 10.0 * tol

    def test_lexicographic_sweep_is_bit_deterministic(self):
        _, rhs, _ = manufactured(33)
        a, ia, ra = solve_poisson_dirichlet(rhs, SorConfig())
        b, ib, rb = solve_poisson_dirichlet(rhs, SorConfig())
        assert ia == ib and ra == rb
        assert np.array_equal(a.values, b.values)

    def test_non_convergence_raises_with_history(self):
        _, rhs, _ = manufactured(33)
        with pytest.raises(ConvergenceError) as excinfo:
            solve_poisson_dirichlet(rhs, SorConfig(tol=1e-14, max_iters=10))
        assert len(excinfo.value.residual_history) == 10

    def test_periodic_grid_rejected(self):
        g = GridSpec((16, 16), (0, 0), (1, 1), periodic=True)
        with pytest.raises(ValueError):
            solve_poisson_dirichlet(ScalarField(g, np.zeros(g.shape)))

    def test_3d_manufactured_solution(self):
        g = GridSpec((17, 17, 17), (0, 0, 0), (1, 1, 1))
        x1, x2, x3 = g.mesh()
        exact = np.sin(np.pi * x1) * np.sin(np.pi * x2) * np.sin(np.pi * x3)
        rhs = ScalarField(g, -3.0 * np.pi**2 * exact)
        sol, _, _ = solve_poisson_dirichlet(rhs, SorConfig(tol=1e-9))
        assert np.max(np.abs(sol.values - exact)) <= 3.0 * g.h[0] ** 2


class TestSolveVelocityDirichlet:
    def test_zero_rhs(self):
        g = bounded_grid(17)
        u = solve_velocity_dirichlet(VectorField.zeros(g))
        assert u.max_abs() == 0.0

    def test_componentwise_equivalence(self):
        g, rhs, _ = manufactured(33)
        vec = VectorField(g, (rhs.values, 2.0 * rhs.values))
        u = solve_velocity_dirichlet(vec, SorConfig())
        s0, _, _ = solve_poisson_dirichlet(rhs, SorConfig())
        assert np.array_equal(u.components[0], s0.values)
        # linear problem: doubling the rhs doubles the solution (to solver accuracy)
        assert np.max(np.abs(u.components[1] - 2.0 * s0.values)) <= 1e-6

    def test_failure_identifies_component(self):
        g, rhs, _ = manufactured(33)
        vec = VectorField(g, (np.zeros(g.shape), rhs.values))
        with pytest.raises(ConvergenceError, match="component 2"):
            solve_velocity_dirichlet(vec, SorConfig(tol=1e-14, max_iters=5))
