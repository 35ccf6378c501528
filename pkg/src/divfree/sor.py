"""Point successive over-relaxation for the Dirichlet vector Poisson problem.

Solves laplacian(s) = rhs on bounded grids with s = 0 pinned on the outer
boundary, one scalar component at a time.  The lexicographic sweep is
strictly sequential and bit-reproducible; the red-black variant updates the
two colors in phases and may be parallelized without changing results.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .grid import GridSpec, ScalarField, VectorField


class ConvergenceError(RuntimeError):
    """Iteration cap hit before the residual tolerance; carries the history."""

    def __init__(self, message: str, residual_history):
        super().__init__(message)
        self.residual_history = list(residual_history)


@dataclass(frozen=True)
class SorConfig:
    """Relaxation factor, stopping rule, iteration cap and sweep ordering.

    ``tol`` is on the max-norm of the interior residual, relative to
    max(1, max|rhs|).  ``max_iters=None`` resolves to 200 * max(n) when the
    solve starts.
    """

    relaxation: float = 1.8
    tol: float = 1e-8
    max_iters: int | None = None
    sweep: str = "lexicographic"

    def __post_init__(self):
        if not 0.0 < self.relaxation < 2.0:
            raise ValueError("relaxation must lie in (0, 2)")
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")
        if self.max_iters is not None and self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if self.sweep not in ("lexicographic", "red-black"):
            raise ValueError(f"unknown sweep ordering {self.sweep!r}")

    def resolved_max_iters(self, grid: GridSpec) -> int:
        return self.max_iters if self.max_iters is not None else 200 * max(grid.n)


@njit(cache=True)
def _sweep_2d(s, rhs, ihx2, ihy2, omega, color):
    # color < 0: lexicographic full sweep; 0/1: that red-black phase only
    diag = 2.0 * (ihx2 + ihy2)
    n1, n2 = s.shape
    for i in range(1, n1 - 1):
        for j in range(1, n2 - 1):
            if color >= 0 and (i + j) % 2 != color:
                continue
            gs = ((s[i - 1, j] + s[i + 1, j]) * ihx2 + (s[i, j - 1] + s[i, j + 1]) * ihy2 - rhs[i, j]) / diag
            s[i, j] = (1.0 - omega) * s[i, j] + omega * gs


@njit(cache=True)
def _residual_2d(s, rhs, ihx2, ihy2):
    n1, n2 = s.shape
    worst = 0.0
    for i in range(1, n1 - 1):
        for j in range(1, n2 - 1):
            lap = (s[i - 1, j] - 2.0 * s[i, j] + s[i + 1, j]) * ihx2 + (
                s[i, j - 1] - 2.0 * s[i, j] + s[i, j + 1]
            ) * ihy2
            r = abs(lap - rhs[i, j])
            if r > worst:
                worst = r
    return worst


@njit(cache=True)
def _sweep_3d(s, rhs, ihx2, ihy2, ihz2, omega, color):
    diag = 2.0 * (ihx2 + ihy2 + ihz2)
    n1, n2, n3 = s.shape
    for i in range(1, n1 - 1):
        for j in range(1, n2 - 1):
            for k in range(1, n3 - 1):
                if color >= 0 and (i + j + k) % 2 != color:
                    continue
                gs = (
                    (s[i - 1, j, k] + s[i + 1, j, k]) * ihx2
                    + (s[i, j - 1, k] + s[i, j + 1, k]) * ihy2
                    + (s[i, j, k - 1] + s[i, j, k + 1]) * ihz2
                    - rhs[i, j, k]
                ) / diag
                s[i, j, k] = (1.0 - omega) * s[i, j, k] + omega * gs


@njit(cache=True)
def _residual_3d(s, rhs, ihx2, ihy2, ihz2):
    n1, n2, n3 = s.shape
    worst = 0.0
    for i in range(1, n1 - 1):
        for j in range(1, n2 - 1):
            for k in range(1, n3 - 1):
                lap = (
                    (s[i - 1, j, k] - 2.0 * s[i, j, k] + s[i + 1, j, k]) * ihx2
                    + (s[i, j - 1, k] - 2.0 * s[i, j, k] + s[i, j + 1, k]) * ihy2
                    + (s[i, j, k - 1] - 2.0 * s[i, j, k] + s[i, j, k + 1]) * ihz2
                )
                r = abs(lap - rhs[i, j, k])
                if r > worst:
                    worst = r
    return worst


def solve_poisson_dirichlet(
    rhs: ScalarField, config: SorConfig = SorConfig()
) -> tuple[ScalarField, int, float]:
    """Solve laplacian(s) = rhs with s = 0 on the outer boundary.

    Returns (solution, sweeps used, final residual max-norm).  Raises
    ConvergenceError with the residual history if the cap is reached.
    """
    grid = rhs.grid
    if not grid.all_bounded:
        raise ValueError("the Dirichlet solver needs a bounded (non-periodic) grid")

    b = rhs.values
    interior = tuple(slice(1, -1) for _ in range(grid.dim))
    scale = float(np.max(np.abs(b[interior]))) if b[interior].size else 0.0
    threshold = config.tol * max(1.0, scale)
    max_iters = config.resolved_max_iters(grid)

    s = np.zeros(grid.shape)
    inv_h2 = tuple(1.0 / h**2 for h in grid.h)
    colors = (-1,) if config.sweep == "lexicographic" else (0, 1)
    history = []
    for it in range(1, max_iters + 1):
        if grid.dim == 2:
            for color in colors:
                _sweep_2d(s, b, inv_h2[0], inv_h2[1], config.relaxation, color)
            res = _residual_2d(s, b, inv_h2[0], inv_h2[1])
        else:
            for color in colors:
                _sweep_3d(s, b, inv_h2[0], inv_h2[1], inv_h2[2], config.relaxation, color)
            res = _residual_3d(s, b, inv_h2[0], inv_h2[1], inv_h2[2])
        history.append(float(res))
        if res <= threshold:
            return ScalarField(grid, s), it, float(res)

    raise ConvergenceError(
        f"PSOR did not reach residual {threshold:.3e} within {max_iters} sweeps "
        f"(last residual {history[-1]:.3e})",
        history,
    )


def solve_velocity_dirichlet(rhs: VectorField, config: SorConfig = SorConfig()) -> VectorField:
    """Componentwise Dirichlet Poisson solve; the component problems are uncoupled."""
    comps = []
    for c, values in enumerate(rhs.components):
        try:
            sol, _, _ = solve_poisson_dirichlet(ScalarField(rhs.grid, values), config)
        except ConvergenceError as err:
            raise ConvergenceError(
                f"velocity component {c + 1}: {err}", err.residual_history
            ) from err
        comps.append(sol.values)
    return VectorField(rhs.grid, tuple(comps))
