"""Second-order finite-difference curl, divergence and Laplacian.

All operators act on collocated node values.  Interior nodes use centered
differences, bounded edges use second-order one-sided stencils, periodic
axes wrap around.  Centered first derivatives along different axes commute
on a uniform grid, so divergence(curl_of_vorticity(w)) vanishes identically
at strictly interior nodes; the Dirichlet solver path relies on that.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridSpec, ScalarField, VectorField


@dataclass(frozen=True)
class StencilSpec:
    """Difference-scheme selection.  Only second-order centered stencils with
    second-order one-sided boundary closures are implemented; the type exists
    so call sites state the discretization they rely on."""

    order: int = 2
    boundary_scheme: str = "one-sided-2"

    def __post_init__(self):
        if self.order != 2:
            raise ValueError("only second-order stencils are implemented")
        if self.boundary_scheme != "one-sided-2":
            raise ValueError("only the second-order one-sided boundary closure is implemented")


def _deriv1(values: np.ndarray, axis: int, grid: GridSpec) -> np.ndarray:
    """First derivative along one axis."""
    h = grid.h[axis]
    if grid.periodic[axis]:
        return (np.roll(values, -1, axis=axis) - np.roll(values, 1, axis=axis)) / (2.0 * h)

    out = np.empty_like(values)
    sl = lambda s: tuple(s if a == axis else slice(None) for a in range(values.ndim))  # noqa: E731
    out[sl(slice(1, -1))] = (values[sl(slice(2, None))] - values[sl(slice(None, -2))]) / (2.0 * h)
    # one-sided, second order: f'(x0) = (-3 f0 + 4 f1 - f2) / 2h
    out[sl(0)] = (-3.0 * values[sl(0)] + 4.0 * values[sl(1)] - values[sl(2)]) / (2.0 * h)
    out[sl(-1)] = (3.0 * values[sl(-1)] - 4.0 * values[sl(-2)] + values[sl(-3)]) / (2.0 * h)
    return out


def _deriv2(values: np.ndarray, axis: int, grid: GridSpec) -> np.ndarray:
    """Second derivative along one axis."""
    h2 = grid.h[axis] ** 2
    if grid.periodic[axis]:
        return (np.roll(values, -1, axis=axis) - 2.0 * values + np.roll(values, 1, axis=axis)) / h2

    out = np.empty_like(values)
    sl = lambda s: tuple(s if a == axis else slice(None) for a in range(values.ndim))  # noqa: E731
    out[sl(slice(1, -1))] = (
        values[sl(slice(2, None))] - 2.0 * values[sl(slice(1, -1))] + values[sl(slice(None, -2))]
    ) / h2
    # one-sided, second order: f''(x0) = (2 f0 - 5 f1 + 4 f2 - f3) / h^2
    out[sl(0)] = (
        2.0 * values[sl(0)] - 5.0 * values[sl(1)] + 4.0 * values[sl(2)] - values[sl(3)]
    ) / h2
    out[sl(-1)] = (
        2.0 * values[sl(-1)] - 5.0 * values[sl(-2)] + 4.0 * values[sl(-3)] - values[sl(-4)]
    ) / h2
    return out


def curl(u: VectorField, stencil: StencilSpec = StencilSpec()) -> ScalarField | VectorField:
    """Vorticity of a velocity field.

    2D fields give the scalar out-of-plane component w = d(u2)/dx1 - d(u1)/dx2;
    3D fields give the full curl vector.
    """
    g = u.grid
    c = u.components
    if g.dim == 2:
        return ScalarField(g, _deriv1(c[1], 0, g) - _deriv1(c[0], 1, g))
    return VectorField(
        g,
        (
            _deriv1(c[2], 1, g) - _deriv1(c[1], 2, g),
            _deriv1(c[0], 2, g) - _deriv1(c[2], 0, g),
            _deriv1(c[1], 0, g) - _deriv1(c[0], 1, g),
        ),
    )


def curl_of_vorticity(
    omega: ScalarField | VectorField, stencil: StencilSpec = StencilSpec()
) -> VectorField:
    """Curl of a vorticity field (the 2D scalar is the out-of-plane component).

    2D: curl(w zhat) = (dw/dx2, -dw/dx1).  3D: the standard curl.
    """
    g = omega.grid
    if isinstance(omega, ScalarField):
        if g.dim != 2:
            raise ValueError("scalar vorticity is only meaningful on 2D grids")
        w = omega.values
        return VectorField(g, (_deriv1(w, 1, g), -_deriv1(w, 0, g)))
    if g.dim != 3:
        raise ValueError("vector vorticity is only meaningful on 3D grids")
    return curl(omega, stencil)


def divergence(u: VectorField, stencil: StencilSpec = StencilSpec()) -> ScalarField:
    g = u.grid
    div = _deriv1(u.components[0], 0, g)
    for a in range(1, g.dim):
        div = div + _deriv1(u.components[a], a, g)
    return ScalarField(g, div)


def laplacian(s: ScalarField, stencil: StencilSpec = StencilSpec()) -> ScalarField:
    g = s.grid
    lap = _deriv2(s.values, 0, g)
    for a in range(1, g.dim):
        lap = lap + _deriv2(s.values, a, g)
    return ScalarField(g, lap)
