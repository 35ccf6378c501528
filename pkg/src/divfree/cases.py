"""Test-flow generators: the wall-bounded recirculating flow built from
trigonometric-hyperbolic characteristic functions, sharp moving-box fields,
and small periodic fixture fields for property checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import Box, GeometryError, GridSpec, RegionMask, ScalarField, VectorField, build_mask


@dataclass(frozen=True)
class ChandrasekharReidParams:
    """Parameters of the characteristic function phi(x) = cos(lam*x) + a*cosh(pi*x/2).

    ``a`` is fixed by phi(+-1) = 0 and the normalization ``g`` makes the peak
    speed of the resulting velocity field one.
    """

    lam: float = 2.64

    def __post_init__(self):
        if abs(self.g) < 1e-12:
            raise ValueError(f"degenerate normalization: g vanishes at lam={self.lam}")

    @property
    def a_lam(self) -> float:
        return -math.cos(self.lam) / math.cosh(math.pi / 2.0)

    @property
    def g(self) -> float:
        half = self.lam / 2.0
        return (1.0 + self.a_lam) * (
            (math.pi / 2.0) * self.a_lam * math.sinh(math.pi / 4.0) - self.lam * math.sin(half)
        )


def characteristic_phi(x, params: ChandrasekharReidParams = ChandrasekharReidParams()):
    """phi(x); vanishes at x = +-1 to rounding accuracy."""
    x = np.asarray(x, dtype=float)
    return np.cos(params.lam * x) + params.a_lam * np.cosh(0.5 * np.pi * x)


def phi_prime(x, params: ChandrasekharReidParams = ChandrasekharReidParams()):
    """d(phi)/dx."""
    x = np.asarray(x, dtype=float)
    return -params.lam * np.sin(params.lam * x) + 0.5 * np.pi * params.a_lam * np.sinh(0.5 * np.pi * x)


def chandrasekhar_reid_field(
    grid: GridSpec, params: ChandrasekharReidParams = ChandrasekharReidParams()
) -> tuple[VectorField, ScalarField]:
    """No-slip recirculating flow on [-1,1]^2, derived from the streamfunction
    psi = phi(x1) phi(x2) / g.

    u1 = phi(x1) phi'(x2) / g, u2 = -phi(x2) phi'(x1) / g, evaluated
    analytically at the nodes.  On grids larger than [-1,1]^2 the field is
    zero outside the flow square.  Returns (velocity, streamfunction).
    """
    if grid.dim != 2:
        raise GeometryError("the recirculating test flow is two-dimensional")
    for a in range(2):
        if grid.lo[a] > -1.0 + 1e-12 or grid.hi[a] < 1.0 - 1e-12:
            raise GeometryError("grid must cover the flow square [-1,1]^2")
    x1, x2 = grid.mesh()
    tol = 1e-9 * min(grid.h)
    inside = (np.abs(x1) <= 1.0 + tol) & (np.abs(x2) <= 1.0 + tol)

    p1, p2 = characteristic_phi(x1, params), characteristic_phi(x2, params)
    d1, d2 = phi_prime(x1, params), phi_prime(x2, params)
    g = params.g
    u1 = np.where(inside, p1 * d2 / g, 0.0)
    u2 = np.where(inside, -p2 * d1 / g, 0.0)
    psi = np.where(inside, p1 * p2 / g, 0.0)
    return VectorField(grid, (u1, u2)), ScalarField(grid, psi)


def moving_box_field(grid: GridSpec, box: Box, u_s) -> VectorField:
    """Sharp immersed field: ``u_s`` inside the box, zero outside.

    Deliberately discontinuous; the box must sit strictly inside the grid.
    """
    u_s = tuple(float(v) for v in u_s)
    if len(u_s) != grid.dim:
        raise GeometryError(f"velocity must have {grid.dim} components")
    tol = tuple(1e-9 * h for h in grid.h)
    for a in range(grid.dim):
        if box.lo[a] <= grid.lo[a] + tol[a] or box.hi[a] >= grid.hi[a] - tol[a]:
            raise GeometryError("box must sit strictly inside the grid")
    inside = box.contains(grid.mesh(), tol)
    return VectorField(grid, tuple(np.where(inside, v, 0.0) for v in u_s))


def library_fields(name: str, grid: GridSpec) -> VectorField:
    """Periodic fixture fields on [0,2pi)^2.

    taylor_green: (sin x1 cos x2, -cos x1 sin x2), solenoidal and mean-free.
    gradient:     grad(sin x1 sin x2), curl-free.
    shear:        (sin x2, 0), solenoidal.
    """
    if not grid.all_periodic or grid.dim != 2:
        raise GeometryError("library fields live on fully periodic 2D grids")
    for a in range(2):
        if abs(grid.extent[a] - 2.0 * np.pi) > 1e-12:
            raise GeometryError("library fields assume a 2*pi-periodic box")
    x1, x2 = grid.mesh()
    if name == "taylor_green":
        return VectorField(grid, (np.sin(x1) * np.cos(x2), -np.cos(x1) * np.sin(x2)))
    if name == "gradient":
        return VectorField(grid, (np.cos(x1) * np.sin(x2), np.sin(x1) * np.cos(x2)))
    if name == "shear":
        return VectorField(grid, (np.sin(x2), np.zeros(grid.shape)))
    raise ValueError(f"unknown library field {name!r}")


# ---------------------------------------------------------------------------
# Ready-made experiment setups (shared by the CLI and the refinement studies)

OBSTACLE_HALF_WIDTH = 10.0 * math.pi / 128.0  # square / cube half-width


@dataclass(frozen=True)
class CaseSetup:
    grid: GridSpec
    mask: RegionMask
    u_star: VectorField
    givens: dict


DEFAULT_MARGIN = {"cr": 0.125, "square": 0.0, "cube": 0.0,
                  "taylor_green": 0.0, "gradient": 0.0, "shear": 0.0}


def case_setup(
    name: str,
    n: int,
    periodic: bool,
    margin: float | None = None,
    u_solid=None,
    lam: float = 2.64,
    half_width: float | None = None,
) -> CaseSetup:
    """Build grid, mask, initial field and prescribed velocities for a named case.

    ``margin`` is the zero-velocity band thickness as a fraction of the flow
    domain extent (0.125 on [-1,1] gives a band of width 0.25 and a solution
    box [-1.25, 1.25]).  ``None`` selects the per-case default: 0.125 for the
    recirculating flow, 0 for the obstacle cases whose fields already vanish
    near the outer boundary.
    """
    if margin is None:
        margin = DEFAULT_MARGIN.get(name, 0.0)
    if name == "cr":
        width = margin * 2.0
        grid = GridSpec((n, n), (-1.0 - width,) * 2, (1.0 + width,) * 2, periodic)
        mask = build_mask(grid, margin_width=width)
        u_star, _ = chandrasekhar_reid_field(grid, ChandrasekharReidParams(lam))
        return CaseSetup(grid, mask, u_star, {})

    if name in ("square", "cube"):
        dim = 2 if name == "square" else 3
        hw = OBSTACLE_HALF_WIDTH if half_width is None else float(half_width)
        u_s = ((1.0, 0.0) if dim == 2 else (1.0, 0.0, 0.0)) if u_solid is None else tuple(u_solid)
        grid = GridSpec((n,) * dim, (0.0,) * dim, (2.0 * math.pi,) * dim, periodic)
        box = Box.centered((math.pi,) * dim, hw, name="obstacle")
        width = margin * 2.0 * math.pi
        mask = build_mask(grid, solids=[box], margin_width=width)
        return CaseSetup(grid, mask, VectorField.zeros(grid), {"obstacle": u_s})

    if name in ("taylor_green", "gradient", "shear"):
        grid = GridSpec((n, n), (0.0, 0.0), (2.0 * math.pi,) * 2, periodic=True)
        mask = build_mask(grid)
        return CaseSetup(grid, mask, library_fields(name, grid), {})

    raise ValueError(f"unknown case {name!r}")
