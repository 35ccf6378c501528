"""Divergence norms, extremum localization, harmonicity checks and
grid-refinement studies.

Reports are bit-reproducible: reductions run in fixed (lexicographic) order
over node subsets selected from the region mask.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import diffops
from .grid import MARGIN, REGION_NAMES, GridSpec, RegionMask, ScalarField, VectorField
from .spectral import forward_dft, spectral_divergence

RESTRICTIONS = ("all", "non_margin", "fluid", "fluid_interior")


@dataclass(frozen=True, eq=False)
class DivergenceReport:
    """Norms and extremum location of a divergence field over a node subset.

    ``linf``/``l2`` are taken over the restriction subset; for the
    ``fluid_interior`` restriction the secondary ``linf_all``/``l2_all``
    cover every fluid node including those next to a region boundary.
    ``field_max`` is the max absolute velocity component of the field the
    divergence belongs to.
    """

    stage: str
    method: str
    linf: float
    l2: float
    argmax_index: tuple[int, ...]
    argmax_region: str
    on_outer_boundary: bool
    field_max: float
    grid: GridSpec
    linf_all: float | None = None
    l2_all: float | None = None


def _node_weights(grid: GridSpec) -> np.ndarray:
    """Quadrature weight per node; sums exactly to the domain volume."""
    w = np.ones(grid.shape)
    for a in range(grid.dim):
        if not grid.periodic[a]:
            sl0 = tuple(0 if b == a else slice(None) for b in range(grid.dim))
            sl1 = tuple(-1 if b == a else slice(None) for b in range(grid.dim))
            w[sl0] *= 0.5
            w[sl1] *= 0.5
    return w * grid.node_volume()


def _norms(div: np.ndarray, weights: np.ndarray, select: np.ndarray):
    vals = np.abs(np.where(select, div, 0.0))
    linf = float(vals.max())
    l2 = float(np.sqrt(np.sum(div * div * weights * select)))
    if linf == 0.0:
        flat = int(np.argmax(select))  # first selected node for all-zero fields
    else:
        flat = int(np.argmax(vals))
    return linf, l2, np.unravel_index(flat, div.shape)


def _selection(mask: RegionMask, restrict: str) -> np.ndarray:
    if restrict == "all":
        return np.ones(mask.grid.shape, dtype=bool)
    if restrict == "non_margin":
        return mask.labels != MARGIN
    if restrict == "fluid":
        return mask.labels == 0
    if restrict == "fluid_interior":
        return mask.fluid_interior()
    raise ValueError(f"unknown restriction {restrict!r}")


def divergence_field(u: VectorField, method: str) -> ScalarField:
    if method == "fd":
        return diffops.divergence(u)
    if method == "spectral":
        return spectral_divergence(forward_dft(u))
    raise ValueError(f"unknown divergence method {method!r}")


def divergence_report(
    u: VectorField,
    mask: RegionMask,
    method: str = "fd",
    stage: str = "solved",
    restrict: str = "all",
) -> DivergenceReport:
    """Divergence norms of ``u`` over the requested node subset.

    The spectral method needs a fully periodic grid.  The argmax is located
    within the subset and tagged with its mask region; ``on_outer_boundary``
    flags whether it sits on a bounded outer face of the box.
    """
    grid = u.grid
    if mask.grid != grid:
        raise ValueError("field and mask are on different grids")
    div = divergence_field(u, method).values
    select = _selection(mask, restrict)
    if not select.any():
        raise ValueError(f"restriction {restrict!r} selects no nodes")
    weights = _node_weights(grid)

    linf, l2, idx = _norms(div, weights, select)
    on_edge = any(
        not grid.periodic[a] and idx[a] in (0, grid.n[a] - 1) for a in range(grid.dim)
    )
    linf_all = l2_all = None
    if restrict == "fluid_interior":
        linf_all, l2_all, _ = _norms(div, weights, _selection(mask, "fluid"))
    return DivergenceReport(
        stage=stage,
        method=method,
        linf=linf,
        l2=l2,
        argmax_index=tuple(int(i) for i in idx),
        argmax_region=REGION_NAMES[int(mask.labels[idx])],
        on_outer_boundary=bool(on_edge),
        field_max=u.max_abs(),
        grid=grid,
        linf_all=linf_all,
        l2_all=l2_all,
    )


def harmonicity_check(u: VectorField) -> float:
    """Max |laplacian(divergence(u))| over deep-interior nodes, normalized by
    max(1, max|div u|).

    Small values are a property of converged Dirichlet solves (divergence is
    discretely harmonic there), not of arbitrary fields.
    """
    div = diffops.divergence(u)
    lap = diffops.laplacian(div).values
    deep = tuple(
        slice(None) if u.grid.periodic[a] else slice(2, -2) for a in range(u.grid.dim)
    )
    return float(np.max(np.abs(lap[deep]))) / max(1.0, div.max_abs())


@dataclass(frozen=True)
class RefinementRow:
    n: int
    linf: float
    l2: float


def refinement_study(case: str, backend: str, sizes, **kwargs) -> list[RefinementRow]:
    """Rerun a case over a list of grid sizes.

    For ``case='manufactured_poisson'`` (fd backend) the rows carry the
    solution error against the analytic solution sin(pi x1) sin(pi x2) on
    [0,1]^2.  For the named pipeline cases the rows carry the divergence
    norms of the solved extended field, using the backend's own divergence
    operator.
    """
    from .cases import case_setup  # local import; cases has no heavy deps
    from .pipeline import SolveConfig, construct_solenoidal
    from .sor import SorConfig, solve_poisson_dirichlet

    rows = []
    for n in sizes:
        n = int(n)
        if case == "manufactured_poisson":
            if backend != "fd":
                raise ValueError("the manufactured Poisson study is a finite-difference check")
            grid = GridSpec((n, n), (0.0, 0.0), (1.0, 1.0), periodic=False)
            x1, x2 = grid.mesh()
            exact = np.sin(np.pi * x1) * np.sin(np.pi * x2)
            rhs = ScalarField(grid, -2.0 * np.pi**2 * exact)
            sol, _, _ = solve_poisson_dirichlet(rhs, kwargs.get("sor", SorConfig(tol=1e-10)))
            err = sol.values - exact
            interior = (slice(1, -1), slice(1, -1))
            weights = _node_weights(grid)
            rows.append(
                RefinementRow(
                    n=n,
                    linf=float(np.max(np.abs(err[interior]))),
                    l2=float(np.sqrt(np.sum(err * err * weights))),
                )
            )
            continue

        setup = case_setup(case, n, periodic=(backend == "spectral"),
                           margin=kwargs.get("margin"))
        config = SolveConfig(backend=backend, sor=kwargs.get("sor", SorConfig()))
        result = construct_solenoidal(setup.u_star, setup.mask, setup.givens, config)
        report = divergence_report(
            result.u_extended, setup.mask, method=backend, stage="solved", restrict="all"
        )
        rows.append(RefinementRow(n=n, linf=report.linf, l2=report.l2))
    return rows
