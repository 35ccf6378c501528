"""Regular Cartesian grids, region masks, and the embed/extract operations.

The solver works on a regular box D that contains the actual flow domain.
Nodes of D are classified as FLUID (the flow region), SOLID (immersed
obstacles), GIVEN (regions with prescribed velocity), or MARGIN (the
zero-velocity band next to the outer boundary).  ``embed`` extends a flow
field onto all of D through that classification and ``extract`` restricts a
solved field back to the fluid nodes.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, replace

import numpy as np

FLUID = 0
SOLID = 1
GIVEN = 2
MARGIN = 3

REGION_NAMES = {FLUID: "FLUID", SOLID: "SOLID", GIVEN: "GIVEN", MARGIN: "MARGIN"}


class GeometryError(ValueError):
    """Raised for inconsistent domain geometry (boxes, margins, bounds)."""


class ConfigurationError(ValueError):
    """Raised when a run is configured inconsistently (e.g. missing velocities)."""


def _as_tuple(value, dim, cast):
    if np.isscalar(value):
        return (cast(value),) * dim
    out = tuple(cast(v) for v in value)
    if len(out) != dim:
        raise GeometryError(f"expected {dim} per-axis values, got {len(out)}")
    return out


@dataclass(frozen=True)
class GridSpec:
    """Uniform node-centered grid on a box, 2D or 3D.

    Bounded axes place ``n`` nodes on [lo, hi] including both endpoints
    (h = (hi-lo)/(n-1)); periodic axes place ``n`` nodes on [lo, hi) and the
    duplicate endpoint is excluded (h = (hi-lo)/n).
    """

    n: tuple[int, ...]
    lo: tuple[float, ...]
    hi: tuple[float, ...]
    periodic: tuple[bool, ...]

    def __init__(self, n, lo, hi, periodic=False):
        dim = len(n) if not np.isscalar(n) else None
        if dim is None:
            raise GeometryError("n must be a per-axis sequence, e.g. (256, 256)")
        object.__setattr__(self, "n", _as_tuple(n, dim, int))
        object.__setattr__(self, "lo", _as_tuple(lo, dim, float))
        object.__setattr__(self, "hi", _as_tuple(hi, dim, float))
        object.__setattr__(self, "periodic", _as_tuple(periodic, dim, bool))
        if dim not in (2, 3):
            raise GeometryError(f"only 2D and 3D grids are supported, got dim={dim}")
        for a in range(dim):
            if self.n[a] < 8:
                raise GeometryError(f"need at least 8 nodes per axis, got n[{a}]={self.n[a]}")
            if not self.hi[a] > self.lo[a]:
                raise GeometryError(f"hi must exceed lo on axis {a}")

    @property
    def dim(self) -> int:
        return len(self.n)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.n

    @property
    def h(self) -> tuple[float, ...]:
        return tuple(
            (self.hi[a] - self.lo[a]) / (self.n[a] if self.periodic[a] else self.n[a] - 1)
            for a in range(self.dim)
        )

    @property
    def extent(self) -> tuple[float, ...]:
        return tuple(self.hi[a] - self.lo[a] for a in range(self.dim))

    @property
    def all_periodic(self) -> bool:
        return all(self.periodic)

    @property
    def all_bounded(self) -> bool:
        return not any(self.periodic)

    def axis_coords(self, axis: int) -> np.ndarray:
        """Node coordinates along one axis."""
        if self.periodic[axis]:
            return self.lo[axis] + self.h[axis] * np.arange(self.n[axis])
        return np.linspace(self.lo[axis], self.hi[axis], self.n[axis])

    def mesh(self) -> tuple[np.ndarray, ...]:
        """Full coordinate arrays, 'ij' indexing (axis 0 is x1)."""
        return tuple(np.meshgrid(*(self.axis_coords(a) for a in range(self.dim)), indexing="ij"))

    def node_volume(self) -> float:
        return float(np.prod(self.h))


def _check_values(grid: GridSpec, values: np.ndarray, what: str) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.shape != grid.shape:
        raise GeometryError(f"{what} shape {values.shape} does not match grid {grid.shape}")
    if not np.all(np.isfinite(values)):
        raise ValueError(f"{what} contains non-finite entries")
    return values


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Scalar samples on grid nodes (divergence, 2D vorticity, streamfunction...)."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.grid, self.values, "scalar field"))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))


@dataclass(frozen=True, eq=False)
class VectorField:
    """dim-component vector samples on grid nodes."""

    grid: GridSpec
    components: tuple[np.ndarray, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) != self.grid.dim:
            raise GeometryError(
                f"expected {self.grid.dim} components, got {len(comps)}"
            )
        comps = tuple(_check_values(self.grid, c, f"component {i}") for i, c in enumerate(comps))
        object.__setattr__(self, "components", comps)

    @classmethod
    def zeros(cls, grid: GridSpec) -> "VectorField":
        return cls(grid, tuple(np.zeros(grid.shape) for _ in range(grid.dim)))

    def max_abs(self) -> float:
        return max(float(np.max(np.abs(c))) for c in self.components)


@dataclass(frozen=True)
class Box:
    """Axis-aligned box, used for immersed obstacles and given-velocity regions."""

    lo: tuple[float, ...]
    hi: tuple[float, ...]
    name: str = ""

    def __init__(self, lo, hi, name=""):
        lo = tuple(float(v) for v in lo)
        hi = tuple(float(v) for v in hi)
        if len(lo) != len(hi):
            raise GeometryError("box lo/hi dimension mismatch")
        for a in range(len(lo)):
            if hi[a] < lo[a]:
                raise GeometryError("box hi must not be below lo")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "name", str(name))

    @classmethod
    def centered(cls, center: Sequence[float], half_width: float, name: str = "") -> "Box":
        c = tuple(float(v) for v in center)
        return cls(tuple(v - half_width for v in c), tuple(v + half_width for v in c), name)

    def contains(self, mesh: tuple[np.ndarray, ...], tol: Sequence[float]) -> np.ndarray:
        """Boolean node mask; faces are inclusive within tol."""
        inside = np.ones(mesh[0].shape, dtype=bool)
        for a, x in enumerate(mesh):
            inside &= (x >= self.lo[a] - tol[a]) & (x <= self.hi[a] + tol[a])
        return inside


@dataclass(frozen=True, eq=False)
class RegionMask:
    """Per-node region labels plus the geometry they were built from."""

    grid: GridSpec
    labels: np.ndarray
    margin_width: tuple[float, ...]
    solids: tuple[Box, ...] = ()
    givens: tuple[Box, ...] = ()

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int8)
        if labels.shape != self.grid.shape:
            raise GeometryError("label array shape does not match grid")
        object.__setattr__(self, "labels", labels)

    @property
    def regions(self) -> tuple[Box, ...]:
        return self.solids + self.givens

    def count(self, label: int) -> int:
        return int(np.count_nonzero(self.labels == label))

    def fluid_interior(self) -> np.ndarray:
        """FLUID nodes whose full centered stencil stays inside FLUID.

        Nodes adjacent to a non-fluid region, and nodes on a bounded outer
        face, are excluded; this is the set used for extracted-field
        divergence diagnostics (one-sided / cross-region stencils would
        pollute them).
        """
        fluid = self.labels == FLUID
        interior = fluid.copy()
        for a in range(self.grid.dim):
            if self.grid.periodic[a]:
                interior &= np.roll(fluid, 1, axis=a) & np.roll(fluid, -1, axis=a)
            else:
                shifted_lo = np.ones_like(fluid)
                shifted_hi = np.ones_like(fluid)
                sl_in = [slice(None)] * self.grid.dim
                sl_lo = [slice(None)] * self.grid.dim
                sl_in[a] = slice(1, None)
                sl_lo[a] = slice(None, -1)
                shifted_lo[tuple(sl_in)] = fluid[tuple(sl_lo)]
                shifted_hi[tuple(sl_lo)] = fluid[tuple(sl_in)]
                # outer faces have no neighbour on one side: drop them
                edge_lo = [slice(None)] * self.grid.dim
                edge_hi = [slice(None)] * self.grid.dim
                edge_lo[a] = 0
                edge_hi[a] = -1
                shifted_lo[tuple(edge_lo)] = False
                shifted_hi[tuple(edge_hi)] = False
                interior &= shifted_lo & shifted_hi
        return interior


def _node_tol(grid: GridSpec) -> tuple[float, ...]:
    # small compared to the spacing, large compared to rounding of coordinates
    return tuple(1e-9 * h for h in grid.h)


def build_mask(
    grid: GridSpec,
    solids: Sequence[Box] = (),
    givens: Sequence[Box] = (),
    margin_width: float | Sequence[float] = 0.0,
) -> RegionMask:
    """Classify grid nodes into FLUID / SOLID / GIVEN / MARGIN.

    Nodes within ``margin_width`` of the outer boundary are tagged MARGIN,
    nodes inside the solid / given boxes SOLID / GIVEN, everything else
    FLUID.  Boxes must lie inside the margin-shrunk domain.
    """
    mw = _as_tuple(margin_width, grid.dim, float)
    tol = _node_tol(grid)
    for a in range(grid.dim):
        if mw[a] < 0:
            raise GeometryError("margin_width must be non-negative")
        if mw[a] > 0.5 * grid.extent[a]:
            raise GeometryError(
                f"margin_width {mw[a]} exceeds half the domain extent on axis {a}"
            )

    mesh = grid.mesh()
    labels = np.full(grid.shape, FLUID, dtype=np.int8)
    for a in range(grid.dim):
        if mw[a] > 0:
            labels[mesh[a] < grid.lo[a] + mw[a] - tol[a]] = MARGIN
            labels[mesh[a] > grid.hi[a] - mw[a] + tol[a]] = MARGIN

    def place(boxes, label, prefix):
        named = []
        for i, box in enumerate(boxes):
            if not box.name:
                box = replace(box, name=f"{prefix}{i}")
            for a in range(grid.dim):
                if box.lo[a] < grid.lo[a] + mw[a] - tol[a] or box.hi[a] > grid.hi[a] - mw[a] + tol[a]:
                    raise GeometryError(
                        f"box {box.name!r} extends into the margin or outside the domain"
                    )
            labels[box.contains(mesh, tol)] = label
            named.append(box)
        return tuple(named)

    solids_named = place(solids, SOLID, "solid")
    givens_named = place(givens, GIVEN, "given")
    return RegionMask(grid, labels, mw, solids_named, givens_named)


def embed(
    u_star: VectorField,
    mask: RegionMask,
    given_velocities: Mapping[str, Sequence[float]] | None = None,
) -> VectorField:
    """Extend a flow field onto the whole box.

    The result equals ``u_star`` on FLUID nodes (bitwise), the prescribed
    constant velocity on each SOLID / GIVEN region, and exactly 0.0 on
    MARGIN nodes.
    """
    if u_star.grid != mask.grid:
        raise GeometryError("field and mask are on different grids")
    given_velocities = given_velocities or {}
    for box in mask.regions:
        if box.name not in given_velocities:
            raise ConfigurationError(f"no prescribed velocity for region {box.name!r}")

    fluid = mask.labels == FLUID
    comps = [np.where(fluid, c, 0.0) for c in u_star.components]
    mesh = mask.grid.mesh()
    tol = _node_tol(mask.grid)
    for box in mask.regions:
        vel = tuple(float(v) for v in given_velocities[box.name])
        if len(vel) != mask.grid.dim:
            raise ConfigurationError(
                f"velocity for region {box.name!r} must have {mask.grid.dim} components"
            )
        inside = box.contains(mesh, tol)
        for c, comp in enumerate(comps):
            comp[inside] = vel[c]
    return VectorField(mask.grid, tuple(comps))


def extract(u_full: VectorField, mask: RegionMask) -> VectorField:
    """Restrict a field on D to the fluid nodes; everything else is discarded (zeroed)."""
    if u_full.grid != mask.grid:
        raise GeometryError("field and mask are on different grids")
    fluid = mask.labels == FLUID
    return VectorField(mask.grid, tuple(np.where(fluid, c, 0.0) for c in u_full.components))
