"""File output: legacy ASCII structured-points volumes and CSV diagnostics.

All floats are written with 17 significant digits, which round-trips IEEE
doubles exactly, so identical inputs produce byte-identical files.
"""

from __future__ import annotations

import csv
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .diagnostics import DivergenceReport
from .grid import ScalarField, VectorField
from .pipeline import BcErrorRow


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _pad3(values: Sequence, fill) -> tuple:
    out = list(values)
    while len(out) < 3:
        out.append(fill)
    return tuple(out)


def write_fields(u: VectorField, extras: Mapping[str, ScalarField], path) -> Path:
    """Write the velocity (and named scalars) as a legacy ASCII
    STRUCTURED_POINTS volume.  2D grids are written as nx x ny x 1 volumes
    with a zero third velocity component."""
    grid = u.grid
    dims = _pad3(grid.n, 1)
    origin = _pad3(grid.lo, 0.0)
    spacing = _pad3(grid.h, 1.0)
    npoints = int(np.prod(dims))

    comps = [c.ravel(order="F") for c in u.components]
    while len(comps) < 3:
        comps.append(np.zeros(npoints))

    path = Path(path)
    try:
        with open(path, "w", newline="\n") as f:
            f.write("# vtk DataFile Version 3.0\n")
            f.write("divfree fields\n")
            f.write("ASCII\n")
            f.write("DATASET STRUCTURED_POINTS\n")
            f.write(f"DIMENSIONS {dims[0]} {dims[1]} {dims[2]}\n")
            f.write(f"ORIGIN {_fmt(origin[0])} {_fmt(origin[1])} {_fmt(origin[2])}\n")
            f.write(f"SPACING {_fmt(spacing[0])} {_fmt(spacing[1])} {_fmt(spacing[2])}\n")
            f.write(f"POINT_DATA {npoints}\n")
            f.write("VECTORS velocity double\n")
            for p in range(npoints):
                f.write(f"{_fmt(comps[0][p])} {_fmt(comps[1][p])} {_fmt(comps[2][p])}\n")
            for name, scalar in extras.items():
                flat = scalar.values.ravel(order="F")
                f.write(f"SCALARS {name} double 1\n")
                f.write("LOOKUP_TABLE default\n")
                for p in range(npoints):
                    f.write(f"{_fmt(flat[p])}\n")
    except OSError as err:
        raise OSError(f"cannot write volume file {path}: {err}") from err
    return path


@dataclass
class VolumeData:
    """Raw contents of a structured-points volume file."""

    dims: tuple[int, int, int]
    origin: tuple[float, float, float]
    spacing: tuple[float, float, float]
    vectors: dict[str, list[np.ndarray]]
    scalars: dict[str, np.ndarray]


def read_fields(path) -> VolumeData:
    """Parse a volume written by :func:`write_fields` back into arrays
    (shape = dims, same index order as the grid)."""
    with open(path) as f:
        lines = [ln.rstrip("\n") for ln in f]
    dims = origin = spacing = None
    vectors: dict[str, list[np.ndarray]] = {}
    scalars: dict[str, np.ndarray] = {}
    i = 0
    npoints = 0
    while i < len(lines):
        parts = lines[i].split()
        if not parts:
            i += 1
            continue
        key = parts[0]
        if key == "DIMENSIONS":
            dims = tuple(int(v) for v in parts[1:4])
        elif key == "ORIGIN":
            origin = tuple(float(v) for v in parts[1:4])
        elif key == "SPACING":
            spacing = tuple(float(v) for v in parts[1:4])
        elif key == "POINT_DATA":
            npoints = int(parts[1])
        elif key == "VECTORS":
            name = parts[1]
            data = np.array(
                [[float(v) for v in lines[i + 1 + p].split()] for p in range(npoints)]
            )
            vectors[name] = [data[:, c].reshape(dims, order="F") for c in range(3)]
            i += npoints
        elif key == "SCALARS":
            name = parts[1]
            i += 1  # LOOKUP_TABLE line
            data = np.array([float(lines[i + 1 + p]) for p in range(npoints)])
            scalars[name] = data.reshape(dims, order="F")
            i += npoints
        i += 1
    if dims is None:
        raise OSError(f"{path} is not a structured-points volume")
    return VolumeData(dims, origin, spacing, vectors, scalars)


def write_report(
    reports: Sequence[DivergenceReport],
    bc_errors: Sequence[BcErrorRow],
    out_dir,
) -> list[Path]:
    """Write diagnostics.csv (always) and boundary_error.csv (when there are
    immersed-boundary rows)."""
    out_dir = Path(out_dir)
    written = []
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        diag = out_dir / "diagnostics.csv"
        with open(diag, "w", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(["stage", "method", "linf", "l2", "argmax_i", "argmax_region"])
            for r in reports:
                w.writerow(
                    [
                        r.stage,
                        r.method,
                        _fmt(r.linf),
                        _fmt(r.l2),
                        " ".join(str(i) for i in r.argmax_index),
                        r.argmax_region,
                    ]
                )
        written.append(diag)

        if bc_errors:
            ncomp = len(bc_errors[0].delta)
            bpath = out_dir / "boundary_error.csv"
            with open(bpath, "w", newline="") as f:
                w = csv.writer(f, lineterminator="\n")
                w.writerow(["edge", "s"] + [f"du{c + 1}" for c in range(ncomp)])
                for row in bc_errors:
                    edge = row.edge if row.region in ("", "obstacle") else f"{row.region}/{row.edge}"
                    w.writerow([edge, _fmt(row.s)] + [_fmt(d) for d in row.delta])
            written.append(bpath)
    except OSError as err:
        raise OSError(f"cannot write reports under {out_dir}: {err}") from err
    return written
