"""Command-line driver: configure a named case, run the construction, write
volume and CSV outputs.

Exit codes: 0 success, 2 usage error, 3 solver non-convergence, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import diffops
from .cases import DEFAULT_MARGIN, case_setup
from .diagnostics import divergence_field
from .grid import ConfigurationError, GeometryError
from .io import write_fields, write_report
from .pipeline import SolveConfig, construct_solenoidal, immersed_bc_error
from .sor import ConvergenceError, SorConfig

CASES = ("cr", "square", "cube", "taylor_green", "gradient", "shear")
DEFAULT_N = {"cr": 256, "square": 256, "cube": 64,
             "taylor_green": 64, "gradient": 64, "shear": 64}
PERIODIC_ONLY = ("cube", "taylor_green", "gradient", "shear")


@dataclass(frozen=True)
class RunConfig:
    case: str
    backend: str
    n: int
    margin: float
    sor_omega: float
    sor_tol: float
    sor_max_iters: int | None
    sor_sweep: str
    u_solid: tuple[float, ...] | None
    lam: float
    half_width: float | None
    out_dir: Path
    formats: tuple[str, ...]


def _parse_floats(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(","))


def parse_args(argv) -> RunConfig:
    parser = argparse.ArgumentParser(
        prog="divfree",
        description="Construct a (nearly) solenoidal velocity field for a named case.",
    )
    parser.add_argument("--case", required=True, choices=CASES)
    parser.add_argument("--backend", default="spectral", choices=("spectral", "fd"))
    parser.add_argument("--n", type=int, default=None, help="grid nodes per axis")
    parser.add_argument(
        "--margin",
        type=float,
        default=None,
        help="zero-velocity margin as a fraction of the flow-domain extent "
        "(default 0.125 for cr, 0 for the obstacle cases)",
    )
    parser.add_argument("--sor-omega", type=float, default=1.8)
    parser.add_argument("--sor-tol", type=float, default=1e-8)
    parser.add_argument("--sor-max-iters", type=int, default=None)
    parser.add_argument("--sor-sweep", default="lexicographic",
                        choices=("lexicographic", "red-black"))
    parser.add_argument("--u-solid", type=str, default=None,
                        help="obstacle velocity, e.g. '1,0' (square) or '1,0,0' (cube)")
    parser.add_argument("--lam", type=float, default=2.64,
                        help="eigen-parameter of the cr characteristic function")
    parser.add_argument("--half-width", type=float, default=None,
                        help="obstacle half-width (default 10*pi/128)")
    parser.add_argument("--out-dir", type=str, default="out")
    parser.add_argument("--formats", type=str, default="vtk,csv")
    args = parser.parse_args(argv)

    n = args.n if args.n is not None else DEFAULT_N[args.case]
    margin = args.margin if args.margin is not None else DEFAULT_MARGIN[args.case]
    formats = tuple(s for s in args.formats.split(",") if s)

    if n < 8:
        parser.error("--n must be at least 8")
    if not 0.0 <= margin < 0.5:
        parser.error("--margin must lie in [0, 0.5)")
    if not 0.0 < args.sor_omega < 2.0:
        parser.error("--sor-omega must lie in (0, 2)")
    if args.sor_tol <= 0.0:
        parser.error("--sor-tol must be positive")
    if args.sor_max_iters is not None and args.sor_max_iters < 1:
        parser.error("--sor-max-iters must be at least 1")
    if any(f not in ("vtk", "csv") for f in formats):
        parser.error("--formats entries must be 'vtk' or 'csv'")
    if args.backend == "fd" and args.case in PERIODIC_ONLY:
        parser.error(
            f"--case {args.case} runs on the spectral backend only "
            "(no bounded finite-difference setup is shipped for it)"
        )
    u_solid = None
    if args.u_solid is not None:
        try:
            u_solid = _parse_floats(args.u_solid)
        except ValueError:
            parser.error("--u-solid must be comma-separated numbers")
        dim = 3 if args.case == "cube" else 2
        if len(u_solid) != dim:
            parser.error(f"--u-solid needs {dim} components for case {args.case}")

    return RunConfig(
        case=args.case,
        backend=args.backend,
        n=n,
        margin=margin,
        sor_omega=args.sor_omega,
        sor_tol=args.sor_tol,
        sor_max_iters=args.sor_max_iters,
        sor_sweep=args.sor_sweep,
        u_solid=u_solid,
        lam=args.lam,
        half_width=args.half_width,
        out_dir=Path(args.out_dir),
        formats=formats,
    )


def run(config: RunConfig) -> int:
    setup = case_setup(
        config.case,
        config.n,
        periodic=(config.backend == "spectral"),
        margin=config.margin,
        u_solid=config.u_solid,
        lam=config.lam,
        half_width=config.half_width,
    )
    solve_cfg = SolveConfig(
        backend=config.backend,
        sor=SorConfig(
            relaxation=config.sor_omega,
            tol=config.sor_tol,
            max_iters=config.sor_max_iters,
            sweep=config.sor_sweep,
        ),
    )
    result = construct_solenoidal(setup.u_star, setup.mask, setup.givens, solve_cfg)

    bc_rows = []
    if setup.mask.regions:
        bc_rows = immersed_bc_error(result.u_extended, setup.mask, setup.givens)
    if "csv" not in config.formats:
        bc_rows = []

    config.out_dir.mkdir(parents=True, exist_ok=True)
    write_report(result.reports, bc_rows, config.out_dir)
    if "vtk" in config.formats:
        extras = {"divergence": divergence_field(result.u_extended, config.backend)}
        if setup.grid.dim == 2:
            extras["vorticity"] = diffops.curl(result.u_extended)
        write_fields(result.u, extras, config.out_dir / "fields.vtk")

    solved = result.report("solved", config.backend)
    extracted = result.report("extracted", config.backend)
    print(
        f"{config.case}/{config.backend} n={config.n}: "
        f"max|div| solved={solved.linf:.3e} extracted={extracted.linf:.3e} "
        f"-> {config.out_dir}"
    )
    return 0


def main(argv=None) -> int:
    config = parse_args(argv if argv is not None else sys.argv[1:])
    try:
        return run(config)
    except (GeometryError, ConfigurationError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except ConvergenceError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
