import csv

import numpy as np
import pytest

from divfree import build_mask, divergence, library_fields
from divfree.cli import main, parse_args
from divfree.io import read_fields, write_fields, write_report
from tests.conftest import periodic_grid


def read_csv(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


class TestParseArgs:
    def test_cr_paper_setup_defaults(self):
        cfg = parse_args(["--case", "cr", "--backend", "spectral", "--n", "256"])
        assert cfg.case == "cr" and cfg.backend == "spectral"
        assert cfg.n == 256 and cfg.margin == 0.125
        assert cfg.formats == ("vtk", "csv")

    def test_square_fd_setup(self):
        cfg = parse_args(
            ["--case", "square", "--backend", "fd", "--sor-omega", "1.8", "--sor-tol", "1e-8"]
        )
        assert cfg.n == 256 and cfg.margin == 0.0
        assert cfg.sor_omega == 1.8 and cfg.sor_tol == 1e-8

    def test_cube_defaults_to_64(self):
        cfg = parse_args(["--case", "cube"])
        assert cfg.n == 64 and cfg.backend == "spectral"

    @pytest.mark.parametrize(
        "argv",
        [
            ["--case", "cube", "--backend", "fd"],  # 3D finite-difference not shipped
            ["--case", "taylor_green", "--backend", "fd"],  # periodic-only case
            ["--case", "cr", "--n", "4"],
            ["--case", "cr", "--margin", "0.6"],
            ["--case", "cr", "--sor-omega", "2.5"],
            ["--case", "cr", "--formats", "hdf5"],
            ["--case", "square", "--u-solid", "1,0,0"],  # wrong dimension
            ["--case", "square", "--u-solid", "one,zero"],
            ["--no-such-flag"],
            [],
        ],
    )
    def test_usage_errors_exit_2(self, argv, capsys):
        with pytest.raises(SystemExit) as excinfo:
            parse_args(argv)
        assert excinfo.value.code == 2

    def test_u_solid_override(self):
        cfg = parse_args(["--case", "square", "--u-solid", "0,1"])
        assert cfg.u_solid == (0.0, 1.0)


class TestWriteFields:
    def test_2d_volume_structure(self, tmp_path, rng):
        g = periodic_grid(16)
        u = library_fields("taylor_green", g)
        path = write_fields(u, {"divergence": divergence(u)}, tmp_path / "fields.vtk")
        text = path.read_text().splitlines()
        assert text[0] == "# vtk DataFile Version 3.0"
        assert "DATASET STRUCTURED_POINTS" in text
        assert "DIMENSIONS 16 16 1" in text
        assert f"POINT_DATA {16 * 16}" in text
        assert "VECTORS velocity double" in text
        assert "SCALARS divergence double 1" in text

    def test_roundtrip_preserves_values_and_recomputed_divergence(self, tmp_path):
        g = periodic_grid(32)
        u = library_fields("taylor_green", g)
        div = divergence(u)
        path = write_fields(u, {"divergence": div}, tmp_path / "f.vtk")
        data = read_fields(path)
        assert data.dims == (32, 32, 1)
        back = [data.vectors["velocity"][c][:, :, 0] for c in range(2)]
        for c in range(2):
            assert np.array_equal(back[c], u.components[c])  # 17 digits round-trip doubles
        from divfree import VectorField

        rediv = divergence(VectorField(g, tuple(back)))
        assert abs(rediv.max_abs() - div.max_abs()) <= 1e-15

    def test_empty_extras_only_velocity(self, tmp_path):
        g = periodic_grid(16)
        u = library_fields("shear", g)
        path = write_fields(u, {}, tmp_path / "f.vtk")
        assert "SCALARS" not in path.read_text()

    def test_deterministic_bytes(self, tmp_path):
        g = periodic_grid(16)
        u = library_fields("taylor_green", g)
        p1 = write_fields(u, {"divergence": divergence(u)}, tmp_path / "a.vtk")
        p2 = write_fields(u, {"divergence": divergence(u)}, tmp_path / "b.vtk")
        assert p1.read_bytes() == p2.read_bytes()


class TestWriteReport:
    def test_diagnostics_schema(self, tmp_path, rng):
        from divfree import SolveConfig, construct_solenoidal
        from tests.conftest import random_smooth_field

        g = periodic_grid(24)
        mask = build_mask(g)
        res = construct_solenoidal(random_smooth_field(g, rng), mask, {}, SolveConfig("spectral"))
        write_report(res.reports, [], tmp_path)
        rows = read_csv(tmp_path / "diagnostics.csv")
        assert set(rows[0]) == {"stage", "method", "linf", "l2", "argmax_i", "argmax_region"}
        per_method = {}
        for row in rows:
            per_method.setdefault(row["method"], []).append(row["stage"])
        for method, stages in per_method.items():
            assert stages == ["initial", "embedded", "solved", "extracted"]
        assert not (tmp_path / "boundary_error.csv").exists()


class TestMainEndToEnd:
    def test_square_spectral_run_writes_everything(self, tmp_path):
        out = tmp_path / "run"
        code = main(["--case", "square", "--n", "64", "--out-dir", str(out)])
        assert code == 0
        assert (out / "fields.vtk").exists()
        diag = read_csv(out / "diagnostics.csv")
        assert len(diag) == 8  # 4 stages x {fd, spectral}
        bc = read_csv(out / "boundary_error.csv")
        assert set(bc[0]) == {"edge", "s", "du1", "du2"}
        assert {row["edge"] for row in bc} == {"left", "right", "bottom", "top"}

    def test_identical_config_byte_identical_outputs(self, tmp_path):
        args = ["--case", "square", "--n", "64"]
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(args + ["--out-dir", str(a)]) == 0
        assert main(args + ["--out-dir", str(b)]) == 0
        for name in ("fields.vtk", "diagnostics.csv", "boundary_error.csv"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_fd_run_deterministic_and_labelled(self, tmp_path):
        args = ["--case", "cr", "--backend", "fd", "--n", "65"]
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(args + ["--out-dir", str(a)]) == 0
        assert main(args + ["--out-dir", str(b)]) == 0
        assert (a / "diagnostics.csv").read_bytes() == (b / "diagnostics.csv").read_bytes()
        assert (a / "fields.vtk").read_bytes() == (b / "fields.vtk").read_bytes()
        rows = read_csv(a / "diagnostics.csv")
        solved = next(r for r in rows if r["stage"] == "solved")
        assert solved["method"] == "fd"

    def test_non_convergence_exits_3(self, tmp_path, capsys):
        code = main(
            [
                "--case", "cr", "--backend", "fd", "--n", "65",
                "--sor-tol", "1e-14", "--sor-max-iters", "20",
                "--out-dir", str(tmp_path / "x"),
            ]
        )
        assert code == 3
        assert "PSOR" in capsys.readouterr().err

    def test_io_failure_exits_4(self, tmp_path):
        target = tmp_path / "blocked"
        target.write_text("a file, not a directory")
        code = main(["--case", "taylor_green", "--n", "16", "--out-dir", str(target)])
        assert code == 4

    def test_geometry_error_exits_2(self, tmp_path, capsys):
        # obstacle wider than the box survives flag parsing but not mask building
        code = main(
            ["--case", "square", "--n", "64", "--half-width", "9.0",
             "--out-dir", str(tmp_path / "x")]
        )
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_vtk_only_format(self, tmp_path):
        out = tmp_path / "v"
        code = main(["--case", "square", "--n", "64", "--formats", "vtk", "--out-dir", str(out)])
        assert code == 0
        assert (out / "fields.vtk").exists()
        assert (out / "diagnostics.csv").exists()  # always written
        assert not (out / "boundary_error.csv").exists()
