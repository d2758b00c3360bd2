"""CLI contract: commands, exit codes, report formats."""

import json

import numpy as np
import pytest

from rsuncert import (
    FieldGrid,
    Grid3D,
    analytic_eigenfunction,
    read_rsf,
    synthesize_kspace,
    uncertainty_product,
    variance_kspace,
    variance_position,
    fourier_to_kspace,
    fourier_to_position,
    write_rsf,
)
from rsuncert.cli import main
from conftest import random_pair


def run(args):
    return main([str(a) for a in args])


class TestVerifyBound:
    def test_saturating_default(self, capsys):
        code = run(["verify-bound", "--saturating", "--a", "1.0"])
        out = capsys.readouterr().out
        rep = json.loads(out)
        assert code == 0
        assert abs(rep["product"] - 2.5) < 1e-3
        assert abs(rep["saturation_ratio"] - 1.0) < 1e-3

    def test_saturating_grid_method(self, capsys):
        code = run(["verify-bound", "--saturating", "--method", "grid",
                    "--grid", 32, "--extent", 14])
        rep = json.loads(capsys.readouterr().out)
        assert code == 0
        assert abs(rep["product"] - 2.5) < 1e-3

    def test_random_field_input(self, tmp_path, rng, capsys):
        amps = random_pair(rng, allow_single=False)
        kgrid = Grid3D.centered(64, 30.0 * amps.k_scale).fourier_dual()
        field = fourier_to_position(synthesize_kspace(amps, kgrid))
        path = tmp_path / "random_field.rsf"
        write_rsf(path, field)
        code = run(["verify-bound", "--input", path])
        rep = json.loads(capsys.readouterr().out)
        assert code == 0
        assert rep["product"] >= 2.5 - 1e-6

    def test_zero_field_degenerate_exit3(self, tmp_path):
        grid = Grid3D.centered(16, 8.0)
        field = FieldGrid(np.zeros((16, 16, 16, 3), complex), grid, "position")
        path = tmp_path / "zeros.rsf"
        write_rsf(path, field)
        assert run(["verify-bound", "--input", path]) == 3

    def test_malformed_input_exit2(self, tmp_path):
        path = tmp_path / "junk.rsf"
        path.write_bytes(b"garbage\nmore garbage")
        assert run(["verify-bound", "--input", path]) == 2

    def test_missing_input_exit2(self, tmp_path):
        assert run(["verify-bound", "--input", tmp_path / "nope.rsf"]) == 2

    def test_out_file_and_csv(self, tmp_path):
        out = tmp_path / "report.csv"
        code = run(["verify-bound", "--saturating", "--format", "csv", "--out", out])
        assert code == 0
        head, row = out.read_text().strip().splitlines()
        assert head.split(",")[0] == "delta_r2"
        assert abs(float(row.split(",")[2]) - 2.5) < 1e-3

    def test_deterministic_output(self, tmp_path):
        o1, o2 = tmp_path / "a.json", tmp_path / "b.json"
        run(["verify-bound", "--saturating", "--out", o1])
        run(["verify-bound", "--saturating", "--out", o2])
        assert o1.read_bytes() == o2.read_bytes()

    def test_bad_grid_size_exit2(self):
        with pytest.raises(SystemExit) as exc:
            run(["verify-bound", "--saturating", "--grid", 37])
        assert exc.value.code == 2


class TestSpectrum:
    def test_default_three_states(self, capsys):
        code = run(["spectrum"])
        rep = json.loads(capsys.readouterr().out)
        assert code == 0
        assert np.allclose(rep["eigenvalues"], [2.5, 4.5, 6.5], atol=1e-3)

    def test_under_resolved_exit4(self):
        assert run(["spectrum", "--n-points", 8]) == 4

    def test_eigenfunction_dump_matches_analytic(self, tmp_path, capsys):
        csv_path = tmp_path / "eig.csv"
        code = run(["spectrum", "--dump-eigenfunctions", csv_path])
        assert code == 0
        rows = np.loadtxt(csv_path, delimiter=",", skiprows=1)
        kap, g0 = rows[:, 0], rows[:, 1]
        ref = analytic_eigenfunction(0, kap)
        ref /= np.sqrt(np.trapezoid(kap ** 2 * ref ** 2, kap))
        if np.dot(ref, g0) < 0:
            g0 = -g0
        l2 = np.sqrt(np.trapezoid(kap ** 2 * (g0 - ref) ** 2, kap))
        assert l2 < 1e-3


class TestField:
    def test_axis_profile_transverse_zero(self, tmp_path):
        rsf = tmp_path / "field.rsf"
        prof = tmp_path / "profile.csv"
        code = run(["field", "--a", 1.0, "--grid", 16, "--out-field", rsf,
                    "--profile-axis", "z", "--profile-out", prof])
        assert code == 0
        rows = np.loadtxt(prof, delimiter=",", skiprows=1)
        # columns: z, ReFx, ImFx, ReFy, ImFy, ReFz, ImFz
        assert np.all(rows[:, 1:5] == 0.0)

    def test_written_file_round_trips(self, tmp_path):
        rsf = tmp_path / "field.rsf"
        assert run(["field", "--grid", 16, "--out-field", rsf]) == 0
        field = read_rsf(rsf)
        rsf2 = tmp_path / "copy.rsf"
        write_rsf(rsf2, field)
        assert rsf.read_bytes() == rsf2.read_bytes()

    def test_emitted_moments_reproduce_bound_values(self, tmp_path):
        rsf = tmp_path / "field.rsf"
        a = 1.0
        code = run(["field", "--a", a, "--grid", 64, "--extent", 16,
                    "--out-field", rsf])
        assert code == 0
        field = read_rsf(rsf)
        dr2 = variance_position(field)
        dk2 = variance_kspace(fourier_to_kspace(field))
        assert abs(dr2 - 2.5 * a * a) < 1e-3
        assert abs(dk2 - 2.5 / (a * a)) < 1e-3

    def test_photon_field_written(self, tmp_path):
        rsf = tmp_path / "photon.rsf"
        code = run(["field", "--grid", 16, "--photon", "plus",
                    "--c-plus", "1", "--out-field", rsf])
        assert code == 0
        assert read_rsf(rsf).space == "position"

    def test_unwritable_output_exit2(self, tmp_path):
        code = run(["field", "--grid", 16,
                    "--out-field", tmp_path / "no" / "such" / "dir" / "f.rsf"])
        assert code == 2


class TestSpread:
    def test_saturating_spread(self, tmp_path, capsys):
        code = run(["spread", "--grid", 64, "--extent", 20,
                    "--times=-1,-0.5,0,0.5,1"])
        rep = json.loads(capsys.readouterr().out)
        assert code == 0
        assert abs(rep["fit"]["acceleration"] - 2.0) < 0.02
        m = np.asarray(rep["second_moments"])
        t = np.asarray(rep["times"])
        assert np.all(m >= m[np.argmin(np.abs(t))] - 1e-12)

    def test_csv_output(self, tmp_path):
        out = tmp_path / "traj.csv"
        code = run(["spread", "--grid", 32, "--extent", 18, "--format", "csv",
                    "--out", out])
        assert code == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "t,second_moment,norm"
        assert len(lines) == 6

    def test_truncation_exit5(self):
        code = run(["spread", "--grid", 16, "--extent", 5,
                    "--times=-4,-2,0,2,4"])
        assert code == 5


class TestConfigPrecedence:
    def test_config_supplies_defaults_flags_win(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"a": 2.0, "tolerance": 0.5}))
        code = run(["verify-bound", "--saturating", "--config", cfg])
        rep = json.loads(capsys.readouterr().out)
        assert code == 0
        # a = 2 from the config: product still 2.5, delta_r2 = 5a^2/2 = 10
        assert abs(rep["delta_r2"] - 10.0) < 1e-2
        # now override a on the command line
        code = run(["verify-bound", "--saturating", "--a", 1.0, "--config", cfg])
        rep = json.loads(capsys.readouterr().out)
        assert code == 0
        assert abs(rep["delta_r2"] - 2.5) < 1e-2
