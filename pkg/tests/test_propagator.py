"""Spectral time evolution, unitarity and the quadratic spreading law."""

import numpy as np
import pytest

from rsuncert import (
    Grid3D,
    SaturatingFieldSpec,
    TruncationError,
    evolve,
    fourier_to_kspace,
    fourier_to_position,
    norm,
    saturating_rs_field,
    spreading_trajectory,
    synthesize_kspace,
)


SPEC = SaturatingFieldSpec.simplest(C=1.0, a=1.0)
KGRID = Grid3D.centered(64, 16.0).fourier_dual()


class TestEvolve:
    def test_t0_matches_direct_synthesis(self):
        amps = SPEC.amplitudes()
        via_evolve = evolve(amps, KGRID, 0.0)
        direct = fourier_to_position(synthesize_kspace(amps, KGRID, 0.0))
        assert np.array_equal(via_evolve.values, direct.values)

    def test_matches_analytic_field_at_random_nodes(self, rng):
        amps = SPEC.amplitudes()
        for t in (0.0, 0.4, -0.9):
            fieldR = evolve(amps, KGRID, t)
            pts = np.stack(np.meshgrid(*fieldR.grid.axes(), indexing="ij"), axis=-1)
            want = saturating_rs_field(pts, t, SPEC)
            scale = np.abs(want).max()
            idx = rng.integers(8, 56, size=(30, 3))
            for i, j, l in idx:
                err = np.abs(fieldR.values[i, j, l] - want[i, j, l]).max()
                assert err < 1e-4 * scale

    def test_norm_conserved(self):
        amps = SPEC.amplitudes()
        n0 = norm(synthesize_kspace(amps, KGRID, 0.0))
        for t in (1.0, 5.0, 10.0):
            nt = norm(synthesize_kspace(amps, KGRID, t))
            assert abs(nt - n0) / n0 < 1e-10

    def test_spectral_maxwell_equation(self):
        # (F(t+d) - F(t-d)) / 2d  vs  c curl F(t), curl evaluated as ik x
        amps = SPEC.amplitudes()
        t0, d = 0.3, 1e-4
        fp = evolve(amps, KGRID, t0 + d)
        fm = evolve(amps, KGRID, t0 - d)
        dF = (fp.values - fm.values) / (2 * d)
        ft = synthesize_kspace(amps, KGRID, t0)
        KX, KY, KZ = ft.grid.meshes(sparse=False)
        kvec = np.stack([KX, KY, KZ], axis=-1)
        curl_k = 1j * np.cross(kvec, ft.values)
        curl_r = fourier_to_position(
            type(ft)(curl_k, ft.grid, "wavevector")
        ).values
        lhs = 1j * dF
        scale = np.abs(curl_r).max()
        assert np.max(np.abs(lhs - curl_r)) < 1e-6 * scale


class TestSpreadingTrajectory:
    times = np.array([-1.0, -0.5, 0.0, 0.5, 1.0])

    def test_grid_fit_acceleration(self):
        traj = spreading_trajectory(SPEC.amplitudes(), self.times, grid=KGRID)
        _, beta, gamma, _ = traj.quadratic_fit()
        assert abs(2.0 * gamma - 2.0) < 0.02
        assert abs(beta) < 1e-6

    def test_grid_minimum_at_t0(self):
        traj = spreading_trajectory(SPEC.amplitudes(), self.times, grid=KGRID)
        i0 = int(np.argmin(np.abs(traj.times)))
        assert np.all(traj.second_moments >= traj.second_moments[i0] - 1e-12)

    def test_analytic_exact_parabola(self):
        times = np.linspace(-1.2, 1.2, 9)
        traj = spreading_trajectory(SPEC.amplitudes(), times, method="analytic")
        alpha, beta, gamma, resid = traj.quadratic_fit()
        assert resid < 1e-6
        assert abs(2.0 * gamma - 2.0) < 1e-9
        assert abs(beta) < 1e-9
        assert abs(alpha - 2.5) < 1e-9  # <r^2>(0) = Dr^2 = 5 a^2/2

    def test_analytic_unitarity(self):
        times = np.linspace(-1.0, 1.0, 5)
        traj = spreading_trajectory(SPEC.amplitudes(), times, method="analytic")
        assert np.max(np.abs(traj.norms - traj.norm)) / traj.norm < 1e-10

    def test_time_reversal_symmetry(self):
        traj = spreading_trajectory(SPEC.amplitudes(), self.times, grid=KGRID)
        m = traj.second_moments
        assert abs(m[0] - m[-1]) / m[0] < 1e-9
        assert abs(m[1] - m[-2]) / m[1] < 1e-9

    def test_truncation_flag_and_strict_error(self):
        small = Grid3D.centered(16, 6.0).fourier_dual()
        times = np.array([-3.0, -1.5, 0.0, 1.5, 3.0])
        traj = spreading_trajectory(SPEC.amplitudes(), times, grid=small)
        assert traj.truncated
        with pytest.raises(TruncationError):
            spreading_trajectory(SPEC.amplitudes(), times, grid=small, strict=True)

    def test_too_few_samples(self):
        with pytest.raises(ValueError):
            spreading_trajectory(SPEC.amplitudes(), [0.0, 1.0], grid=KGRID)

    def test_serialization(self):
        traj = spreading_trajectory(SPEC.amplitudes(), self.times, grid=KGRID)
        d = traj.to_dict()
        assert set(d) == {"times", "second_moments", "norm", "norms", "fit", "truncated"}
        csv = traj.to_csv()
        lines = csv.strip().splitlines()
        assert lines[0] == "t,second_moment,norm"
        assert len(lines) == 1 + len(self.times)
