import numpy as np
import pytest

from thermolimit import spinbath as sbm
from thermolimit.errors import DimensionTooLarge, InvalidWindow


class TestAmplitudes:
    def test_initial(self):
        c_down, c_up = sbm.evolve_interacting_spin(sbm.BathConfig(5, 1.0), 0.0)
        assert (c_down, c_up) == (1.0 + 0j, 0j)

    def test_full_flop(self):
        # N lam t = pi/2 transfers all population with amplitude i
        cfg = sbm.BathConfig(n_spins=4, lam=0.5)
        c_down, c_up = sbm.evolve_interacting_spin(cfg, np.pi / 4)
        assert abs(c_down) <= 1e-15
        assert c_up == pytest.approx(1j)

    @pytest.mark.parametrize("t", np.linspace(0, 5, 11))
    def test_exactly_unitary(self, t):
        c_down, c_up = sbm.evolve_interacting_spin(sbm.BathConfig(3, 1.2), t)
        assert abs(c_down) ** 2 + abs(c_up) ** 2 == pytest.approx(1.0, abs=1e-15)


class TestReducedDensity:
    def test_initial_projector(self):
        rho = sbm.reduced_density(sbm.BathConfig(6, 1.0), 0.0)
        np.testing.assert_allclose(rho, np.diag([0.0, 1.0]), atol=1e-15)

    def test_half_rabi_period(self):
        # 2 N lam t = pi: full inversion, off-diagonals through zero
        cfg = sbm.BathConfig(n_spins=5, lam=1.0)
        rho = sbm.reduced_density(cfg, np.pi / (2 * cfg.n_spins * cfg.lam))
        np.testing.assert_allclose(rho, np.diag([1.0, 0.0]), atol=1e-15)

    def test_quarter_rabi_period(self):
        cfg = sbm.BathConfig(n_spins=5, lam=1.0)
        rho = sbm.reduced_density(cfg, np.pi / (4 * cfg.n_spins * cfg.lam))
        np.testing.assert_allclose(rho[0, 0], 0.5, atol=1e-15)
        np.testing.assert_allclose(rho[0, 1], 0.5j, atol=1e-15)

    @pytest.mark.parametrize("t", [0.0, 0.3, 1.7, 9.1])
    def test_purity_stays_one(self, t):
        rho = sbm.reduced_density(sbm.BathConfig(7, 0.8), t)
        assert np.trace(rho @ rho).real == pytest.approx(1.0, abs=1e-13)


class TestJointOracle:
    @pytest.mark.parametrize("n", [1, 4, 6])
    def test_factored_matches_dense(self, n):
        cfg = sbm.BathConfig(n_spins=n, lam=0.9)
        for t in (0.4, 2.2):
            dense = sbm.joint_evolution(cfg, t, method="dense")
            fact = sbm.joint_evolution(cfg, t, method="factored")
            assert np.linalg.norm(dense - fact) <= 1e-12

    @pytest.mark.parametrize("n", [1, 6, 10])
    def test_closed_form_against_joint_evolution(self, n):
        cfg = sbm.BathConfig(n_spins=n, lam=1.0)
        for t in np.linspace(0.0, 4.0, 9):
            assert sbm.dense_oracle_check(cfg, t).max_deviation <= 1e-10

    def test_rejects_large_bath(self):
        with pytest.raises(DimensionTooLarge):
            sbm.dense_oracle_check(sbm.BathConfig(13, 1.0), 0.1)


class TestRabiFrequency:
    def test_value(self):
        assert sbm.rabi_frequency(sbm.BathConfig(1, 1.0)) == 2.0

    def test_linear_in_n(self):
        lam = 0.7
        base = sbm.rabi_frequency(sbm.BathConfig(3, lam))
        assert sbm.rabi_frequency(sbm.BathConfig(6, lam)) == pytest.approx(2 * base)

    @pytest.mark.parametrize("n", [1, 5, 12])
    def test_fourier_peak_matches(self, n):
        cfg = sbm.BathConfig(n_spins=n, lam=1.0)
        omega = sbm.rabi_frequency(cfg)
        periods, samples = 5, 50
        dt = periods * 2 * np.pi / omega / samples
        series = [sbm.reduced_density(cfg, k * dt)[0, 0].real for k in range(samples)]
        peak = sbm.dominant_frequency(series, dt)
        bin_width = 2 * np.pi / (samples * dt)
        assert abs(peak - omega) <= bin_width


class TestTimeAverage:
    def test_full_period_is_exactly_mixed(self):
        cfg = sbm.BathConfig(n_spins=3, lam=1.0)
        rho = sbm.time_averaged_density(cfg, np.pi / (cfg.n_spins * cfg.lam))
        np.testing.assert_allclose(rho, np.eye(2) / 2, atol=1e-15)

    def test_offdiagonal_bound_on_grid(self):
        for n in (1, 2, 4, 8, 16):
            for window in (1.0, 5.0, 10.0, 50.0, 100.0):
                cfg = sbm.BathConfig(n_spins=n, lam=1.0)
                rho = sbm.time_averaged_density(cfg, window)
                assert abs(rho[0, 1]) <= sbm.offdiagonal_bound(cfg, window)

    def test_quadrature_confirms_closed_form(self):
        # N=10, lam=1, T=100: integrate the off-diagonal directly
        import scipy.integrate

        cfg = sbm.BathConfig(n_spins=10, lam=1.0)
        window = 100.0
        val, _ = scipy.integrate.quad(
            lambda t: np.sin(2 * cfg.n_spins * cfg.lam * t), 0, window, limit=800
        )
        rho = sbm.time_averaged_density(cfg, window)
        assert rho[0, 1].imag == pytest.approx(0.5 * val / window, abs=1e-12)
        assert abs(rho[0, 1]) <= 5e-4

    def test_infinite_n_flag_is_exact(self):
        rho = sbm.time_averaged_density(sbm.BathConfig(3, 1.0), 10.0, n_infinite=True)
        assert rho[0, 0] == 0.5 and rho[1, 1] == 0.5
        assert rho[0, 1] == 0.0 and rho[1, 0] == 0.0

    def test_rejects_bad_window(self):
        with pytest.raises(InvalidWindow):
            sbm.time_averaged_density(sbm.BathConfig(2, 1.0), 0.0)

    def test_limit_report_fields(self):
        report = sbm.limit_report(sbm.BathConfig(4, 1.0), 25.0)
        assert set(report) == {"n", "window", "offdiag_bound", "offdiag_max"}
        assert report["offdiag_max"] <= report["offdiag_bound"]


def test_trajectory_csv(tmp_path):
    cfg = sbm.BathConfig(n_spins=2, lam=1.0)
    out = tmp_path / "traj.csv"
    sbm.write_trajectory_csv(out, cfg, np.linspace(0, 1, 5))
    lines = out.read_text().splitlines()
    assert lines[0] == "t,rho_uu,rho_dd,re_rho_ud,im_rho_ud"
    assert len(lines) == 6
    first = [float(x) for x in lines[1].split(",")]
    assert first == [0.0, 0.0, 1.0, 0.0, 0.0]
