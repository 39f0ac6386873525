import json

import numpy as np
import pytest

from thermolimit import cli, spinbath


def run_cli(args):
    return cli.main(list(args))


class TestRun:
    def test_zurek_trajectory_matches_closed_form(self, tmp_path):
        out = tmp_path / "traj.csv"
        code = run_cli(
            ["run", "zurek", "--out", str(out), "--n", "10",
             "--lambda", "1", "--t_max", "2.0", "--n_times", "5"]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "t,rho_uu,rho_dd,re_rho_ud,im_rho_ud"
        cfg = spinbath.BathConfig(n_spins=10, lam=1.0)
        t, uu, dd, re_ud, im_ud = (float(x) for x in lines[3].split(","))
        rho = spinbath.reduced_density(cfg, t)
        assert uu == pytest.approx(rho[0, 0].real)
        assert im_ud == pytest.approx(rho[0, 1].imag)

    def test_manifest_written(self, tmp_path):
        out = tmp_path / "data.csv"
        run_cli(["run", "regularize", "--out", str(out)])
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        assert manifest["config"]["experiment"] == "regularize"
        assert "version" in manifest and "timing" in manifest

    def test_config_file_with_overrides(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(
            json.dumps(
                {
                    "experiment": "scaling",
                    "parameters": {"n_list": [10, 100]},
                    "seed": 5,
                    "output_path": str(tmp_path / "ignored.csv"),
                }
            )
        )
        out = tmp_path / "scaling.csv"
        assert run_cli(["run", "--config", str(cfg), "--out", str(out)]) == 0
        assert out.exists() and not (tmp_path / "ignored.csv").exists()
        fit = json.loads((tmp_path / "scaling.csv.fit.json").read_text())
        assert set(fit) == {"slope", "intercept"}

    def test_json_format(self, tmp_path):
        out = tmp_path / "data.json"
        run_cli(["run", "zurek", "--n", "2", "--lambda", "1", "--out", str(out),
                 "--format", "json", "--n_times", "3"])
        payload = json.loads(out.read_text())
        assert payload["columns"] == ["t", "rho_uu", "rho_dd", "re_rho_ud", "im_rho_ud"]
        assert len(payload["rows"]) == 3

    def test_deterministic_bytes(self, tmp_path):
        outs = []
        for tag in ("a", "b"):
            out = tmp_path / f"{tag}.csv"
            run_cli(["run", "scaling", "--n_list", "[10, 100, 1000]",
                     "--seed", "9", "--out", str(out)])
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_malformed_json_writes_nothing(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        out = tmp_path / "data.csv"
        assert run_cli(["run", "zurek", "--config", str(bad), "--out", str(out)]) == 2
        assert not out.exists() and not (tmp_path / "manifest.json").exists()

    def test_unknown_experiment_exits_2(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"experiment": "frobnicate", "output_path": "x.csv"}))
        assert run_cli(["run", "--config", str(cfg)]) == 2

    def test_unknown_parameter_exits_2(self, tmp_path):
        assert run_cli(
            ["run", "zurek", "--n", "2", "--lambda", "1", "--bogus", "3",
             "--out", str(tmp_path / "x.csv")]
        ) == 2

    def test_missing_seed_for_stochastic_exits_2(self, tmp_path):
        assert run_cli(
            ["run", "scaling", "--n_list", "[10, 100]", "--out", str(tmp_path / "x.csv")]
        ) == 2

    def test_numerical_failure_exits_1(self, tmp_path, capsys):
        # fock_dim far too small for the coupling: TruncationLeakage
        code = run_cli(
            ["run", "spinboson", "--n", "2", "--g", "1.0", "--fock_dim", "4",
             "--out", str(tmp_path / "x.csv")]
        )
        assert code == 1
        assert "TruncationLeakage" in capsys.readouterr().err


class TestSweep:
    def base_config(self, tmp_path, **kw):
        cfg = {
            "experiment": "zurek",
            "parameters": {"lam": 1.0},
            "sweep": {"n_spins": [1, 2, 3], "t": [0.0, 0.5, 1.0]},
            "output_path": str(tmp_path / "sweep.csv"),
        }
        cfg.update(kw)
        path = tmp_path / "sweep.json"
        path.write_text(json.dumps(cfg))
        return path

    def test_cross_product_long_format(self, tmp_path):
        assert run_cli(["sweep", "--config", str(self.base_config(tmp_path))]) == 0
        lines = (tmp_path / "sweep.csv").read_text().splitlines()
        assert lines[0] == "n_spins,t,rho_uu,rho_dd,re_rho_ud,im_rho_ud"
        assert len(lines) == 10
        cfg = spinbath.BathConfig(n_spins=2, lam=1.0)
        row = [float(x) for x in lines[5].split(",")]  # (2, 0.5, ...)
        assert row[:2] == [2.0, 0.5]
        assert row[2] == pytest.approx(spinbath.reduced_density(cfg, 0.5)[0, 0].real)

    def test_jobs_do_not_change_bytes(self, tmp_path):
        cfg = self.base_config(tmp_path)
        run_cli(["sweep", "--config", str(cfg)])
        serial = (tmp_path / "sweep.csv").read_bytes()
        run_cli(["sweep", "--config", str(cfg), "--jobs", "4"])
        assert (tmp_path / "sweep.csv").read_bytes() == serial

    def test_empty_range_exits_2(self, tmp_path):
        cfg = self.base_config(tmp_path, sweep={"n_spins": []})
        assert run_cli(["sweep", "--config", str(cfg)]) == 2

    def test_cap_exceeded_exits_2(self, tmp_path):
        cfg = self.base_config(tmp_path, max_points=4)
        assert run_cli(["sweep", "--config", str(cfg)]) == 2

    def test_unsweepable_parameter_exits_2(self, tmp_path):
        cfg = self.base_config(tmp_path, sweep={"window": [1.0, 2.0]})
        assert run_cli(["sweep", "--config", str(cfg)]) == 2

    def test_regularize_sweep(self, tmp_path):
        cfg = tmp_path / "reg.json"
        cfg.write_text(
            json.dumps(
                {
                    "experiment": "regularize",
                    "parameters": {"kind": "sin"},
                    "sweep": {"epsilon": [1e-1, 1e-2], "window": [10.0, 100.0]},
                    "output_path": str(tmp_path / "reg.csv"),
                }
            )
        )
        assert run_cli(["sweep", "--config", str(cfg)]) == 0
        lines = (tmp_path / "reg.csv").read_text().splitlines()
        assert lines[0] == "epsilon,window,abel,cesaro"
        assert len(lines) == 5
        eps, _, abel, _ = (float(x) for x in lines[1].split(","))
        assert abel == pytest.approx(1.0 / (1 + eps**2))  # sin kind


class TestVerify:
    def test_subset_passes(self, tmp_path, capsys):
        out = tmp_path / "verify.csv"
        code = run_cli(["verify", "--criteria", "7,8", "--out", str(out)])
        assert code == 0
        stdout = capsys.readouterr().out
        assert "PASS  7" in stdout and "PASS  8" in stdout
        lines = out.read_text().splitlines()
        assert lines[0] == "criterion,name,status,detail"

    def test_broken_override_exits_1_with_error_name(self, tmp_path, capsys):
        cfg = tmp_path / "overrides.json"
        cfg.write_text(json.dumps({"fock_dim": 4}))
        code = run_cli(["verify", "--criteria", "3", "--config", str(cfg)])
        assert code == 1
        assert "TruncationLeakage" in capsys.readouterr().out

    def test_unknown_flag_exits_2(self):
        with pytest.raises(SystemExit) as info:
            run_cli(["verify", "--definitely-not-a-flag"])
        assert info.value.code == 2

    def test_unknown_criterion_exits_2(self):
        assert run_cli(["verify", "--criteria", "42"]) == 2


def test_scaling_sweep_over_lambda(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps(
            {
                "experiment": "scaling",
                "parameters": {"n_list": [10, 100, 1000]},
                "sweep": {"lam": [0.5, 1.0, 2.0]},
                "seed": 3,
                "output_path": str(tmp_path / "s.csv"),
            }
        )
    )
    assert run_cli(["sweep", "--config", str(cfg)]) == 0
    lines = (tmp_path / "s.csv").read_text().splitlines()
    assert lines[0] == "lam,slope,intercept"
    slopes = [float(line.split(",")[1]) for line in lines[1:]]
    assert all(abs(s + 0.5) < 0.2 for s in slopes)
