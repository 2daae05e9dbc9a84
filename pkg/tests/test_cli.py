"""Command-line surface: modes, config handling, file formats, exit codes."""

import json

import numpy as np
import pytest

from twomode import FitNonConvergenceError
from twomode import cli
from twomode.cli import RunConfig, main


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def read_csv(path):
    return np.genfromtxt(path, delimiter=",", names=True)


def estimate_period(times, values):
    """Full-period spacing of mean-crossings (bias-free for partial windows)."""
    y = values - values.mean()
    idx = np.nonzero(np.diff(np.sign(y)) != 0)[0]
    cross = times[idx] - y[idx] * (times[idx + 1] - times[idx]) / (
        y[idx + 1] - y[idx]
    )
    return float(np.mean(cross[2:] - cross[:-2]))


BASE_PARAMS = {"omega1": 0.5, "omega2": 0.7, "lambda": 0.1, "n1": 1, "n2": 0}


class TestExactMode:
    def test_csv_period_matches_reference(self, tmp_path):
        out = tmp_path / "exact.csv"
        cfg = write_config(tmp_path, {
            "mode": "exact",
            "params": BASE_PARAMS,
            "integrator": {"step": 0.05, "horizon": 150.0},
            "output_path": str(out),
        })
        assert main(["exact", "--config", cfg]) == 0
        data = read_csv(out)
        assert list(data.dtype.names) == [
            "time", "n1", "n2", "omega1_eff", "omega2_eff", "coupling_im",
        ]
        assert estimate_period(data["time"], data["n1"]) == pytest.approx(
            22.2144, abs=0.01
        )

    def test_deterministic_outputs(self, tmp_path):
        cfg_payload = {
            "mode": "exact",
            "params": BASE_PARAMS,
            "integrator": {"step": 0.05, "horizon": 60.0},
        }
        cfg = write_config(tmp_path, cfg_payload)
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        assert main(["exact", "--config", cfg, "--out", str(out1)]) == 0
        assert main(["exact", "--config", cfg, "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_twelve_significant_digits(self, tmp_path):
        out = tmp_path / "exact.csv"
        cfg = write_config(tmp_path, {
            "mode": "exact",
            "params": BASE_PARAMS,
            "integrator": {"step": 0.05, "horizon": 60.0},
            "output_path": str(out),
        })
        assert main(["exact", "--config", cfg]) == 0
        row = out.read_text().splitlines()[5].split(",")
        n1_text = row[1]
        assert float(n1_text) == pytest.approx(
            float(f"{float(n1_text):.12g}"), abs=0.0
        )
        digits = n1_text.replace(".", "").replace("-", "").lstrip("0")
        assert len(digits.split("e")[0]) <= 12


class TestInducedMode:
    def test_flags_only_run(self, tmp_path):
        out = tmp_path / "induced.csv"
        code = main([
            "induced", "--omega1", "0.5", "--omega2", "0.7", "--lambda", "0.1",
            "--tau", "2", "--horizon", "100", "--out", str(out),
        ])
        assert code == 0
        data = read_csv(out)
        assert data["coupling_im"].max() == 0.0
        assert abs(data["n1"] + data["n2"] - 1.0).max() <= 1e-8

    def test_seed_state_flag(self, tmp_path):
        out = tmp_path / "induced.csv"
        code = main([
            "induced", "--omega1", "0.5", "--omega2", "0.7", "--lambda", "0.1",
            "--tau", "2", "--horizon", "50", "--seed-state", "0,1",
            "--out", str(out),
        ])
        assert code == 0
        data = read_csv(out)
        assert data["n1"][0] == 0.0
        assert data["n2"][0] == 1.0


class TestGeneralizedMode:
    def test_equilibrium_reported_in_json(self, tmp_path, warm_kernel):
        out = tmp_path / "gen.json"
        code = main([
            "generalized", "--omega1", "0.5", "--omega2", "0.7",
            "--lambda", "0.2", "--alpha1", "0", "--alpha2", "-1",
            "--horizon", "500", "--out", str(out), "--format", "json",
        ])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["equilibrium"]["status"] == "converged"
        assert payload["equilibrium"]["n1_eq"] == pytest.approx(0.2771, abs=0.01)
        traj = payload["trajectory"]
        assert set(traj) == {
            "times", "n1", "n2", "omega1_eff", "omega2_eff", "coupling_im",
        }


class TestSweepAndFitModes:
    def test_sweep_csv_columns_and_fit_roundtrip(self, tmp_path, warm_kernel):
        out = tmp_path / "sweep.csv"
        cfg = write_config(tmp_path, {
            "mode": "sweep",
            "sweep": {
                "lambda": 0.3, "alpha1": 0, "alpha2": -1,
                "omega2_grid": [0.6, 0.8, 0.9, 1.1, 1.2, 1.4],
            },
            "integrator": {"step": 1e-3, "horizon": 500.0,
                           "sample_stride": 100},
            "output_path": str(out),
        })
        assert main(["sweep", "--config", cfg]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "x,n1_eq,status,settle_time"
        assert len(lines) == 7
        assert all(line.split(",")[2] == "converged" for line in lines[1:])
        # feed the sweep back through fit mode
        fit_out = tmp_path / "fit.json"
        code = main(["fit", "--data", str(out), "--out", str(fit_out)])
        assert code == 0
        payload = json.loads(fit_out.read_text())
        assert set(payload) == {
            "a", "b", "c", "rms_residual", "n_points", "lambda",
            "alpha1", "alpha2",
        }
        assert payload["n_points"] == 6

    def test_fit_recovers_synthetic_tanh(self, tmp_path, capsys):
        data = tmp_path / "synth.csv"
        x = np.linspace(-0.9, 0.9, 37)
        y = 0.5 + 0.5 * np.tanh(3.0 * x)
        lines = ["x,y"] + [f"{float(a)!r},{float(b)!r}" for a, b in zip(x, y)]
        data.write_text("\n".join(lines) + "\n", encoding="utf-8")
        assert main(["fit", "--data", str(data)]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["a"] == pytest.approx(0.5, abs=1e-8)
        assert payload["b"] == pytest.approx(0.5, abs=1e-8)
        assert payload["c"] == pytest.approx(3.0, abs=1e-8)
        assert payload["lambda"] is None

    def test_fit_nonconvergence_exit_code(self, tmp_path, monkeypatch):
        data = tmp_path / "synth.csv"
        x = np.linspace(-0.9, 0.9, 9)
        lines = ["x,y"] + [f"{float(a)!r},{float(np.tanh(a))!r}" for a in x]
        data.write_text("\n".join(lines) + "\n", encoding="utf-8")

        def refuse(*args, **kwargs):
            raise FitNonConvergenceError("stuck")

        monkeypatch.setattr(cli, "fit_tanh", refuse)
        assert main(["fit", "--data", str(data)]) == 4


class TestPredictMode:
    def test_prediction_payload(self, capsys):
        code = main([
            "predict", "--omega1", "0.5", "--omega2", "0.7", "--lambda", "0.1",
            "--alpha1", "0", "--alpha2", "-1",
        ])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["mu"] == pytest.approx(-1.0)
        assert payload["law_variant"] == "unified"
        assert payload["predicted_n1_eq"] == pytest.approx(0.11920292, abs=1e-6)
        assert payload["periodic_case"] is False

    def test_periodic_annotation(self, capsys):
        code = main([
            "predict", "--omega1", "0.5", "--omega2", "0.5", "--lambda", "0.1",
            "--alpha1", "1", "--alpha2", "-1",
        ])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["periodic_case"] is True
        assert payload["predicted_n1_eq"] == 0.5


class TestConfigHandling:
    def test_round_trip(self, tmp_path):
        raw = {
            "mode": "induced",
            "params": dict(BASE_PARAMS, alpha1=0.0, alpha2=0.0),
            "schedule": {"tau": 2.0, "horizon": 100.0, "sample_step": 0.04},
            "output_path": "out.csv",
            "format": "csv",
        }
        cfg = RunConfig.from_dict(raw)
        again = RunConfig.from_dict(cfg.to_dict())
        assert again.to_dict() == cfg.to_dict()

    def test_sweep_round_trip(self):
        raw = {
            "mode": "sweep",
            "sweep": {"lambda": 0.1, "alpha1": 0.0, "alpha2": -1.0},
            "output_path": "s.csv",
        }
        cfg = RunConfig.from_dict(raw)
        again = RunConfig.from_dict(cfg.to_dict())
        assert again.to_dict() == cfg.to_dict()
        assert len(cfg.to_dict()["sweep"]["omega2_grid"]) == 37

    def test_flag_overrides_config(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "mode": "predict",
            "params": dict(BASE_PARAMS, alpha1=0.0, alpha2=-1.0),
        })
        assert main(["predict", "--config", cfg, "--lambda", "0.2"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["lambda"] == 0.2
        assert payload["mu"] == pytest.approx(-0.5)

    def test_unknown_field_rejected(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "mode": "exact",
            "params": dict(BASE_PARAMS, typo_field=1.0),
        })
        assert main(["exact", "--config", cfg, "--out", "x.csv"]) == 2
        assert "typo_field" in capsys.readouterr().err

    def test_wrong_section_for_mode_rejected(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "mode": "exact",
            "params": BASE_PARAMS,
            "schedule": {"tau": 1.0, "horizon": 10.0},
            "output_path": "x.csv",
        })
        assert main(["exact", "--config", cfg]) == 2
        assert "schedule" in capsys.readouterr().err

    def test_mode_mismatch_rejected(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"mode": "exact", "params": BASE_PARAMS})
        assert main(["induced", "--config", cfg]) == 2
        err = capsys.readouterr().err
        assert "mode" in err

    def test_invalid_json_reports_location(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text('{"mode": "exact",\n  "params": }', encoding="utf-8")
        assert main(["exact", "--config", str(path)]) == 2
        assert "line 2" in capsys.readouterr().err

    def test_invalid_params_exit_code(self, tmp_path):
        assert main([
            "exact", "--omega1", "-1", "--omega2", "0.7", "--lambda", "0.1",
            "--out", str(tmp_path / "x.csv"),
        ]) == 2

    def test_degenerate_params_are_a_simulation_error(self, tmp_path):
        # omega1 == omega2 with lam == 0 passes validation but has no
        # closed-form propagator
        assert main([
            "exact", "--omega1", "0.5", "--omega2", "0.5", "--lambda", "0",
            "--out", str(tmp_path / "x.csv"),
        ]) == 3

    def test_seed_state_parse_error(self, tmp_path):
        assert main([
            "exact", "--omega1", "0.5", "--omega2", "0.7", "--lambda", "0.1",
            "--seed-state", "canary", "--out", str(tmp_path / "x.csv"),
        ]) == 2
