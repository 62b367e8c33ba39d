"""Tests for the run graph and the detlab CLI."""

import json

import pytest

from src.errors import ConfigError, NumericError
from src.lab import EXPERIMENTS, Experiment, ExperimentConfig, ExperimentReport
from src.main import MANIFEST_FILE, RunManifest, exit_code_for, main
from src.runner import resolve_selection, run_experiments
from src.runner.nodes import SUMMARY_FILE


def _passing(cfg):
    report = ExperimentReport("fake_ok", ("R", "value"))
    report.add_row(1.0, 2.0)
    report.check("fine", True)
    return report


def _failing_check(cfg):
    report = ExperimentReport("fake_verdict", ("R", "value"))
    report.add_row(1.0, 2.0)
    report.check("broken", False)
    return report


def _raising(cfg):
    raise NumericError("no convergence")


@pytest.fixture
def fake_experiments(monkeypatch):
    """Register three cheap experiments next to the real ones."""
    monkeypatch.setitem(EXPERIMENTS, "fake_ok", Experiment("fake_ok", _passing, "always passes"))
    monkeypatch.setitem(
        EXPERIMENTS, "fake_verdict", Experiment("fake_verdict", _failing_check, "fails a check")
    )
    monkeypatch.setitem(EXPERIMENTS, "fake_bad", Experiment("fake_bad", _raising, "raises"))


class TestResolveSelection:
    def test_all_by_default(self):
        assert resolve_selection() == list(EXPERIMENTS)

    def test_registry_order(self):
        assert resolve_selection(["eta", "dirichlet_split"]) == ["dirichlet_split", "eta"]

    def test_unknown_name(self):
        with pytest.raises(ConfigError):
            resolve_selection(["dirichlet_split", "nope"])


class TestRunGraph:
    """Tests for the fan-out/fan-in run graph."""

    def test_failures_do_not_stop_siblings(self, fake_experiments, tmp_path):
        state = run_experiments(ExperimentConfig(), ["fake_ok", "fake_bad"], str(tmp_path))

        assert set(state["reports"]) == {"fake_ok"}
        assert state["failures"] == {"fake_bad": "NumericError: no convergence"}
        assert state["exit_codes"] == {"fake_bad": 3}
        assert "fake_ok" in state["timings"]
        assert (tmp_path / "fake_ok.csv").exists()

        summary = json.loads((tmp_path / SUMMARY_FILE).read_text(encoding="utf-8"))
        assert [e["name"] for e in summary["experiments"]] == ["fake_ok"]
        assert summary["failures"] == {"fake_bad": "NumericError: no convergence"}
        assert exit_code_for(state) == 3

    def test_empty_selection(self, tmp_path):
        state = run_experiments(ExperimentConfig(), [], str(tmp_path))
        assert state["written"] == []
        assert (tmp_path / SUMMARY_FILE).exists()


class TestExitCodes:
    def test_clean_run(self):
        assert exit_code_for({"reports": {"fake_ok": _passing(None)}, "exit_codes": {}}) == 0

    def test_verdict_failure(self):
        assert exit_code_for({"reports": {"fake_verdict": _failing_check(None)}}) == 4

    def test_highest_code_wins(self):
        state = {"reports": {"fake_verdict": _failing_check(None)}, "exit_codes": {"fake_bad": 3}}
        assert exit_code_for(state) == 4


class TestRunManifest:
    def test_write_and_finalize(self, tmp_path):
        manifest = RunManifest(config_path=None, selection=["fake_ok"], out_dir=str(tmp_path))
        path = manifest.write()
        assert json.loads(path.read_text(encoding="utf-8"))["status"] == "running"

        manifest.finalize(0, {"fake_ok": 1.23456})
        payload = json.loads(path.read_text(encoding="utf-8"))
        assert payload["status"] == "finished"
        assert payload["exit_code"] == 0
        assert payload["timings"] == {"fake_ok": 1.235}
        assert payload["finished_at"] >= payload["started_at"]


class TestCli:
    """Tests for the detlab command line."""

    def test_list(self, capsys):
        assert main(["list"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0].startswith("dirichlet_split")

    def test_list_json(self, capsys):
        assert main(["list", "--json"]) == 0
        entries = json.loads(capsys.readouterr().out)
        assert len(entries) == len(EXPERIMENTS)
        assert entries[0]["name"] == "dirichlet_split"

    def test_unknown_experiment(self, tmp_path):
        assert main(["run", "--only", "nope", "--out", str(tmp_path)]) == 2

    def test_bad_override(self, tmp_path):
        assert main(["run", "--set", "mode_cutoff=2", "--out", str(tmp_path)]) == 2

    def test_missing_config(self, tmp_path):
        assert main(["run", "--config", str(tmp_path / "absent.cfg"), "--out", str(tmp_path)]) == 2

    def test_run_writes_outputs(self, fake_experiments, tmp_path):
        assert main(["run", "--only", "fake_ok", "--out", str(tmp_path)]) == 0
        assert (tmp_path / "fake_ok.csv").exists()
        manifest = json.loads((tmp_path / MANIFEST_FILE).read_text(encoding="utf-8"))
        assert manifest["status"] == "finished"
        assert manifest["selection"] == ["fake_ok"]
        assert manifest["exit_code"] == 0

    def test_only_accepts_commas(self, fake_experiments, tmp_path):
        code = main(["run", "--only", "fake_ok,fake_verdict", "--out", str(tmp_path)])
        assert code == 4
        summary = json.loads((tmp_path / SUMMARY_FILE).read_text(encoding="utf-8"))
        assert [e["name"] for e in summary["experiments"]] == ["fake_ok", "fake_verdict"]

    def test_numeric_failure_exit_code(self, fake_experiments, tmp_path):
        assert main(["run", "--only", "fake_ok", "--only", "fake_bad", "--out", str(tmp_path)]) == 3

    @pytest.mark.slow
    def test_dirichlet_split_end_to_end(self, tmp_path):
        argv = [
            "run", "--only", "dirichlet_split",
            "--set", "R_grid=1", "--set", "mode_cutoff=8",
            "--out", str(tmp_path),
        ]
        assert main(argv) == 0
        assert (tmp_path / "dirichlet_split.csv").exists()
        manifest = json.loads((tmp_path / MANIFEST_FILE).read_text(encoding="utf-8"))
        assert manifest["status"] == "finished"
