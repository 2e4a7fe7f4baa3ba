"""Integration tests for the command-line entry point."""

import json
from pathlib import Path

import numpy as np
import pytest

from src.graspbench.cli import main
from src.graspbench.data import write_dataset, write_predictions
from src.graspbench.data.imaging import write_rgb
from tests.fixtures.test_data import CORNELL_RECTANGLE, four_sample_fixture


def run(*argv) -> int:
    return main([str(a) for a in argv])


def read_json(path: Path) -> dict:
    return json.loads(Path(path).read_text())


def read_error(capsys) -> dict:
    # log lines share stderr; the JSON error is printed last
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


@pytest.fixture
def synth_dir(tmp_path: Path) -> Path:
    out = tmp_path / "synth"
    assert run("synth", "--n", 20, "--categories", 4, "--seed", 0, "--out", out) == 0
    return out


class TestSynthAndConvert:
    """Tests for writing and converting canonical datasets."""

    def test_synth_writes_records(self, synth_dir):
        """Test synthetic scenes are written with a run record."""
        records = sorted((synth_dir / "samples").glob("*.json"))
        assert len(records) == 20
        first = read_json(records[0])
        assert first["id"] == "bar_00000"
        assert len(first["grasps_pos"]) == 3
        assert read_json(synth_dir / "run_config.json")["command"] == "synth"

    def test_convert_canonical_is_stable(self, synth_dir, tmp_path):
        """Test re-converting a canonical dataset yields identical records."""
        first, second = tmp_path / "first", tmp_path / "second"
        assert run("convert", synth_dir, "--format", "canonical", "--out", first) == 0
        assert run("convert", first, "--format", "canonical", "--out", second) == 0
        for path in sorted((first / "samples").glob("*.json")):
            assert path.read_text() == (second / "samples" / path.name).read_text()

    def test_convert_cornell(self, tmp_path, capsys):
        """Test a Cornell folder converts and writes a load report."""
        source = tmp_path / "cornell" / "01"
        source.mkdir(parents=True)
        write_rgb(source / "pcd0100r.png", np.zeros((48, 64, 3), dtype=np.uint8))
        (source / "pcd0100cpos.txt").write_text("".join(f"{x} {y}\n" for x, y in CORNELL_RECTANGLE))
        out = tmp_path / "converted"

        assert run("convert", tmp_path / "cornell", "--format", "cornell", "--out", out) == 0
        record = read_json(out / "samples" / "pcd0100.json")
        assert len(record["grasps_pos"]) == 1
        assert read_json(out / "load_report.json")["n_samples"] == 1
        assert "Wrote 1 samples" in capsys.readouterr().out

    def test_unknown_format_in_config(self, synth_dir, tmp_path, capsys):
        """Test a misspelt format from --config is rejected."""
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"format": "cornel"}))
        out = tmp_path / "out"
        assert run("convert", synth_dir, "--config", config, "--out", out) == 1
        error = read_error(capsys)
        assert error["error"] == "ConfigError"
        assert error["details"]["format"] == "cornel"
        assert not out.exists()

    def test_empty_dataset(self, tmp_path, capsys):
        """Test an empty dataset directory is reported as JSON on stderr."""
        empty = tmp_path / "empty"
        empty.mkdir()
        assert run("convert", empty, "--format", "canonical", "--out", tmp_path / "out") == 1
        error = read_error(capsys)
        assert error["error"] == "EmptyDataset"

    def test_missing_dataset_root(self, tmp_path, monkeypatch, capsys):
        """Test a missing dataset argument without a default root fails."""
        monkeypatch.delenv("GRASPBENCH_DATASET_ROOT", raising=False)
        assert run("split", "--out", tmp_path / "out") == 1
        assert read_error(capsys)["error"] == "ConfigError"


class TestSplitCommand:
    """Tests for the split command."""

    def test_image_wise_counts(self, synth_dir, tmp_path):
        """Test an image-wise split keeps the configured ratio."""
        out = tmp_path / "split"
        assert run("split", synth_dir, "--seed", 0, "--out", out) == 0
        record = read_json(out / "split.json")
        assert len(record["train"]) == 16
        assert len(record["test"]) == 4
        assert not set(record["train"]) & set(record["test"])

    def test_deterministic(self, synth_dir, tmp_path):
        """Test the same seed reproduces the split."""
        a, b = tmp_path / "a", tmp_path / "b"
        assert run("split", synth_dir, "--seed", 7, "--out", a) == 0
        assert run("split", synth_dir, "--seed", 7, "--out", b) == 0
        assert (a / "split.json").read_text() == (b / "split.json").read_text()

    def test_object_wise_disjoint_categories(self, synth_dir, tmp_path):
        """Test an object-wise split never shares a category."""
        out = tmp_path / "split"
        assert run("split", synth_dir, "--mode", "object_wise", "--seed", 0, "--out", out) == 0
        record = read_json(out / "split.json")
        category = {
            p.stem: read_json(p)["object_category"] for p in (synth_dir / "samples").glob("*.json")
        }
        train = {category[i] for i in record["train"]}
        test = {category[i] for i in record["test"]}
        assert not train & test
        assert len(record["train"]) + len(record["test"]) == 20
        assert read_json(out / "run_config.json")["split_mode"] == "object_wise"

    def test_value_error_is_reported_as_json(self, synth_dir, tmp_path, monkeypatch, capsys):
        """Test a stray ValueError still ends as a JSON error and exit code 1."""
        import src.graspbench.cli as cli

        def broken_split(samples, spec):
            raise ValueError("ratio went missing")

        monkeypatch.setattr(cli, "split", broken_split)
        assert run("split", synth_dir, "--out", tmp_path / "out") == 1
        error = read_error(capsys)
        assert error["error"] == "ConfigError"
        assert error["message"] == "ratio went missing"
        assert error["details"]["command"] == "split"

    def test_config_file_overrides_flags(self, synth_dir, tmp_path):
        """Test a --config file wins over flags."""
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"seed": 5}))
        out = tmp_path / "split"
        assert run("split", synth_dir, "--seed", 1, "--config", config, "--out", out) == 0
        assert read_json(out / "split.json")["seed"] == 5
        assert read_json(out / "run_config.json")["seed"] == 5


class TestAugmentCommand:
    """Tests for the augment command."""

    def test_multiplier(self, synth_dir, tmp_path):
        """Test only training ids are expanded, each by the multiplier."""
        split_dir, out = tmp_path / "split", tmp_path / "augmented"
        assert run("split", synth_dir, "--seed", 0, "--out", split_dir) == 0
        assert run(
            "augment", synth_dir, "--split", split_dir / "split.json",
            "--multiplier", 3, "--out", out,
        ) == 0
        assert len(list((out / "samples").glob("*.json"))) == 16 * 3
        assert read_json(out / "augment_spec.json")["target_multiplier"] == 3

    def test_zero_multiplier(self, synth_dir, tmp_path, capsys):
        """Test a multiplier below one is a configuration error."""
        out = tmp_path / "out"
        assert run("augment", synth_dir, "--multiplier", 0, "--out", out) == 1
        assert read_error(capsys)["error"] == "ConfigError"
        assert not list(out.glob("samples/*.json"))

    def test_insufficient_spec(self, synth_dir, tmp_path, capsys):
        """Test an augment spec with too few combinations fails."""
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps({
            "rotations": [0.0], "translations": [[0, 0]], "target_multiplier": 2,
        }))
        assert run("augment", synth_dir, "--augment-spec", spec, "--out", tmp_path / "out") == 1
        assert read_error(capsys)["error"] == "InsufficientSpec"


class TestImageCommands:
    """Tests for maskify and rgd."""

    def test_maskify(self, synth_dir, tmp_path):
        """Test composited records carry their provenance."""
        out = tmp_path / "masked"
        assert run("maskify", synth_dir, "--workers", 2, "--out", out) == 0
        record = read_json(out / "samples" / "bar_00000.json")
        assert record["provenance"] == "mask_composited"

    def test_rgd(self, synth_dir, tmp_path):
        """Test RGD records carry their provenance."""
        out = tmp_path / "rgd"
        assert run("rgd", synth_dir, "--out", out) == 0
        record = read_json(out / "samples" / "bar_00000.json")
        assert record["provenance"] == "rgd"


class TestBaselinePipeline:
    """End-to-end synthetic pipeline."""

    def test_composited_clutter_pipeline(self, tmp_path, capsys):
        """Test masks recover accuracy of the mask-free baseline on clutter."""
        scenes, masked = tmp_path / "scenes", tmp_path / "masked"
        preds, report = tmp_path / "preds", tmp_path / "report"
        assert run("synth", "--n", 30, "--background", "clutter", "--seed", 0, "--out", scenes) == 0
        assert run("maskify", scenes, "--out", masked) == 0
        assert run("baseline", masked, "--predictor", "foreground_pca", "--out", preds) == 0
        capsys.readouterr()
        assert run(
            "evaluate", masked, "--predictions", preds / "predictions.json", "--out", report
        ) == 0

        table = capsys.readouterr().out
        assert table.strip().splitlines()[-1].startswith("accuracy: ")
        data = read_json(report / "eval_report.json")
        assert data["n_total"] == 30
        assert data["accuracy"] >= 0.95
        assert read_json(report / "run_config.json")["command"] == "evaluate"

    def test_evaluate_fixture(self, tmp_path, capsys):
        """Test the four-scene fixture prints three of four correct."""
        samples, predictions = four_sample_fixture()
        write_dataset(samples, tmp_path / "fixture")
        write_predictions(tmp_path / "predictions.json", predictions)
        assert run(
            "evaluate", tmp_path / "fixture", "--predictions", tmp_path / "predictions.json"
        ) == 0
        assert capsys.readouterr().out.strip().splitlines()[-1] == "accuracy: 0.7500 (3/4)"

    def test_evaluate_with_split(self, synth_dir, tmp_path):
        """Test evaluation is restricted to the test partition."""
        split_dir, preds, report = tmp_path / "split", tmp_path / "preds", tmp_path / "report"
        assert run("split", synth_dir, "--seed", 0, "--out", split_dir) == 0
        split_file = split_dir / "split.json"
        assert run("baseline", synth_dir, "--split", split_file, "--out", preds) == 0
        assert len(read_json(preds / "predictions.json")["predictions"]) == 4
        assert run(
            "evaluate", synth_dir, "--predictions", preds / "predictions.json",
            "--split", split_file, "--out", report,
        ) == 0
        data = read_json(report / "eval_report.json")
        assert data["n_total"] == 4
        assert data["split_mode"] == "image_wise"

    def test_unknown_predictor_in_config(self, synth_dir, tmp_path, capsys):
        """Test a bad predictor from --config is reported as JSON."""
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"predictor": "bogus"}))
        assert run("baseline", synth_dir, "--config", config, "--out", tmp_path / "preds") == 1
        error = read_error(capsys)
        assert error["error"] == "ConfigError"
        assert "bogus" in error["message"]

    def test_visualize(self, synth_dir, tmp_path):
        """Test overlays are written per sample."""
        preds, out = tmp_path / "preds", tmp_path / "overlays"
        assert run("baseline", synth_dir, "--out", preds) == 0
        assert run(
            "visualize", synth_dir, "--predictions", preds / "predictions.json",
            "--limit", 2, "--out", out,
        ) == 0
        assert sorted(p.name for p in out.glob("*.png")) == ["bar_00000.png", "bar_00001.png"]


class TestTrainingCommands:
    """Tests for gradcheck, fit-toy and scene-shift."""

    def test_gradcheck_passes(self, tmp_path, capsys):
        """Test analytic gradients agree with finite differences."""
        assert run("gradcheck", "--batches", 5, "--out", tmp_path) == 0
        assert read_json(tmp_path / "gradcheck.json")["passed"] is True
        assert "pass" in capsys.readouterr().out

    def test_gradcheck_smooth_l1(self):
        """Test the smooth-L1 variant also passes."""
        assert run("gradcheck", "--batches", 3, "--l1-variant", "smooth_l1") == 0

    def test_gradcheck_zero_tolerance_fails(self):
        """Test an impossible tolerance gives a failing exit code."""
        assert run("gradcheck", "--batches", 2, "--tolerance", 0) == 1

    def test_fit_toy(self, tmp_path):
        """Test the toy head fit is monotone and reaches the classification target."""
        assert run("fit-toy", "--steps", 30, "--out", tmp_path) == 0
        summary = read_json(tmp_path / "fit_toy.json")
        assert summary["non_increasing"] is True
        assert summary["converged"] is True
        assert summary["final_classification"] < 1e-2
        assert summary["final_loss"] < summary["trajectory"][0]
        assert summary["n_proposals"] == 36
        assert summary["n_positive"] == 2
        assert (tmp_path / "trajectory.png").exists()

    def test_fit_toy_reads_anchor_settings(self, tmp_path):
        """Test the anchor aspects in --config shape the matched targets."""
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"anchor_aspects": [1.0, 1.0, 1.0], "boxes": 1}))
        assert run("fit-toy", "--config", config, "--out", tmp_path / "out") == 0
        summary = read_json(tmp_path / "out" / "fit_toy.json")
        assert summary["n_proposals"] == 36
        # one box on three identical anchors
        assert summary["n_positive"] == 3

    def test_fit_toy_without_steps_fails(self, tmp_path):
        """Test a fit that never reaches the target exits 1."""
        assert run("fit-toy", "--steps", 0, "--lr", 1.0, "--out", tmp_path) == 1
        assert read_json(tmp_path / "fit_toy.json")["converged"] is False

    @pytest.mark.slow
    def test_scene_shift(self, tmp_path):
        """Test the scene-shift comparison writes both accuracies."""
        assert run("scene-shift", "--n", 20, "--out", tmp_path) == 0
        result = read_json(tmp_path / "scene_shift.json")
        assert result["n_scenes"] == 20
        assert 0.0 <= result["raw_accuracy"] <= 1.0
