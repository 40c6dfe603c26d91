import json
import os

from lab import EXIT_STAGE_FAILURE, EXIT_VALIDATION, main

from conftest import EXACT_CONFIG



def test_group_command(tmp_path):
    out = tmp_path / "group.json"
    assert main(["group", "--family", "closed-genus-2", "--out", str(out)]) == 0
    assert json.loads(out.read_text(encoding="utf-8"))["family"] == "closed-genus-2"


def test_mesh_command(tmp_path):
    group, mesh = tmp_path / "group.json", tmp_path / "mesh.json"
    assert main(["group", "--out", str(group)]) == 0
    assert main(["mesh", "--group", str(group), "--res", "16", "--cusp-area", "1.0", "--out", str(mesh)]) == 0
    assert mesh.exists()


def test_invalid_config_exits_with_validation_status(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({**EXACT_CONFIG, "bins": 100}), encoding="utf-8")
    assert main(["run", "--config", str(path)]) == EXIT_VALIDATION


def test_failing_run_exits_with_stage_status(tmp_path):
    path = tmp_path / "config.json"
    config = {**EXACT_CONFIG, "field_source": "solve", "resolution": 16, "bins": 64, "max_sweeps": 1}
    path.write_text(json.dumps(config), encoding="utf-8")
    assert main(["run", "--config", str(path), "--out-dir", str(tmp_path / "out")]) == EXIT_STAGE_FAILURE
    assert (tmp_path / "out" / "summary.json").exists()


def test_emit_command(exact_run, tmp_path):
    config, _ = exact_run
    out = tmp_path / "slopes.csv"
    assert main(["emit", "--dir", config.out_dir, "--quantity", "slopes", "--out", str(out)]) == 0
    assert os.path.getsize(out) > 0


def test_gauss_bonnet_rejects_too_many_levels(exact_run, tmp_path):
    config, _ = exact_run
    group = os.path.join(config.out_dir, "group.json")
    rep = os.path.join(config.out_dir, "representation.json")
    out = tmp_path / "report.json"
    assert main(["gauss-bonnet", "--group", group, "--rep", rep, "--levels", "9", "--out", str(out)]) == EXIT_VALIDATION
    assert main(["gauss-bonnet", "--group", group, "--rep", rep, "--levels", "0", "--out", str(out)]) == EXIT_VALIDATION
    assert not out.exists()
