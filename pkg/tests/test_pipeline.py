import os

import numpy as np

from circlelab.reporting import EXIT_OK, EXIT_STAGE_FAILURE, PipelineConfig, read_map_csv, run_pipeline
from circlelab.utils import JsonLoader

from conftest import EXACT_CONFIG



def test_exact_torus_run(exact_run):
    config, result = exact_run
    assert result.status == EXIT_OK
    summary = result.summary
    assert summary["status"] == "ok"
    assert summary["euler_number"] == -1.0
    assert summary["maximal"]
    assert summary["config_hash"] == config.config_hash()
    for name in ("group.json", "mesh.json", "field.bin", "connection.bin", "gauss_bonnet.json", "rigidity.json",
                 "maps.csv"):
        assert name in summary["files"]
        assert os.path.exists(os.path.join(config.out_dir, name))
    assert JsonLoader.read_artifact(os.path.join(config.out_dir, "summary.json"))["files"] == summary["files"]


def test_exact_torus_checks(exact_run):
    _, result = exact_run
    events = {(event.stage, event.name): event for event in result.log.events}
    assert events[("gauss_bonnet", "milnor_wood")].passed
    assert events[("harmonic", "mass_defect")].passed
    assert events[("connection", "loop_closure")].passed
    assert events[("gauss_bonnet", "horocircle_holonomy")].passed
    assert events[("rigidity", "equivariance")].passed


def test_reruns_are_byte_identical(exact_run, tmp_path):
    _, first = exact_run
    second = run_pipeline(PipelineConfig(**EXACT_CONFIG, out_dir=str(tmp_path)))
    assert second.summary["files"] == first.summary["files"]
    assert second.summary["config_hash"] == first.summary["config_hash"]


def test_solver_failure_stops_the_run(tmp_path):
    config = PipelineConfig(family="punctured-torus", representation="fuchsian-boundary", field_source="solve",
                            resolution=16, bins=64, max_sweeps=1, cusp_area=1.0, out_dir=str(tmp_path))
    result = run_pipeline(config)
    assert result.status == EXIT_STAGE_FAILURE
    summary = JsonLoader.read_artifact(str(tmp_path / "summary.json"))
    assert summary["status"] == "failed"
    assert summary["failed_stage"] == "harmonic"
    assert len(summary["residual_history"]) == 1
    assert "mesh.json" in summary["files"]
    assert "field.bin" not in summary["files"]


def test_random_action_on_a_closed_group_fails_at_the_representation(tmp_path):
    config = PipelineConfig(family="closed-genus-2", representation="pl-custom", out_dir=str(tmp_path))
    result = run_pipeline(config)
    assert result.status == EXIT_STAGE_FAILURE
    assert result.summary["failed_stage"] == "rep"
    assert "group.json" in result.summary["files"]


def test_boundary_map_file_reads_back(exact_run):
    config, _ = exact_run
    lift = read_map_csv(os.path.join(config.out_dir, "maps.csv"))
    x = np.linspace(0.0, 2 * np.pi, 65)
    np.testing.assert_allclose(lift(x + 2 * np.pi), lift(x) + 2 * np.pi, atol=1e-9)
    assert np.all(np.diff(lift(x)) >= 0.0)
    assert np.max(np.abs(lift(x) - x)) < 0.05


def test_each_check_is_recorded_once(exact_run):
    _, result = exact_run
    keys = [(event.stage, event.name) for event in result.log.events]
    assert len(keys) == len(set(keys))


def test_rerun_into_the_same_directory_drops_old_payloads(tmp_path):
    maximal = run_pipeline(PipelineConfig(**EXACT_CONFIG, out_dir=str(tmp_path)))
    assert "maps.csv" in maximal.summary["files"]
    config = PipelineConfig(family="punctured-torus", representation="rotation", rotation_angle=1.0,
                            field_source="solve", resolution=16, bins=64, cusp_area=1.0, out_dir=str(tmp_path))
    result = run_pipeline(config)
    assert not result.summary["maximal"]
    assert "maps.csv" not in result.summary["files"]
    assert not os.path.exists(tmp_path / "maps.csv")
