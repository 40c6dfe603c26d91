import json

import numpy as np
import pytest

from circlelab.reporting import PipelineConfig
from circlelab.utils.errors import ConfigError

from conftest import EXACT_CONFIG



@pytest.mark.parametrize("overrides", [
    {"bins": 100},
    {"bins": 32},
    {"resolution": 4},
    {"family": "custom"},
    {"family": "klein-bottle"},
    {"representation": "anosov"},
    {"field_source": "guess"},
    {"representation": "rotation", "field_source": "exact"},
    {"cusp_area": 0.0},
    {"levels": [0.5, -1.0]},
    {"levels": [0.9, 0.5]},
])
def test_invalid_configs_are_rejected(overrides):
    with pytest.raises(ConfigError):
        PipelineConfig(**{**EXACT_CONFIG, **overrides})


def test_unknown_keys_are_rejected():
    with pytest.raises(ConfigError):
        PipelineConfig.from_json({**EXACT_CONFIG, "colour": "blue"})


def test_missing_file_is_a_config_error(tmp_path):
    with pytest.raises(ConfigError):
        PipelineConfig.read(str(tmp_path / "absent.json"))


def test_read_keeps_every_value(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(EXACT_CONFIG), encoding="utf-8")
    config = PipelineConfig.read(str(path))
    assert config.bins == 128
    assert config.levels == [0.5, 0.9]
    assert config.max_sweeps > 0


def test_hash_ignores_the_output_directory():
    first = PipelineConfig(**EXACT_CONFIG, out_dir="a")
    second = PipelineConfig(**EXACT_CONFIG, out_dir="b")
    assert first.config_hash() == second.config_hash()
    assert len(first.config_hash()) == 64
    assert PipelineConfig(**{**EXACT_CONFIG, "seed": 8}).config_hash() != first.config_hash()


def test_stage_generators_are_reproducible_and_independent():
    config = PipelineConfig(**EXACT_CONFIG)
    first = config.stage_rng("rep").uniform(size=4)
    np.testing.assert_array_equal(first, PipelineConfig(**EXACT_CONFIG).stage_rng("rep").uniform(size=4))
    assert not np.array_equal(first, config.stage_rng("montecarlo").uniform(size=4))
