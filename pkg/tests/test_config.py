import json

import pytest

from psindex.config import Config, load_config
from psindex.errors import ConfigError


def test_defaults():
    cfg = load_config(environ={})
    assert cfg == Config()
    assert cfg.depth == 4 and cfg.q == "canonical" and cfg.oracle_modes == (8, 12, 16, 20)


def test_file_overrides(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"depth": 6, "oracle_modes": [16, 20, 24], "format": "kv"}))
    cfg = load_config(path, environ={})
    assert cfg.depth == 6 and cfg.oracle_modes == (16, 20, 24) and cfg.format == "kv"


@pytest.mark.parametrize("payload", ['{"depht": 3}', "[1, 2]", "{not json", '{"format": "xml"}',
                                     '{"depth": 0}'])
def test_rejected(tmp_path, payload):
    path = tmp_path / "cfg.json"
    path.write_text(payload)
    with pytest.raises(ConfigError):
        load_config(path, environ={})


def test_seed_environment():
    assert load_config(environ={"PSINDEX_SEED": "42"}).seed == 42
    with pytest.raises(ConfigError):
        load_config(environ={"PSINDEX_SEED": "abc"})
