import json

import pytest

from shiftdigits.config import CONFIG_ENV, Config, ConfigurationError, get_config, load_config, override


def test_defaults():
    cfg = Config()
    assert cfg.M_cap == 64 and cfg.scan_M_cap == 20 and cfg.mode == "symbolic"


@pytest.mark.parametrize("bad", [{"M_cap": 1}, {"p_cap": -1}, {"r_cap": 0}, {"worker_count": 0}, {"mode": "fast"}])
def test_invalid(bad):
    with pytest.raises(ConfigurationError):
        Config(**bad)


def test_env_and_file(tmp_path, monkeypatch):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"p_cap": 2, "mode": "sampled"}))
    monkeypatch.setenv(CONFIG_ENV, str(path))
    cfg = load_config()
    assert cfg.p_cap == 2 and cfg.mode == "sampled"
    assert Config(**cfg.to_dict()) == cfg


def test_override_restores():
    before = get_config()
    with override(M_cap=12):
        assert get_config().M_cap == 12
    assert get_config() == before
