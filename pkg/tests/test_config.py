from pathlib import Path

import pytest

from src.config import Config, load_config, parse_config
from src.errors import ConfigError
from src.model import CALIBRATED_HOT_OCCUPATION


def test_defaults_without_file():
    config = load_config()
    cfg = config.photocell()
    assert cfg.donor_count == 3
    assert cfg.baths.n_h == CALIBRATED_HOT_OCCUPATION
    assert cfg.rates.gamma_h == (0.62e-6,) * 3
    assert config.gamma_grid().size == 200
    assert config.get("bath.T_c") == 300.0
    assert config.get("bath.missing", "fallback") == "fallback"


def test_shipped_config_matches_defaults():
    assert parse_config(str(Path(__file__).parent.parent / "config.yaml")) == load_config().photocell()


def test_override_and_donor_count(write_config):
    path = write_config(
        """
donor_count: 2
energies:
  E_a: [1.8, 1.75]
rates:
  Gamma: 1.0e-3
"""
    )
    cfg = parse_config(str(path))
    assert cfg.donor_count == 2
    assert cfg.levels.E_a == (1.8, 1.75)
    assert cfg.rates.Gamma == 1e-3
    # untouched keys keep their defaults
    assert cfg.rates.chi == 0.2


def test_donor_override_replicates_scalars(write_config):
    cfg = parse_config(str(write_config("donor_count: 2\n")), donor_count=6)
    assert cfg.donor_count == 6
    assert cfg.basis.dimension == 9
    assert len(cfg.rates.gamma_c) == 6


def test_hot_temperature_replaces_occupation(write_config):
    cfg = parse_config(str(write_config("bath:\n  T_h: 5800.0\n")))
    assert cfg.baths.n_h is None
    assert cfg.baths.T_h == 5800.0
    assert cfg.baths.hot_occupation_mode == "from_temperature"


def test_both_hot_settings_are_rejected(write_config):
    path = write_config("bath:\n  T_h: 5800.0\n  n_h: 1.0e-2\n")
    with pytest.raises(ConfigError, match="exactly one of bath.n_h and bath.T_h"):
        parse_config(str(path))


@pytest.mark.parametrize(
    "text, message",
    [
        ("rates:\n  Gamma_c: -1.0\n", "negative rate Gamma_c"),
        ("rates:\n  J: 0.01\n", "donor coupling out of scope"),
        ("energies:\n  E_beta: 1.7\n", "E_alpha <= E_beta"),
        ("solver:\n  steady_state_method: eigen\n", "unknown steady_state_method"),
        ("rates:\n  gamma_h: [1.0e-6, 2.0e-6]\n", "lists 2 values for 3 donors"),
        ("rates:\n  chi: yes\n", "must be a number"),
        ("donor_count: 0\n", "donor_count must be a positive integer"),
    ],
)
def test_invalid_values(write_config, text, message):
    with pytest.raises(ConfigError, match=message) as excinfo:
        parse_config(str(write_config(text)))
    assert excinfo.value.exit_code == 2


def test_unknown_key_names_its_path(write_config):
    with pytest.raises(ConfigError, match="Unknown config key: rates.gamma_x"):
        Config(str(write_config("rates:\n  gamma_x: 1.0\n")))


def test_section_type_mismatch(write_config):
    with pytest.raises(ConfigError, match="must be a section"):
        Config(str(write_config("rates: 1.0\n")))


def test_malformed_yaml_reports_line(write_config):
    with pytest.raises(ConfigError, match="at line 3"):
        Config(str(write_config("donor_count: 3\nrates:\n  Gamma: a: b\n")))


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        Config(str(tmp_path / "absent.yaml"))


def test_empty_file_gives_defaults(write_config):
    assert Config(str(write_config(""))).to_dict() == Config.DEFAULT_CONFIG


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("PHOTOCELL_LOG_LEVEL", "debug")
    monkeypatch.setenv("PHOTOCELL_LOG_FORMAT", "JSON")
    monkeypatch.setenv("PHOTOCELL_WORKERS", "4")
    config = Config()
    assert config.get("logging.level") == "DEBUG"
    assert config.get("logging.format") == "json"
    assert config.get("runtime.workers") == 4


def test_invalid_worker_environment(monkeypatch):
    monkeypatch.setenv("PHOTOCELL_WORKERS", "many")
    with pytest.raises(ConfigError):
        Config()


def test_list_accessors(write_config):
    config = Config(str(write_config("sweep:\n  donor_counts: [3, 6.5]\n")))
    with pytest.raises(ConfigError):
        config.int_list("sweep.donor_counts")
    assert config.float_list("sweep.open_circuit_ladder") == [1e-12, 1e-13, 1e-14]


def test_grid_errors_become_config_errors(write_config):
    config = Config(str(write_config("sweep:\n  gamma_min: 1.0\n  gamma_max: 1.0e-3\n")))
    with pytest.raises(ConfigError):
        config.gamma_grid()
