"""
Tests for configuration management.
"""

import pytest
from pathlib import Path

from mfkit.config import (
    ClassifyConfig,
    Config,
    ConfigurationError,
    RunConfig,
    load_config,
    validate_config,
    validate_run_config,
)


def _write(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "mfkit.yaml"
    path.write_text(text, encoding="utf-8")
    return path


def test_defaults_without_file():
    """Test that no file gives the built-in defaults."""
    config = load_config(None)
    assert config.groebner.order == "grevlex"
    assert config.groebner.prereduce_linear is True
    assert config.classify.audit_sample == 5
    assert config.logging.file is None
    validate_config(config)


def test_load_example_file():
    """Test loading the shipped example configuration."""
    example = Path(__file__).resolve().parent.parent / "mfkit.example.yaml"
    config = load_config(example)
    validate_config(config)
    assert config.groebner.order in ("lex", "grevlex")


def test_load_partial_file(tmp_path):
    """Test that missing keys fall back to defaults."""
    path = _write(tmp_path, "groebner:\n  order: lex\nclassify:\n  jobs: 4\n")
    config = load_config(path)
    assert config.groebner.order == "lex"
    assert config.classify.jobs == 4
    assert config.classify.seed == 0
    assert config.logging.level == "INFO"


def test_empty_file_gives_defaults(tmp_path):
    """Test an empty YAML document."""
    assert load_config(_write(tmp_path, "")) == Config()


def test_missing_file_raises(tmp_path):
    """Test a missing configuration file."""
    with pytest.raises(ConfigurationError, match="not found"):
        load_config(tmp_path / "absent.yaml")


@pytest.mark.parametrize(
    "text",
    [
        "groebner: [unclosed",
        "- just\n- a list\n",
        "metrics:\n  port: 9000\n",
        "groebner:\n  strategy: sugar\n",
    ],
)
def test_malformed_files_raise(tmp_path, text):
    """Test invalid YAML, non-mappings, unknown sections and unknown keys."""
    with pytest.raises(ConfigurationError):
        load_config(_write(tmp_path, text))


def test_config_validation():
    """Test configuration validation."""
    with pytest.raises(ConfigurationError, match="log level"):
        config = Config()
        config.logging.level = "LOUD"
        validate_config(config)
    with pytest.raises(ConfigurationError, match="monomial order"):
        config = Config()
        config.groebner.order = "deglex"
        validate_config(config)
    with pytest.raises(ConfigurationError):
        validate_config(Config(classify=ClassifyConfig(jobs=0)))
    with pytest.raises(ConfigurationError):
        validate_config(Config(classify=ClassifyConfig(audit_sample=-1)))


def test_run_config_validation(tmp_path):
    """Test per-run checks on flags and input files."""
    validate_run_config(RunConfig("classify"))
    with pytest.raises(ConfigurationError, match="Generators"):
        validate_run_config(RunConfig("classify", generators="5"))
    with pytest.raises(ConfigurationError, match="t must be"):
        validate_run_config(RunConfig("fitting", t=-1))
    with pytest.raises(ConfigurationError, match="not found"):
        validate_run_config(RunConfig("equiv", inputs=[tmp_path / "x.json"]))
    existing = tmp_path / "x.json"
    existing.write_text("{}", encoding="utf-8")
    validate_run_config(RunConfig("equiv", inputs=[existing]))
