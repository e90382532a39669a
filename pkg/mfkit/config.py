"""
Configuration management module.

Handles loading and validation of the optional YAML defaults file and of the
per-run settings assembled from command-line flags.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

import yaml

from .constants import (
    DEFAULT_AUDIT_SAMPLE,
    DEFAULT_EQUIV_ORDER,
    DEFAULT_JOBS,
    DEFAULT_LOG_LEVEL,
    DEFAULT_SEED,
    LOG_LEVELS,
    LOG_RETENTION,
    LOG_ROTATION,
    MONOMIAL_ORDERS,
)


@dataclass
class LoggingConfig:
    """Logging configuration."""

    level: str = DEFAULT_LOG_LEVEL
    file: Optional[str] = None
    rotation: str = LOG_ROTATION
    retention: str = LOG_RETENTION


@dataclass
class GroebnerConfig:
    """Groebner basis defaults."""

    order: str = DEFAULT_EQUIV_ORDER
    prereduce_linear: bool = True


@dataclass
class ClassifyConfig:
    """Classification defaults."""

    audit_sample: int = DEFAULT_AUDIT_SAMPLE
    seed: int = DEFAULT_SEED
    jobs: int = DEFAULT_JOBS


@dataclass
class Config:
    """Main application configuration."""

    logging: LoggingConfig = field(default_factory=LoggingConfig)
    groebner: GroebnerConfig = field(default_factory=GroebnerConfig)
    classify: ClassifyConfig = field(default_factory=ClassifyConfig)


@dataclass
class RunConfig:
    """Settings of one command invocation, after flags override file values."""

    command: str
    inputs: List[Path] = field(default_factory=list)
    order: str = DEFAULT_EQUIV_ORDER
    exhaustive: bool = False
    jobs: int = DEFAULT_JOBS
    output: Optional[Path] = None
    generators: str = "all"
    t: int = 1


class ConfigurationError(Exception):
    """Raised when configuration is invalid."""

    pass


def load_config(config_path: Optional[Path] = None) -> Config:
    """
    Load configuration from a YAML file.

    Args:
        config_path: Path to the YAML file; None gives the defaults

    Returns:
        Parsed configuration object

    Raises:
        ConfigurationError: If the file is missing or malformed

    Example:
        >>> config = load_config(Path("mfkit.yaml"))
        >>> print(config.groebner.order)
    """
    if config_path is None:
        return Config()

    if not config_path.exists():
        raise ConfigurationError(f"Configuration file not found: {config_path}")

    with open(config_path, "r", encoding="utf-8") as f:
        try:
            yaml_config = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Invalid YAML in {config_path}: {e}")

    if not yaml_config:
        return Config()
    if not isinstance(yaml_config, dict):
        raise ConfigurationError("Configuration file must contain a mapping")

    unknown = set(yaml_config) - {"logging", "groebner", "classify"}
    if unknown:
        raise ConfigurationError(f"Unknown configuration sections: {', '.join(sorted(unknown))}")

    try:
        return Config(
            logging=LoggingConfig(**(yaml_config.get("logging") or {})),
            groebner=GroebnerConfig(**(yaml_config.get("groebner") or {})),
            classify=ClassifyConfig(**(yaml_config.get("classify") or {})),
        )
    except TypeError as e:
        raise ConfigurationError(f"Invalid configuration format: {e}")


def validate_config(config: Config) -> None:
    """
    Validate configuration values.

    Raises:
        ConfigurationError: If configuration values are invalid
    """
    if config.logging.level.upper() not in LOG_LEVELS:
        raise ConfigurationError(
            f"Invalid log level. Must be one of: {', '.join(LOG_LEVELS)}"
        )

    if config.groebner.order not in MONOMIAL_ORDERS:
        raise ConfigurationError(
            f"Invalid monomial order. Must be one of: {', '.join(MONOMIAL_ORDERS)}"
        )

    if config.classify.audit_sample < 0:
        raise ConfigurationError("Audit sample size must be non-negative")

    if config.classify.jobs < 1:
        raise ConfigurationError("Number of jobs must be at least 1")


def validate_run_config(run: RunConfig) -> None:
    """
    Validate per-run settings before any computation starts.

    Raises:
        ConfigurationError: If a flag value is invalid or an input file is missing
    """
    if run.order not in MONOMIAL_ORDERS:
        raise ConfigurationError(
            f"Invalid monomial order. Must be one of: {', '.join(MONOMIAL_ORDERS)}"
        )

    if run.jobs < 1:
        raise ConfigurationError("Number of jobs must be at least 1")

    if run.generators not in ("2", "3", "all"):
        raise ConfigurationError("Generators must be 2, 3 or all")

    if run.t < 0:
        raise ConfigurationError("Fitting index t must be non-negative")

    for path in run.inputs:
        if not path.exists():
            raise ConfigurationError(f"Input file not found: {path}")
