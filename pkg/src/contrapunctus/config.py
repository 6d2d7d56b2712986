"""Configuration management for Contrapunctus.

Settings are read, lowest precedence first, from field defaults, ``.env`` and
``CONTRAPUNCTUS_*`` environment variables, a flat YAML config file, and finally
explicit command-line flags.
"""

import logging
from pathlib import Path
from typing import Any

import yaml
from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from contrapunctus.enums import OutputFormat, Semantics, Variant
from contrapunctus.errors import ConfigError
from contrapunctus.model.counterpoint import STANDARD_WORLD, CounterpointWorld
from contrapunctus.theory.dichotomy import Dichotomy
from contrapunctus.theory.strict import DIATONIC

logger = logging.getLogger(__name__)


class RunConfig(BaseSettings):
    """Contrapunctus run settings."""

    model_config = SettingsConfigDict(
        env_prefix="CONTRAPUNCTUS_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Algebra
    modulus: int = Field(default=12, ge=2)
    dichotomy_path: Path | None = Field(default=None)
    scale_path: Path | None = Field(default=None)

    # Model and comparison
    variant: Variant = Field(default=Variant.CLASSICAL)
    semantics: Semantics = Field(default=Semantics.ORIGINAL)

    # Output
    output_format: OutputFormat = Field(default=OutputFormat.CSV)
    out: Path | None = Field(default=None)
    summary: bool = Field(default=False)
    golden_dir: Path | None = Field(default=None)

    # Execution
    jobs: int = Field(default=1, ge=1)


CONFIG_KEYS = frozenset(RunConfig.model_fields)


def _read_yaml(path: Path, what: str) -> Any:
    try:
        with open(path, encoding="utf-8") as f:
            return yaml.safe_load(f)
    except OSError as e:
        raise ConfigError(f"cannot read {what} {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"malformed {what} {path}: {e}") from e


def read_config_file(path: Path) -> dict[str, Any]:
    """Load a flat YAML mapping of RunConfig field names.

    Raises:
        ConfigError: If the file is unreadable, not a mapping, nested, or has an
            unknown key.
    """
    data = _read_yaml(path, "config file")
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must be a mapping of settings")
    for key, value in data.items():
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown config key '{key}' in {path}")
        if isinstance(value, (dict, list)):
            raise ConfigError(f"config key '{key}' in {path} must be a scalar")
    logger.debug(f"Loaded {len(data)} settings from {path}")
    return dict(data)


def load_config(config_path: Path | None = None, **overrides: Any) -> RunConfig:
    """Build the run configuration.

    Args:
        config_path: Optional flat YAML config file.
        **overrides: Command-line values; None means "not given".

    Returns:
        Validated settings.

    Raises:
        ConfigError: On a malformed file or an invalid value.
    """
    values = read_config_file(config_path) if config_path else {}
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return RunConfig(**values)
    except ValidationError as e:
        first = e.errors()[0]
        field_name = ".".join(str(p) for p in first["loc"])
        raise ConfigError(f"invalid setting '{field_name}': {first['msg']}") from e


def _int_list(data: dict[str, Any], key: str, path: Path) -> list[int]:
    value = data.get(key)
    if not isinstance(value, list) or not all(isinstance(x, int) for x in value):
        raise ConfigError(f"'{key}' in {path} must be a list of integers")
    return value


def load_dichotomy(path: Path, modulus: int = 12) -> Dichotomy:
    """Read a dichotomy file with ``consonances``, ``dissonances`` and optional ``modulus``.

    Raises:
        ConfigError: If the file is malformed.
        DichotomyError: If the partition violates an invariant.
    """
    data = _read_yaml(path, "dichotomy file")
    if not isinstance(data, dict):
        raise ConfigError(f"dichotomy file {path} must be a mapping")
    n = data.get("modulus", modulus)
    if not isinstance(n, int):
        raise ConfigError(f"'modulus' in {path} must be an integer")
    if n != modulus:
        raise ConfigError(f"dichotomy file {path} is for Z{n}, run uses Z{modulus}")
    return Dichotomy.from_lists(
        _int_list(data, "consonances", path), _int_list(data, "dissonances", path), n
    )


def load_scale(path: Path) -> frozenset[int]:
    """Read a scale file with an integer list ``scale``.

    Raises:
        ConfigError: If the file is malformed.
    """
    data = _read_yaml(path, "scale file")
    if not isinstance(data, dict):
        raise ConfigError(f"scale file {path} must be a mapping")
    return frozenset(_int_list(data, "scale", path))


def build_world(config: RunConfig) -> CounterpointWorld:
    """The model world described by the configuration.

    Raises:
        ConfigError: If a non-default modulus comes without a dichotomy file.
        DichotomyError: If the dichotomy is invalid or not strong.
    """
    n = config.modulus
    if config.dichotomy_path is None and config.scale_path is None and n == 12:
        return STANDARD_WORLD
    if config.dichotomy_path is not None:
        dichotomy = load_dichotomy(config.dichotomy_path, n)
    elif n == 12:
        dichotomy = STANDARD_WORLD.dichotomy
    else:
        raise ConfigError(f"modulus {n} needs a dichotomy file (--dichotomy)")
    if config.scale_path is not None:
        scale: frozenset[int] | None = load_scale(config.scale_path)
    else:
        scale = DIATONIC if n == 12 else None
    world = CounterpointWorld(n, dichotomy, scale)
    logger.info(f"Using Z{n} with K={dichotomy.sorted_consonances}")
    return world
