"""Tests for configuration loading."""

from pathlib import Path

import pytest

from contrapunctus.config import (
    RunConfig,
    build_world,
    load_config,
    load_dichotomy,
    load_scale,
    read_config_file,
)
from contrapunctus.enums import OutputFormat, Semantics, Variant
from contrapunctus.errors import ConfigError, DichotomyError
from contrapunctus.model.counterpoint import STANDARD_WORLD


@pytest.fixture(autouse=True)
def isolated(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    """Run from an empty directory without CONTRAPUNCTUS_* variables."""
    monkeypatch.chdir(tmp_path)
    for name in [
        "CONTRAPUNCTUS_JOBS",
        "CONTRAPUNCTUS_VARIANT",
        "CONTRAPUNCTUS_MODULUS",
        "CONTRAPUNCTUS_OUTPUT_FORMAT",
    ]:
        monkeypatch.delenv(name, raising=False)


def write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


class TestRunConfig:
    """Tests for RunConfig and load_config."""

    def test_defaults(self) -> None:
        config = load_config()
        assert config.modulus == 12
        assert config.variant is Variant.CLASSICAL
        assert config.semantics is Semantics.ORIGINAL
        assert config.output_format is OutputFormat.CSV
        assert config.jobs == 1
        assert config.out is None

    def test_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("CONTRAPUNCTUS_JOBS", "4")
        monkeypatch.setenv("CONTRAPUNCTUS_VARIANT", "idempotent")
        config = RunConfig()
        assert config.jobs == 4
        assert config.variant is Variant.IDEMPOTENT

    def test_config_file(self, tmp_path: Path) -> None:
        path = write(tmp_path / "run.yaml", "variant: local-global-nilpotent\noutput_format: md\n")
        config = load_config(path)
        assert config.variant is Variant.LOCAL_GLOBAL_NILPOTENT
        assert config.output_format is OutputFormat.MARKDOWN

    def test_flags_override_file(self, tmp_path: Path) -> None:
        path = write(tmp_path / "run.yaml", "jobs: 2\nsemantics: refined\n")
        config = load_config(path, jobs=8, semantics=None)
        assert config.jobs == 8
        assert config.semantics is Semantics.REFINED

    def test_flags_override_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("CONTRAPUNCTUS_JOBS", "4")
        assert load_config(jobs=2).jobs == 2

    def test_empty_file(self, tmp_path: Path) -> None:
        assert read_config_file(write(tmp_path / "empty.yaml", "")) == {}

    def test_unknown_key(self, tmp_path: Path) -> None:
        path = write(tmp_path / "run.yaml", "voices: 3\n")
        with pytest.raises(ConfigError, match="unknown config key 'voices'"):
            load_config(path)

    def test_nested_value(self, tmp_path: Path) -> None:
        path = write(tmp_path / "run.yaml", "variant:\n  name: classical\n")
        with pytest.raises(ConfigError, match="must be a scalar"):
            load_config(path)

    def test_not_a_mapping(self, tmp_path: Path) -> None:
        path = write(tmp_path / "run.yaml", "- jobs\n")
        with pytest.raises(ConfigError, match="mapping"):
            load_config(path)

    def test_malformed_yaml(self, tmp_path: Path) -> None:
        path = write(tmp_path / "run.yaml", "jobs: [1\n")
        with pytest.raises(ConfigError, match="malformed"):
            load_config(path)

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(ConfigError, match="cannot read"):
            load_config(tmp_path / "absent.yaml")

    def test_invalid_value(self) -> None:
        with pytest.raises(ConfigError, match="invalid setting 'jobs'"):
            load_config(jobs=0)
        with pytest.raises(ConfigError, match="invalid setting 'variant'"):
            load_config(variant="baroque")


class TestWorldFiles:
    """Tests for dichotomy and scale files."""

    def test_load_dichotomy(self, tmp_path: Path) -> None:
        path = write(
            tmp_path / "z6.yaml", "modulus: 6\nconsonances: [0, 1, 3]\ndissonances: [2, 4, 5]\n"
        )
        dich = load_dichotomy(path, 6)
        assert dich.sorted_consonances == [0, 1, 3]
        assert str(dich.polarity) == "e^5*5"

    def test_dichotomy_modulus_mismatch(self, tmp_path: Path) -> None:
        path = write(
            tmp_path / "z6.yaml", "modulus: 6\nconsonances: [0, 1, 3]\ndissonances: [2, 4, 5]\n"
        )
        with pytest.raises(ConfigError, match="is for Z6"):
            load_dichotomy(path, 12)

    def test_dichotomy_not_a_partition(self, tmp_path: Path) -> None:
        path = write(tmp_path / "bad.yaml", "consonances: [0, 1]\ndissonances: [1, 2]\n")
        with pytest.raises(DichotomyError):
            load_dichotomy(path)

    def test_dichotomy_needs_integer_lists(self, tmp_path: Path) -> None:
        path = write(tmp_path / "bad.yaml", "consonances: zero\ndissonances: [1]\n")
        with pytest.raises(ConfigError, match="list of integers"):
            load_dichotomy(path)

    def test_load_scale(self, tmp_path: Path) -> None:
        path = write(tmp_path / "scale.yaml", "scale: [0, 2, 3, 5, 7, 8, 10]\n")
        assert load_scale(path) == frozenset({0, 2, 3, 5, 7, 8, 10})


class TestBuildWorld:
    """Tests for build_world."""

    def test_default_is_standard(self) -> None:
        assert build_world(load_config()) is STANDARD_WORLD

    def test_other_modulus_needs_dichotomy(self) -> None:
        with pytest.raises(ConfigError, match="needs a dichotomy file"):
            build_world(load_config(modulus=6))

    def test_other_modulus(self, tmp_path: Path) -> None:
        path = write(tmp_path / "z6.yaml", "consonances: [0, 1, 3]\ndissonances: [2, 4, 5]\n")
        world = build_world(load_config(modulus=6, dichotomy_path=path))
        assert world.modulus == 6
        assert world.scale is None

    def test_custom_scale(self, tmp_path: Path) -> None:
        path = write(tmp_path / "scale.yaml", "scale: [0, 2, 3, 5, 7, 8, 10]\n")
        world = build_world(load_config(scale_path=path))
        assert world.scale == frozenset({0, 2, 3, 5, 7, 8, 10})
        assert not world.is_standard
