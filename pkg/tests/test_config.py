"""
Test settings resolution: flags over environment over defaults.
"""

import logging
import os

import pytest

from database.orm import DB_PATH
from utils.config import load_settings
from utils.logconfig import setup_logging
from vibronic_gbs import VibronicConfig


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in (
        "VIBRONIC_CACHE_DIR",
        "VIBRONIC_CUTOFF",
        "VIBRONIC_SAMPLES",
        "VIBRONIC_WORKERS",
        "VIBRONIC_LOG_LEVEL",
    ):
        monkeypatch.delenv(name, raising=False)


def test_defaults():
    config = VibronicConfig()
    assert config.cutoff == 10
    assert config.num_samples == 10_000
    assert config.workers == 1
    assert config.log_level == "INFO"
    assert config.ledger_path == os.path.join(config.cache_dir, "runs.db")


def test_ledger_default_matches_database_default():
    assert os.path.abspath(VibronicConfig().ledger_path) == os.path.abspath(DB_PATH)


def test_environment_overrides_defaults(monkeypatch):
    monkeypatch.setenv("VIBRONIC_CUTOFF", "7")
    monkeypatch.setenv("VIBRONIC_WORKERS", "3")
    monkeypatch.setenv("VIBRONIC_LOG_LEVEL", "debug")
    config = VibronicConfig()
    assert config.cutoff == 7
    assert config.workers == 3
    assert config.log_level == "DEBUG"


def test_arguments_override_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("VIBRONIC_CUTOFF", "7")
    monkeypatch.setenv("VIBRONIC_CACHE_DIR", str(tmp_path / "env"))
    config = VibronicConfig(cutoff=4, cache_dir=str(tmp_path / "flag"))
    assert config.cutoff == 4
    assert config.cache_dir == str(tmp_path / "flag")


def test_bad_integer(monkeypatch):
    monkeypatch.setenv("VIBRONIC_SAMPLES", "lots")
    with pytest.raises(ValueError, match="VIBRONIC_SAMPLES"):
        VibronicConfig()


def test_load_settings_does_not_create_cache(tmp_path):
    cache = tmp_path / "nested" / "cache"
    settings = load_settings(cache_dir=str(cache), log_level=None)
    assert not cache.exists()
    assert settings.cache_dir == str(cache)
    assert settings.log_level == "INFO"
    assert "cutoff=10" in str(settings)


@pytest.fixture
def restore_root_logger():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    for handler in root.handlers[:]:
        if handler not in handlers:
            root.removeHandler(handler)
            handler.close()
    for handler in handlers:
        if handler not in root.handlers:
            root.addHandler(handler)
    root.setLevel(level)


def test_setup_logging_writes_file(tmp_path, restore_root_logger):
    log_file = tmp_path / "logs" / "vibronic.log"
    setup_logging("debug", log_file=str(log_file))
    logging.getLogger("functions.sampler").debug("drawing %d patterns", 5)
    for handler in logging.getLogger().handlers:
        handler.flush()
    assert "DEBUG in test_config: drawing 5 patterns" in log_file.read_text()


def test_setup_logging_rejects_unknown_level(tmp_path, restore_root_logger):
    with pytest.raises(ValueError):
        setup_logging("chatty", log_file=str(tmp_path / "vibronic.log"))
