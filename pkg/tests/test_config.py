import logging

import pytest
from pydantic import ValidationError

from src.config import Settings, get_settings
from src.utils import setup_logging


@pytest.fixture
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def restore_root_logger():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield root
    for handler in root.handlers:
        if handler not in handlers:
            handler.close()
    root.handlers[:] = handlers
    root.setLevel(level)


def test_defaults(fresh_settings, monkeypatch):
    for name in (
        "FROLICHER_LOG_LEVEL",
        "FROLICHER_OUTPUT_FORMAT",
        "FROLICHER_CHECK_QUOTIENTS",
        "FROLICHER_MAX_GENERATORS",
    ):
        monkeypatch.delenv(name, raising=False)
    settings = get_settings()
    assert settings.log_level == "WARNING"
    assert settings.output_format == "table"
    assert settings.check_quotients is True
    assert settings.max_generators == 64


def test_environment(fresh_settings, monkeypatch):
    monkeypatch.setenv("FROLICHER_LOG_LEVEL", "debug")
    monkeypatch.setenv("FROLICHER_OUTPUT_FORMAT", "JSON")
    monkeypatch.setenv("FROLICHER_CHECK_QUOTIENTS", "false")
    monkeypatch.setenv("FROLICHER_MAX_GENERATORS", "12")
    settings = get_settings()
    assert settings.log_level == "DEBUG"
    assert settings.output_format == "json"
    assert settings.check_quotients is False
    assert settings.max_generators == 12


def test_settings_are_cached(fresh_settings):
    assert get_settings() is get_settings()


@pytest.mark.parametrize(
    "kwargs", [{"output_format": "xml"}, {"max_generators": 0}, {"max_generators": 65}]
)
def test_invalid_settings(kwargs):
    with pytest.raises(ValidationError):
        Settings(**kwargs)


def test_settings_are_frozen():
    with pytest.raises(ValidationError):
        Settings().log_level = "DEBUG"


def test_setup_logging_with_file(tmp_path, restore_root_logger):
    log_file = tmp_path / "logs" / "frolicher.log"
    setup_logging(level="info", log_file=str(log_file))
    logging.getLogger("src.test").info("hello")
    for handler in restore_root_logger.handlers:
        handler.flush()
    assert restore_root_logger.level == logging.INFO
    assert "src.test - INFO - hello" in log_file.read_text()
