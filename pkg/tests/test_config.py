import logging

from hyperwalk.config import get_settings
from hyperwalk.logging_context import RunContextFilter, configure_logging, get_current_run_id, run_context


def test_settings_defaults(monkeypatch):
    for name in ["HYPERWALK_MAX_LEVEL", "HYPERWALK_SAMPLES", "HYPERWALK_SEED", "HYPERWALK_WORKERS", "HYPERWALK_LOG_LEVEL"]:
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    settings = get_settings()
    assert settings.max_level == 4
    assert settings.samples == 100_000
    assert settings.seed == 7
    assert settings.workers == 1
    assert settings.log_level == "WARNING"
    get_settings.cache_clear()


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("HYPERWALK_MAX_LEVEL", "6")
    monkeypatch.setenv("HYPERWALK_WORKERS", "0")
    monkeypatch.setenv("HYPERWALK_LOG_LEVEL", "debug")
    get_settings.cache_clear()
    settings = get_settings()
    assert settings.max_level == 6
    assert settings.workers == 1
    assert settings.log_level == "DEBUG"
    get_settings.cache_clear()


def test_run_context_sets_and_resets_run_id():
    assert get_current_run_id() is None
    with run_context("check") as run_id:
        assert run_id.startswith("check-")
        assert get_current_run_id() == run_id
    assert get_current_run_id() is None


def test_filter_tags_records():
    record = logging.LogRecord("hyperwalk.test", logging.INFO, __file__, 1, "message", None, None)
    with run_context("analyze") as run_id:
        RunContextFilter().filter(record)
    assert record.run == run_id


def test_configure_logging_replaces_handlers():
    configure_logging("INFO")
    configure_logging("DEBUG")
    logger = logging.getLogger("hyperwalk")
    assert len(logger.handlers) == 1
    assert logger.level == logging.DEBUG
    assert not logger.propagate
