"""
Loguru setup helpers
"""
from loguru import logger

from core.logging import get_cli_logger, get_console_logging, get_log_level


def test_log_level_from_environment(monkeypatch):
    monkeypatch.delenv("LOG_LEVEL", raising=False)
    assert get_log_level() == "WARNING"
    monkeypatch.setenv("LOG_LEVEL", "debug")
    assert get_log_level() == "DEBUG"


def test_console_flag_from_environment(monkeypatch):
    monkeypatch.delenv("LOG_CONSOLE", raising=False)
    assert get_console_logging() is True
    assert get_console_logging(default=False) is False
    monkeypatch.setenv("LOG_CONSOLE", "0")
    assert get_console_logging() is False
    assert get_console_logging(default=True) is False


def test_file_sink(tmp_path):
    path = tmp_path / "logs" / "solver.log"
    try:
        get_cli_logger("INFO", console=False, log_file=path)
        logger.debug("hidden")
        logger.info("reduction done")
    finally:
        logger.remove()
    text = path.read_text()
    assert "| CLI | reduction done" in text
    assert "hidden" not in text


def test_cli_logger_level(tmp_path):
    path = tmp_path / "cli.log"
    try:
        get_cli_logger("ERROR", console=False, log_file=path)
        logger.warning("not shown")
        logger.error("shown")
    finally:
        logger.remove()
    text = path.read_text()
    assert "| CLI | shown" in text
    assert "not shown" not in text
