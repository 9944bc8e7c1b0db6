#!/usr/bin/env python3
"""
Logging Configuration Module
Centralized loguru setup for the solver library and CLI
"""
import os
import sys
from pathlib import Path
from typing import Optional
from loguru import logger


class LoggerConfig:
    """Centralized logger configuration"""

    def __init__(self, project_root: Path = None):
        if project_root is None:
            project_root = Path(__file__).parent.parent.parent

        self.project_root = project_root
        self.logs_dir = project_root / "logs"
        self.solver_log = self.logs_dir / "fracreduce.log"

    def _add_console(self, component: str, color: str, level: str):
        # stdout carries data (reports, CSV); diagnostics go to stderr
        logger.add(
            sys.stderr,
            level=level,
            format=f"<green>{{time:YYYY-MM-DD HH:mm:ss}}</green> | <level>{{level: <8}}</level> | <{color}>{component}</{color}> | {{message}}",
            colorize=True
        )

    def _add_file(self, component: str, level: str, log_file: Optional[Path]):
        path = Path(log_file) if log_file else self.solver_log
        path.parent.mkdir(parents=True, exist_ok=True)
        logger.add(
            path,
            level=level,
            format=f"{{time:YYYY-MM-DD HH:mm:ss}} | {{level: <8}} | {component} | {{message}}",
            rotation="100 MB",
            retention="30 days",
            compression="zip"
        )

    def setup_cli_logging(self, level: str = "WARNING", console: bool = True,
                          log_file: Optional[Path] = None):
        """Setup logging for the command-line front end"""
        logger.remove()

        if console:
            self._add_console("CLI", "cyan", level)
        if log_file:
            self._add_file("CLI", level, log_file)

        return logger


# Global logger config instance
logger_config = LoggerConfig()


def get_cli_logger(level: str = "WARNING", console: bool = True, log_file: Optional[Path] = None):
    """Get configured CLI logger"""
    return logger_config.setup_cli_logging(level, console, log_file)


# Environment variable support
def get_log_level(default: str = "WARNING") -> str:
    """Get log level from environment variable"""
    return os.getenv("LOG_LEVEL", default).upper()


def get_console_logging(default: bool = True) -> bool:
    """Check if console logging is enabled via environment variable"""
    value = os.getenv("LOG_CONSOLE")
    if value is None:
        return default
    return value.lower() in ("true", "1", "yes", "on")
