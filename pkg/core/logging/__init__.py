"""
Logging module for the fractional equation solver
"""

from .logger_config import (
    get_cli_logger,
    get_log_level,
    get_console_logging,
    logger_config
)

__all__ = [
    'get_cli_logger',
    'get_log_level',
    'get_console_logging',
    'logger_config'
]
