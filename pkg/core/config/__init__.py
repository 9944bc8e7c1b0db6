"""
Configuration package
"""

from .models import AppConfig, SolverConfig, LoggingConfig, CliConfig, SolveMethod, OutputFormat
from .manager import ConfigManager, config_manager, get_config, reload_config

__all__ = [
    'AppConfig',
    'SolverConfig',
    'LoggingConfig',
    'CliConfig',
    'SolveMethod',
    'OutputFormat',
    'ConfigManager',
    'config_manager',
    'get_config',
    'reload_config',
]
