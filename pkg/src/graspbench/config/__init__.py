"""Configuration module."""

from .run_config import RunConfig, load_config_file, resolve_run_config, write_run_config
from .settings import Settings, get_settings

__all__ = [
    "RunConfig",
    "Settings",
    "get_settings",
    "load_config_file",
    "resolve_run_config",
    "write_run_config",
]
