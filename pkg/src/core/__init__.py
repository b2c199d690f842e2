"""Core module for configuration, logging and errors."""

from core.errors import HodgeSeqError, InputError
from core.logger import get_logger, configure_root_logger, ColoredFormatter
from core.settings import Settings, ToleranceSettings, settings

__all__ = [
    "get_logger",
    "configure_root_logger",
    "ColoredFormatter",
    "HodgeSeqError",
    "InputError",
    "Settings",
    "ToleranceSettings",
    "settings",
]
