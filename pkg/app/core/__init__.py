from app.core.config.settings import settings
from app.core.config.logging import setup_logging

from app.core.commons.exceptions import (
    BaseSimulationException,
    ConfigInvalid,
    ConfigSyntax,
    cli_exception_handler,
)

__all__ = [
    "settings",
    "setup_logging",
    "BaseSimulationException",
    "ConfigInvalid",
    "ConfigSyntax",
    "cli_exception_handler",
]
