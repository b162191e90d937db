# greatroot/utils/logging.py
import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

from greatroot.config import settings

_HANDLER_NAME = "greatroot-rich"


def setup_logging(level: Optional[str] = None) -> logging.Logger:
    """Attach a single stderr RichHandler to the package logger."""
    logger = logging.getLogger("greatroot")
    logger.setLevel((level or settings.LOG_LEVEL).upper())

    if not any(h.get_name() == _HANDLER_NAME for h in logger.handlers):
        handler = RichHandler(
            console=Console(stderr=True),
            show_path=False,
            rich_tracebacks=True,
        )
        handler.set_name(_HANDLER_NAME)
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
        logger.addHandler(handler)
    return logger
