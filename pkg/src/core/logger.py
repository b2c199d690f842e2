import logging
import os
import sys
from typing import Optional

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'
ROOT_NAME = 'hodgeseq'


class ColoredFormatter(logging.Formatter):
    """Formatter that colours the level name when writing to a terminal."""

    COLORS = {
        'DEBUG': '\033[36m',      # Cyan
        'INFO': '\033[32m',       # Green
        'WARNING': '\033[33m',    # Yellow
        'ERROR': '\033[31m',      # Red
        'CRITICAL': '\033[35m',   # Magenta
        'RESET': '\033[0m'
    }

    def format(self, record):
        levelname = record.levelname
        if levelname in self.COLORS:
            record.levelname = f"{self.COLORS[levelname]}{levelname}{self.COLORS['RESET']}"
        result = super().format(record)
        # Restore so other handlers see the plain name
        record.levelname = levelname
        return result


def _make_handler(level: int, use_colors: bool) -> logging.Handler:
    # stderr: stdout is reserved for CSV/JSON artifacts
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)
    colors = use_colors and sys.stderr.isatty()
    formatter_cls = ColoredFormatter if colors else logging.Formatter
    handler.setFormatter(formatter_cls(fmt=LOG_FORMAT, datefmt=DATE_FORMAT))
    return handler


def get_logger(
    name: str,
    level: Optional[str] = None,
    use_colors: bool = True
) -> logging.Logger:
    """
    Get or create a component logger under the ``hodgeseq`` namespace.

    Args:
        name: Component name, e.g. ``"laplacian"``
        level: Logging level; if None, read from LOG_LEVEL or default to INFO
        use_colors: Colour level names when stderr is a terminal

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(f"{ROOT_NAME}.{name}")

    if not logger.handlers:
        if level is None:
            level = os.getenv('HODGESEQ_LOG_LEVEL', os.getenv('LOG_LEVEL', 'INFO')).upper()
        log_level = getattr(logging, level, logging.INFO)
        logger.setLevel(log_level)
        logger.addHandler(_make_handler(log_level, use_colors))
        logger.propagate = False

    return logger


def configure_root_logger(level: str = 'INFO', use_colors: bool = True):
    """
    Reset every hodgeseq component logger to one level.

    Called once by the CLI after flags are parsed.
    """
    log_level = getattr(logging, level.upper(), logging.INFO)
    for name, logger in list(logging.Logger.manager.loggerDict.items()):
        if not name.startswith(ROOT_NAME) or not isinstance(logger, logging.Logger):
            continue
        logger.setLevel(log_level)
        for handler in logger.handlers:
            handler.setLevel(log_level)

    root_logger = logging.getLogger()
    root_logger.handlers.clear()
    root_logger.setLevel(log_level)
    root_logger.addHandler(_make_handler(log_level, use_colors))
