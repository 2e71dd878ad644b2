"""structlog setup shared by the CLI and the tests"""

import logging
import sys

import structlog

from .config import get_settings


def configure_logging(level: str = "") -> None:
    """Route structlog output to stderr at the configured level"""
    level_name = (level or get_settings().log_level).upper()
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(
            logging.getLevelName(level_name)
        ),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
