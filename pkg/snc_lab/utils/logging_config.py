"""
Loguru sinks for snc-lab.

The console sink writes to stderr at ``SNC_LAB_LOG_LEVEL`` (``INFO`` when the
variable is unset or names no loguru level). A second sink keeps a DEBUG log
of every run in the platform log directory, so long search campaigns can be
inspected afterwards without re-running them at a noisier console level.

Importing this module configures both sinks once.
"""

import os
import sys
from pathlib import Path
from typing import Optional

from loguru import logger
from platformdirs import user_log_dir

CONSOLE_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> "
    "| <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> "
    "- <level>{message}</level>"
)
FILE_FORMAT = (
    "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | pid {process} "
    "| {name}:{function}:{line} - {message}"
)
DEFAULT_LEVEL = "INFO"

_console_sink: Optional[int] = None


def log_file_path() -> Path:
    """Where the DEBUG log of this user lives (``snc_lab.log``)."""
    return Path(user_log_dir("snc-lab", "snc-lab")) / "snc_lab.log"


def _resolve_level(requested: str) -> tuple[str, bool]:
    """Return ``(level, valid)``; unknown names map to the default level."""
    try:
        logger.level(requested)
    except ValueError:
        return DEFAULT_LEVEL, False
    return requested, True


def _replace_console_sink(level: str) -> None:
    global _console_sink
    if _console_sink is not None:
        try:
            logger.remove(_console_sink)
        except ValueError:
            pass
    _console_sink = logger.add(sys.stderr, level=level, format=CONSOLE_FORMAT, colorize=True)


def setup_logging() -> None:
    """Drop loguru's default handler and install the console and file sinks.

    A file sink that cannot be created (read-only home, full disk) leaves
    console logging in place and says so on stderr.
    """
    logger.remove()

    requested = os.environ.get("SNC_LAB_LOG_LEVEL", DEFAULT_LEVEL).upper()
    level, valid = _resolve_level(requested)
    _replace_console_sink(level)

    path = log_file_path()
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        logger.add(
            path,
            level="DEBUG",
            rotation="10 MB",
            retention="10 days",
            compression="zip",
            format=FILE_FORMAT,
            encoding="utf-8",
        )
    except Exception as e:
        print(f"CRITICAL: cannot open log file {path}: {e}", file=sys.stderr)
        logger.warning("Logging to the console only.")
    else:
        logger.debug(f"snc-lab logging ready: console {level}, file {path}")

    if not valid:
        logger.warning(f"Unknown SNC_LAB_LOG_LEVEL '{requested}', console stays at {DEFAULT_LEVEL}.")


def enable_debug_logging() -> None:
    """Lower the console sink to DEBUG, as the ``--debug`` CLI flag does."""
    _replace_console_sink("DEBUG")
    logger.debug("Console log level set to DEBUG.")


setup_logging()

__all__ = ["logger", "enable_debug_logging", "log_file_path", "setup_logging"]
