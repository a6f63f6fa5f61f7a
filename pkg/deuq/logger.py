"""Logging utilities for deuq.

Library code logs through `DeuqLogger` only. INFO carries search progress, ensemble steps and
scores; DEBUG adds per-epoch training losses, surrogate refits and acquisition picks.
"""

import logging
import sys
from datetime import datetime
from pathlib import Path

DeuqLogger = logging.getLogger("DeuqLogger")

LOG_FORMAT = logging.Formatter(
    "%(asctime)-15s %(levelname)s: %(message)s", datefmt="%Y-%m-%d %H:%M:%S,"
)

CONSOLE_LEVELS: dict[str, int] = {
    "debug": logging.DEBUG,
    "info": logging.INFO,
    "warning": logging.WARNING,
}
"""Console levels by name; any other name logs errors only."""


def _file_handler(filename: Path, level: int, file_mode: str) -> logging.FileHandler:
    filename = Path(filename)
    filename.parent.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(filename, mode=file_mode)
    handler.setLevel(level)
    handler.setFormatter(LOG_FORMAT)
    return handler


def _reset_handlers() -> None:
    for handler in DeuqLogger.handlers:
        handler.close()
    DeuqLogger.handlers = []


def setup_logging(
    info_log_filename: Path | None = None,
    debug_log_filename: Path | None = None,
    std_out_level: str = "info",
    file_mode: str = "a",
):
    """Sets up the DeuqLogger w.r.t. the log file locations and the console level.

    Called by the test_logging fixture in conftest.py and by every `deuq` command, which puts
    `deuq.info.log` and `deuq.debug.log` in its run directory. Can be called by the user to
    setup logging for their session. If called multiple times, the logger will be reset.

    Args:
        info_log_filename: the location of the INFO log file. Defaults to
            `deuq_[datetime].info.log` in cwd().
        debug_log_filename: the location of the DEBUG log file. If None, no debug file is
            written.
        std_out_level: the level of logging to the console. One of "info", "warning", "debug".
            Defaults to "info" but will be set to ERROR if nothing provided matches.
        file_mode: use 'a' to append, 'w' to write without appending
    """
    # add function variable so that we know if logging has been called
    setup_logging.called = True

    _reset_handlers()
    DeuqLogger.setLevel(logging.DEBUG)

    if info_log_filename is None:
        stamp = datetime.now().strftime("%Y_%m_%d__%H_%M_%S")
        info_log_filename = Path.cwd() / f"deuq_{stamp}.info.log"
    DeuqLogger.addHandler(_file_handler(info_log_filename, logging.INFO, file_mode))

    if debug_log_filename:
        DeuqLogger.addHandler(_file_handler(debug_log_filename, logging.DEBUG, file_mode))

    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setFormatter(LOG_FORMAT)
    console_handler.setLevel(CONSOLE_LEVELS.get(std_out_level, logging.ERROR))
    DeuqLogger.addHandler(console_handler)
