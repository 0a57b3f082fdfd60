"""
Logging for the uniserial command and library.

Every module logger is a child of the package logger and carries its own
handlers: a console handler on stderr, so reports on stdout stay clean JSON,
and a logfile handler that only records warnings and worse.
"""

import logging
import os
import sys
from pathlib import Path
from typing import Literal

PACKAGE: str = __package__ or "uniserial_tools"
COMMAND: str = "uniserial"

CONSOLE = "console"
LOGFILE = "logfile"

# Console layouts, chosen by the handler level
VERBOSE_FORMAT = "[%(levelname).1s %(name)s:%(lineno)d] %(funcName)s: %(message)s"
TERSE_FORMAT = f"{COMMAND}: %(levelname)s: %(message)s"
# One line per record, sortable by timestamp across runs
LOGFILE_FORMAT = "%(asctime)s pid=%(process)d %(levelname)s %(name)s: %(message)s"


def console_formatter(level: int) -> logging.Formatter:
    """
    Return the console layout for a handler level. Debug output names the
    emitting function, anything coarser reads like a command line message.

    Args:
        level (int): Handler level

    Returns:
        Formatter
    """
    if level <= logging.DEBUG:
        return logging.Formatter(VERBOSE_FORMAT)
    return logging.Formatter(TERSE_FORMAT)


def get_logfile(make: bool = False) -> Path:
    """
    Path of the package log file under $XDG_DATA_HOME, ~/.local/share otherwise.

    Args:
        make (bool): Create parent folders

    Returns:
        Path
    """
    data_home = os.environ.get("XDG_DATA_HOME") or Path.home() / ".local" / "share"
    log_dir = Path(data_home) / PACKAGE
    if make:
        log_dir.mkdir(parents=True, exist_ok=True)
    return (log_dir / f"{PACKAGE}.log").resolve()


def _handler_names(logger: logging.Logger) -> set[str]:
    return {handler.get_name() for handler in logger.handlers}


def get_logger(name: str = PACKAGE) -> logging.Logger:
    """
    Return the named logger with console and logfile handlers attached once.

    Args:
        name (str): Logger name, the module name by default

    Returns:
        Logger
    """
    logger = logging.getLogger(name)
    logger.setLevel(logging.DEBUG)
    # Handlers live on every module logger, ancestors would print twice
    logger.propagate = False

    names = _handler_names(logger)
    if CONSOLE not in names:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.set_name(CONSOLE)
        console_handler.setLevel(logging.INFO)
        console_handler.setFormatter(console_formatter(logging.INFO))
        logger.addHandler(console_handler)

    if LOGFILE not in names:
        try:
            logfile_handler = logging.FileHandler(get_logfile(make=True), encoding="utf-8")
        except OSError as e:
            logger.warning(f"No log file, console only: {e}")
        else:
            logfile_handler.set_name(LOGFILE)
            logfile_handler.setLevel(logging.WARNING)
            logfile_handler.setFormatter(logging.Formatter(LOGFILE_FORMAT))
            logger.addHandler(logfile_handler)

    return logger


log = get_logger(PACKAGE)


def set_handler_levels(
    handler_name: Literal["console", "logfile"] = CONSOLE,
    level: int = logging.INFO,
    logger_name: str = PACKAGE,
):
    """
    Set the level of one handler kind on the package logger and all module loggers.
    Console handlers switch layout along with the level.

    Args:
        handler_name (str): console or logfile
        level (int): 10, 20, 30, 40 or 50
        logger_name (str): Root of the logger tree to update
    """
    for name in list(logging.Logger.manager.loggerDict):
        if name != logger_name and not name.startswith(f"{logger_name}."):
            continue
        for handler in logging.getLogger(name).handlers:
            if handler.get_name() != handler_name:
                continue
            handler.setLevel(level)
            if handler_name == CONSOLE:
                handler.setFormatter(console_formatter(level))

    log.debug(f"{handler_name} level of {logger_name} set to {logging.getLevelName(level)}")
