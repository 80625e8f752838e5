import click

from config import LOG_LEVEL

LEVELS = {"DEBUG": 10, "INFO": 20, "WARNING": 30, "ERROR": 40}


def log(level: str, message: str) -> None:
    """
    Write a bracketed diagnostic line such as `[INFO] message` to standard error.

    Messages below the configured CUTOFF_LOG_LEVEL are dropped. Standard output
    is left untouched so CSV and JSON written there stay machine readable.

    Args:
        level (str): One of DEBUG, INFO, WARNING, ERROR.
        message (str): Text to emit.
    """
    threshold = LEVELS.get(LOG_LEVEL, LEVELS["INFO"])
    if LEVELS[level] >= threshold:
        click.echo(f"[{level}] {message}", err=True)


def debug(message: str) -> None:
    log("DEBUG", message)


def info(message: str) -> None:
    log("INFO", message)


def warning(message: str) -> None:
    log("WARNING", message)


def error(message: str) -> None:
    log("ERROR", message)
