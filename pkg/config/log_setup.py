"""Process-wide logging: one stderr handler, optional Axiom shipping, cached loggers."""

import logging
import sys
from typing import Optional

from axiom_py import Client as AxiomClient  # type: ignore[import-not-found]
from axiom_py.logging import AxiomHandler  # type: ignore[import-not-found]

from .settings import get_config

LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
# Thread-executor blocks log from worker threads; name them when debugging
DEBUG_FORMAT = "%(asctime)s | %(levelname)-8s | %(threadName)s | %(name)s | %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
QUIET_LIBRARIES = ("numexpr",)

_LOGGER_CACHE: dict[str, logging.Logger] = {}
_INSTALLED: list[logging.Handler] = []


def configure_logging(force: bool = False) -> None:
    """Attach handlers to the root logger once per process.

    `force` drops the handlers installed earlier and re-reads the settings.
    """
    if _INSTALLED and not force:
        return
    root = logging.getLogger()
    for handler in _INSTALLED:
        root.removeHandler(handler)
    _INSTALLED.clear()

    cfg = get_config()
    level = getattr(logging, cfg.normalized_log_level, logging.INFO)
    # stdout carries result rows
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(
        logging.Formatter(
            fmt=DEBUG_FORMAT if level <= logging.DEBUG else LOG_FORMAT, datefmt=DATE_FORMAT
        )
    )
    root.addHandler(handler)
    _INSTALLED.append(handler)
    root.setLevel(level)

    if cfg.axiom_token:
        client = AxiomClient(token=cfg.axiom_token)
        axiom = AxiomHandler(client, cfg.axiom_dataset)
        root.addHandler(axiom)
        _INSTALLED.append(axiom)

    for name in QUIET_LIBRARIES:
        logging.getLogger(name).setLevel(logging.WARNING)


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """Return a configured logger with caching.

    Ensures root logger is configured once; returns child loggers subsequently.
    """
    configure_logging()
    lname = name or "uarnc"
    if lname not in _LOGGER_CACHE:
        _LOGGER_CACHE[lname] = logging.getLogger(lname)
    return _LOGGER_CACHE[lname]
