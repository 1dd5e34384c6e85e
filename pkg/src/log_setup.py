"""
Logging setup driven by the KSTATE_LOG environment variable.
"""

import logging
import os

from config import Config

_LEVELS = {
    "error": logging.ERROR,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}

log = logging.getLogger("kstate")


def configure_logging(level=None):
    """Configure the package logger and return the level name in effect.

    Reports go to stdout, so log records always go to stderr.
    """
    requested = level if level is not None else os.environ.get(Config.LOG_ENV_VAR, "")
    name = (requested or Config.DEFAULT_LOG_LEVEL).strip().lower()
    unknown = name not in Config.LOG_LEVELS
    if unknown:
        name = Config.DEFAULT_LOG_LEVEL

    root = logging.getLogger()
    if not any(getattr(h, "_kstate", False) for h in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        handler._kstate = True
        root.addHandler(handler)
    root.setLevel(_LEVELS[name])

    if unknown:
        log.warning("unknown %s value %r, using %s", Config.LOG_ENV_VAR, requested, name)
    return name
