'''structlog loggers shared by every module: `info_logger, error_logger = setup_logging()`.

The level comes from HECKECAT_LOG_LEVEL; APP_MODE=dev|test renders for the
console, anything else renders one JSON object per line. Both go to stderr
so that command output on stdout stays machine readable.
'''
import logging
import os
import sys
from functools import lru_cache

import structlog

from .utils import def_dump, dumps

TIMESTAMP = structlog.processors.TimeStamper(fmt="%Y-%m-%d %H:%M.%S")


def plain_values(logger, method_name, event_dict):
    '''Field elements, numpy scalars and engine objects become plain JSON values.'''
    for key, val in event_dict.items():
        if key == 'event' or isinstance(val, (str, int, float, bool, list, tuple, dict, type(None))):
            continue
        event_dict[key] = def_dump(val)
    return event_dict


def _renderer(app_mode):
    if app_mode in ('dev', 'test'):
        return structlog.dev.ConsoleRenderer(colors=app_mode == 'dev')
    return structlog.processors.JSONRenderer(serializer=lambda obj, **kw: dumps(obj))


def default_processors(app_mode, errors=False):
    procs = [
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        TIMESTAMP,
        plain_values,
    ]
    if errors:
        procs += [structlog.processors.StackInfoRenderer(), structlog.processors.format_exc_info]
    return procs + [_renderer(app_mode)]


class LevelLogger(structlog.PrintLogger):
    def __init__(self, name, level, file=None):
        self.name = name
        self.level = level
        super().__init__(file=file or sys.stderr)

    @lru_cache()
    def isEnabledFor(self, level):
        return self.level <= level


def level_from_env(app_mode):
    name = os.environ.get('HECKECAT_LOG_LEVEL')
    if name:
        return getattr(logging, name.upper(), logging.INFO)
    return logging.WARNING if app_mode == 'test' else logging.INFO


_cached_loggers = []


def setup_logging(level: int = None):
    if _cached_loggers:
        return _cached_loggers

    app_mode = os.environ.get('APP_MODE', 'test')
    if level is None:
        level = level_from_env(app_mode)

    info_logger = structlog.wrap_logger(
        LevelLogger('heckecat.log', level),
        processors=default_processors(app_mode),
        wrapper_class=structlog.stdlib.BoundLogger)

    error_logger = structlog.wrap_logger(
        LevelLogger('heckecat.error', logging.ERROR),
        processors=default_processors(app_mode, errors=True),
        wrapper_class=structlog.stdlib.BoundLogger)

    _cached_loggers.extend([info_logger, error_logger])
    return _cached_loggers
