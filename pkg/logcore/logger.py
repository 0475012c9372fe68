"""
LogCore: structured JSON logging for the sptree tools.

Library modules only ask for named loggers; the command-line entry point
configures the root logger once. Logs always go to stderr (and optionally a
rotating file) so that stdout stays free for trees, records and CSV.
"""

import json
import logging
import sys
from datetime import datetime, timezone
from logging.handlers import RotatingFileHandler
from typing import Iterable, Optional, Union

LOG_FIELDS = ('timestamp', 'level', 'logger', 'message')
VALID_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')
TEXT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class JSONFormatter(logging.Formatter):
    """
    Formats each record as a single JSON object.

    Output format:
    {
        "timestamp": "2026-02-08T20:30:00.123456Z",
        "level": "INFO",
        "logger": "sptree.tracker",
        "message": "update applied",
        "context": {...}  # from extra={'context': {...}}
    }
    """

    def format(self, record: logging.LogRecord) -> str:
        timestamp = datetime.fromtimestamp(record.created, tz=timezone.utc)
        log_data = {
            'timestamp': timestamp.strftime('%Y-%m-%dT%H:%M:%S.%fZ'),
            'level': record.levelname,
            'logger': record.name,
            'message': record.getMessage(),
        }

        context = getattr(record, 'context', None)
        if context:
            log_data['context'] = context

        if record.exc_info:
            log_data['exception'] = {
                'type': record.exc_info[0].__name__,
                'message': str(record.exc_info[1]),
                'traceback': self.formatException(record.exc_info)
            }

        if record.levelno <= logging.DEBUG:
            log_data['source'] = {
                'file': record.pathname,
                'line': record.lineno,
                'function': record.funcName
            }

        return json.dumps(log_data, default=str)


def parse_level(level: Union[int, str]) -> int:
    """Accept either a logging constant or a level name such as 'debug'."""
    if isinstance(level, int):
        return level
    value = logging.getLevelName(str(level).upper())
    if not isinstance(value, int):
        raise ValueError(f"Unknown log level: {level}")
    return value


def setup_logging(
    level: Union[int, str] = logging.INFO,
    log_file: Optional[str] = None,
    use_json: bool = True,
    max_bytes: int = 10 * 1024 * 1024,
    backup_count: int = 3
) -> None:
    """
    Configure the root logger once at startup.

    Child loggers obtained with get_logger(__name__) inherit these handlers.

    Args:
        level: Level constant or name (default: INFO)
        log_file: Optional path for a rotating file handler
        use_json: JSON lines when true, plain text otherwise
        max_bytes: Rotation threshold for the file handler
        backup_count: Rotated files to keep
    """
    numeric = parse_level(level)
    root = logging.getLogger()
    root.setLevel(numeric)

    # Re-init replaces handlers instead of stacking them
    for handler in list(root.handlers):
        root.removeHandler(handler)

    formatter = JSONFormatter() if use_json else logging.Formatter(TEXT_FORMAT)

    console = logging.StreamHandler(sys.stderr)
    console.setLevel(numeric)
    console.setFormatter(formatter)
    root.addHandler(console)

    if log_file:
        file_handler = RotatingFileHandler(
            log_file, maxBytes=max_bytes, backupCount=backup_count
        )
        file_handler.setLevel(numeric)
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)


def get_logger(name: str) -> logging.Logger:
    """
    Return the named logger without attaching handlers.

    Example:
        log = get_logger(__name__)
        log.info("update applied", extra={'context': {'affected': 12}})
    """
    return logging.getLogger(name)


def validate_record(line: str, required: Iterable[str] = LOG_FIELDS) -> bool:
    """
    Check that a line is a JSON object carrying every required key.

    Used both for log lines and for the stat records printed by
    `sptree run --json`.
    """
    try:
        data = json.loads(line)
    except (json.JSONDecodeError, TypeError):
        return False
    if not isinstance(data, dict):
        return False
    return all(field in data for field in required)


def validate_log_format(log_line: str) -> bool:
    """True if the line is a JSON log entry with a known level."""
    if not validate_record(log_line, LOG_FIELDS):
        return False
    return json.loads(log_line)['level'] in VALID_LEVELS
