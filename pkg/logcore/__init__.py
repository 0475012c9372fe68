"""
logcore: structured JSON logging shared by the sptree library and CLI.
"""

from logcore.logger import (
    JSONFormatter,
    get_logger,
    parse_level,
    setup_logging,
    validate_log_format,
    validate_record,
)

__all__ = [
    'JSONFormatter',
    'get_logger',
    'parse_level',
    'setup_logging',
    'validate_log_format',
    'validate_record',
]
__version__ = '1.1.0'
