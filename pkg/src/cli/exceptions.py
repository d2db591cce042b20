"""Error reporting for the command line"""

import json
import sys

from src.cli.logger import logger
from src.exceptions import MsfError


def default_error_response(exc: MsfError) -> int:
    """Writes the error as one JSON line to stderr and returns its exit status"""
    logger.warning("Error %s: %s - detail: %s", exc.exit_code, exc, exc.detail)
    sys.stderr.write(json.dumps(exc.to_dict(), default=str) + "\n")
    return exc.exit_code
