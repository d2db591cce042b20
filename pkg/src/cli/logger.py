"""Logger module for the cli module."""

import logging

logger = logging.getLogger("cli")
