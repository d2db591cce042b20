"""Logger module for the design module."""

import logging

logger = logging.getLogger("design")
