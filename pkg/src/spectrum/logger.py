"""Logger module for the spectrum module."""

import logging

logger = logging.getLogger("spectrum")
