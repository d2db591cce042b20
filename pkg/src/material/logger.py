"""Logger module for the material module."""

import logging

logger = logging.getLogger("material")
