"""Logger module for the transfer-matrix module."""

import logging

logger = logging.getLogger("tmm")
