"""Logger module for the circuit module."""

import logging

logger = logging.getLogger("circuit")
