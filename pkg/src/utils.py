"""Utility functions for the project."""

import math
from typing import Dict

from scipy import constants

from src.config import FLOAT_SIGNIFICANT_DIGITS

# Unit suffixes accepted per quantity, as multipliers to the stored unit.
UNITS: Dict[str, Dict[str, float]] = {
    "frequency": {"Hz": 1.0, "kHz": 1e3, "MHz": 1e6, "GHz": 1e9, "THz": 1e12},
    "length": {"m": 1.0, "mm": 1e-3, "um": 1e-6, "µm": 1e-6, "nm": 1e-9},
    "energy": {"eV": 1.0, "meV": 1e-3, "J": 1.0 / constants.e},
    "time": {"s": 1.0, "ps": 1e-12, "fs": 1e-15},
    "temperature": {"K": 1.0},
    "mobility": {"m2/Vs": 1.0, "cm2/Vs": 1e-4},
    "angle": {"rad": 1.0, "deg": math.pi / 180.0},
}

# Unit used when a value is written back out; multiplier 1.0 keeps dumps exact.
CANONICAL_UNITS: Dict[str, str] = {
    "frequency": "Hz",
    "length": "m",
    "energy": "eV",
    "time": "s",
    "temperature": "K",
    "mobility": "m2/Vs",
    "angle": "rad",
}


def format_float(value: float) -> str:
    """Serialize a float with enough digits to round-trip exactly"""
    return format(value, f".{FLOAT_SIGNIFICANT_DIGITS}g")


def magnitude_db(value: complex) -> float:
    """20·log10|value|, -inf for an exact zero"""
    magnitude = abs(value)
    if magnitude == 0.0:
        return -math.inf
    return 20.0 * math.log10(magnitude)


def unwrap(value):
    """Return a 0-d numpy result as a scalar, arrays unchanged"""
    if getattr(value, "ndim", 1) == 0:
        return value[()]
    return value
