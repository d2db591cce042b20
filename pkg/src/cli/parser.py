"""
Flat key = value run configuration

Dimensional values carry a unit suffix ("2.5 THz", "9.2 um", "0.5 eV").
In lists the unit may be given once at the end ("0, 10, 20 deg"). Text
after # is a comment.
"""

import re
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from src.cli.logger import logger
from src.cli.schemas import RunConfig
from src.exceptions import ConfigError
from src.utils import CANONICAL_UNITS, UNITS, format_float

# Quantity of each key; None for dimensionless numbers and plain words.
KEY_QUANTITIES: Dict[str, Optional[str]] = {
    "mu_c": "energy",
    "tau": "time",
    "temperature": "temperature",
    "mobility": "mobility",
    "frequency": "frequency",
    "period": "length",
    "patch_width": "length",
    "thickness": "length",
    "eps_r": None,
    "loss_tangent": None,
    "model": None,
    "f_start": "frequency",
    "f_stop": "frequency",
    "n_points": None,
    "angle": "angle",
    "polarization": None,
    "angles": "angle",
    "polarizations": None,
    "mu_c_list": "energy",
    "f_target": "frequency",
    "mu_c_bounds": "energy",
    "solve_mode": None,
    "free_parameters": None,
    "match_tolerance": None,
    "min_absorption": None,
    "bandwidth_threshold": None,
    "validation_tolerance": None,
    "output_format": None,
    "output": None,
}

NUMBER_KEYS = {
    "eps_r",
    "loss_tangent",
    "match_tolerance",
    "min_absorption",
    "bandwidth_threshold",
    "validation_tolerance",
}
INTEGER_KEYS = {"n_points"}
LIST_KEYS = {"angles", "polarizations", "mu_c_list", "mu_c_bounds", "free_parameters"}

_QUANTITY = re.compile(
    r"^(?P<number>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(?P<unit>\S*)$"
)


def _to_float(text: str, key: str, line: int) -> float:
    try:
        return float(text)
    except ValueError as exc:
        raise ConfigError(f"'{text}' is not a number", key=key, line=line) from exc


def parse_quantity(
    text: str,
    quantity: str,
    key: str,
    line: int,
    default_unit: Optional[str] = None,
) -> float:
    """Value converted to the stored unit of its quantity"""
    match = _QUANTITY.match(text.strip())
    if not match:
        raise ConfigError(f"Cannot read '{text}' as a {quantity}", key=key, line=line)
    unit = match.group("unit") or default_unit
    if not unit:
        raise ConfigError(
            f"Missing {quantity} unit, one of {', '.join(UNITS[quantity])}",
            key=key,
            line=line,
        )
    if unit not in UNITS[quantity]:
        raise ConfigError(
            f"Unit '{unit}' is not a {quantity} unit", key=key, line=line
        )
    return _to_float(match.group("number"), key, line) * UNITS[quantity][unit]


def _trailing_unit(items: List[str]) -> Optional[str]:
    match = _QUANTITY.match(items[-1]) if items else None
    if match is None:
        return None
    return match.group("unit") or None


def parse_value(key: str, text: str, line: int) -> Any:
    """Typed value of one configuration entry"""
    quantity = KEY_QUANTITIES[key]
    if key in LIST_KEYS:
        items = [item.strip() for item in text.split(",") if item.strip()]
        if quantity is None:
            return items
        unit = _trailing_unit(items)
        return [parse_quantity(item, quantity, key, line, unit) for item in items]
    if quantity is not None:
        return parse_quantity(text, quantity, key, line)
    if key in NUMBER_KEYS:
        return _to_float(text, key, line)
    if key in INTEGER_KEYS:
        try:
            return int(text)
        except ValueError as exc:
            raise ConfigError(
                f"'{text}' is not an integer", key=key, line=line
            ) from exc
    return text


def parse_config(text: str) -> RunConfig:
    """
    Validated RunConfig from configuration text

    Unknown or repeated keys, unit mismatches and invalid values raise
    ConfigError naming the key and line.
    """
    values: Dict[str, Any] = {}
    lines: Dict[str, int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        if "=" not in content:
            raise ConfigError("Expected 'key = value'", line=number)
        key, value = (part.strip() for part in content.split("=", 1))
        if key not in KEY_QUANTITIES:
            raise ConfigError("Unknown key", key=key, line=number)
        if key in values:
            raise ConfigError(
                f"Key already set on line {lines[key]}", key=key, line=number
            )
        if not value:
            raise ConfigError("Missing value", key=key, line=number)
        values[key] = parse_value(key, value, number)
        lines[key] = number

    try:
        config = RunConfig(**values)
    except ValidationError as exc:
        error = exc.errors()[0]
        key = str(error["loc"][0]) if error["loc"] else None
        raise ConfigError(
            error["msg"], key=key, line=lines.get(key) if key else None
        ) from exc
    logger.debug("Parsed %d configuration keys", len(values))
    return config


def _format_value(key: str, value: Any) -> str:
    quantity = KEY_QUANTITIES[key]
    if isinstance(value, (list, tuple)):
        return ", ".join(_format_value(key, item) for item in value)
    if isinstance(value, Enum):
        return value.value
    if quantity is not None:
        return f"{format_float(value)} {CANONICAL_UNITS[quantity]}"
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def dump_config(config: RunConfig) -> str:
    """Configuration text that parses back to the same RunConfig"""
    lines = ["# effective configuration"]
    for key in KEY_QUANTITIES:
        value = getattr(config, key)
        if value is None:
            continue
        lines.append(f"{key} = {_format_value(key, value)}")
    return "\n".join(lines) + "\n"
