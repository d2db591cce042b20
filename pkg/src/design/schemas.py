"""Schemas for the design module."""

from typing import List, Optional, Tuple

from pydantic import Field, field_validator

from src.circuit.schemas import Stackup
from src.config import (
    DEFAULT_MIN_ABSORPTION,
    GEOMETRY_SEARCH_SCALE,
    MU_C_SEARCH_BOUNDS_EV,
)
from src.enums import FreeParameter
from src.schemas import BaseSchema


class DesignTarget(BaseSchema):
    """What the inverse design should reach"""

    f_target: float = Field(gt=0)
    min_absorption: float = Field(default=DEFAULT_MIN_ABSORPTION, gt=0, le=1)
    free_parameters: List[FreeParameter] = Field(
        default=[FreeParameter.MU_C], min_length=1
    )

    @field_validator("free_parameters")
    @classmethod
    def check_unique(cls, parameters: List[FreeParameter]) -> List[FreeParameter]:
        """Each parameter may be freed once."""
        if len(set(parameters)) != len(parameters):
            raise ValueError("Free parameters must not repeat")
        return parameters


class ParameterBounds(BaseSchema):
    """
    Box bounds of the matching search

    mu_c is absolute, in eV. Geometry parameters move within a scale
    interval relative to their starting value.
    """

    mu_c: Tuple[float, float] = MU_C_SEARCH_BOUNDS_EV
    geometry_scale: Tuple[float, float] = GEOMETRY_SEARCH_SCALE

    @field_validator("mu_c", "geometry_scale")
    @classmethod
    def check_interval(cls, interval: Tuple[float, float]) -> Tuple[float, float]:
        """Positive, non-empty intervals."""
        lower, upper = interval
        if not 0 < lower < upper:
            raise ValueError(
                f"Bounds must satisfy 0 < lower < upper, got {interval}"
            )
        return interval


class DesignSolution(BaseSchema):
    """
    Solved design and its diagnostics

    residual is |S11(f_target)|; frequency_error is |f_peak - f_target| in Hz
    for the chemical-potential solver. history holds the residual after each
    accepted iteration of the matching solver.
    """

    stackup: Stackup
    achieved_f_peak: Optional[float] = None
    achieved_a_peak: Optional[float] = None
    residual: float = Field(ge=0)
    frequency_error: Optional[float] = None
    iterations: int = Field(ge=0)
    converged: bool
    history: List[float] = []
    meets_target: bool = False
    message: str = ""
