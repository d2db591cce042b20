"""Schemas for the circuit module."""

import math

from pydantic import Field, model_validator
from typing_extensions import Self

from src.config import (
    DEFAULT_LOSS_TANGENT,
    GROUND_THICKNESS,
    INVALID_GEOMETRY,
    SILICON_PERMITTIVITY,
)
from src.enums import Polarization
from src.material.schemas import GrapheneSheet
from src.schemas import BaseSchema


class PatchArrayGeometry(BaseSchema):
    """
    Square lattice of square graphene patches

    period P and patch_width d in meters; the gap s = P - d is derived.
    """

    period: float = Field(gt=0)
    patch_width: float = Field(gt=0)

    @property
    def gap(self) -> float:
        """Spacing between neighbouring patches"""
        return self.period - self.patch_width

    @model_validator(mode="after")
    def check_patch_fits(self) -> Self:
        """The patch must be strictly smaller than the period."""
        if not self.patch_width < self.period:
            raise ValueError(
                f"{INVALID_GEOMETRY}: patch width {self.patch_width} m must be "
                f"smaller than period {self.period} m"
            )
        return self


class Substrate(BaseSchema):
    """Dielectric spacer between the patch array and the ground plane"""

    relative_permittivity: float = Field(default=SILICON_PERMITTIVITY, ge=1)
    thickness: float = Field(gt=0)
    loss_tangent: float = Field(default=DEFAULT_LOSS_TANGENT, ge=0)

    @property
    def complex_permittivity(self) -> complex:
        """ε_r(1 - j·tanδ) under the e^{+jωt} convention"""
        return complex(
            self.relative_permittivity,
            -self.relative_permittivity * self.loss_tangent,
        )


class GroundPlane(BaseSchema):
    """Metal backing; electrically a short circuit"""

    perfect_conductor: bool = True
    thickness: float = Field(default=GROUND_THICKNESS, gt=0)


class Stackup(BaseSchema):
    """Full absorber: graphene patches on a grounded dielectric slab"""

    sheet: GrapheneSheet
    geometry: PatchArrayGeometry
    substrate: Substrate
    ground: GroundPlane = GroundPlane()


class IncidentWave(BaseSchema):
    """Plane wave hitting the absorber; angle in radians from the normal"""

    frequency: float = Field(gt=0)
    angle: float = Field(default=0.0, ge=0, lt=math.pi / 2)
    polarization: Polarization = Polarization.TE


class RlcTriple(BaseSchema):
    """Series R-L-C equivalent of the patch array"""

    resistance: float = Field(gt=0)
    inductance: float = Field(gt=0)
    capacitance: float = Field(gt=0)
