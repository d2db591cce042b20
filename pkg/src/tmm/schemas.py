"""Schemas for the transfer-matrix oracle."""

from typing import List, Literal, Union

from pydantic import Field, model_validator
from typing_extensions import Annotated, Self

from src.enums import LayerKind, Polarization
from src.schemas import BaseSchema


class SheetLayer(BaseSchema):
    """Zero-thickness conductive sheet, a shunt admittance 1/Z_sheet"""

    kind: Literal[LayerKind.SHEET] = LayerKind.SHEET
    impedance_real: float
    impedance_imag: float

    @property
    def impedance(self) -> complex:
        """Sheet impedance in ohms"""
        return complex(self.impedance_real, self.impedance_imag)

    @model_validator(mode="after")
    def check_nonzero(self) -> Self:
        """A zero sheet impedance is a short, use a PEC termination instead."""
        if self.impedance_real == 0 and self.impedance_imag == 0:
            raise ValueError("Sheet impedance must be non-zero")
        return self


class DielectricLayer(BaseSchema):
    """Homogeneous dielectric of finite thickness"""

    kind: Literal[LayerKind.DIELECTRIC] = LayerKind.DIELECTRIC
    relative_permittivity: float = Field(ge=1)
    thickness: float = Field(gt=0)
    loss_tangent: float = Field(default=0.0, ge=0)

    @property
    def complex_permittivity(self) -> complex:
        """ε_r(1 - j·tanδ)"""
        return complex(
            self.relative_permittivity,
            -self.relative_permittivity * self.loss_tangent,
        )


class PecTermination(BaseSchema):
    """Perfect electric conductor closing the stack"""

    kind: Literal[LayerKind.PEC] = LayerKind.PEC


Layer = Annotated[
    Union[SheetLayer, DielectricLayer, PecTermination], Field(discriminator="kind")
]


class LayerStack(BaseSchema):
    """Layers ordered from the incidence side (air above) to the ground"""

    layers: List[Layer]

    @model_validator(mode="after")
    def check_termination(self) -> Self:
        """Exactly one PEC termination, placed last."""
        terminations = [
            index
            for index, layer in enumerate(self.layers)
            if isinstance(layer, PecTermination)
        ]
        if len(terminations) != 1 or terminations[0] != len(self.layers) - 1:
            raise ValueError("Stack needs exactly one PEC termination as last layer")
        return self


class DeviationPoint(BaseSchema):
    """Worst circuit-vs-oracle disagreement of a sweep"""

    frequency: float
    angle: float
    polarization: Polarization
    deviation: float


class ValidationReport(BaseSchema):
    """Circuit model checked against the transfer-matrix oracle"""

    max_deviation: float
    tolerance: float
    passed: bool
    n_points: int
    worst: DeviationPoint
