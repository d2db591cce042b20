"""Schemas for the cli module."""

import math
from typing import List, Literal, Optional, Tuple

from pydantic import Field, ValidationError, field_validator, model_validator
from typing_extensions import Self

from src.circuit.schemas import PatchArrayGeometry, Stackup, Substrate
from src.config import (
    DEFAULT_ANGLES_DEG,
    DEFAULT_BANDWIDTH_THRESHOLD,
    DEFAULT_CHEMICAL_POTENTIAL_EV,
    DEFAULT_DESIGN_FREQUENCY,
    DEFAULT_F_START,
    DEFAULT_F_STOP,
    DEFAULT_LOSS_TANGENT,
    DEFAULT_MIN_ABSORPTION,
    DEFAULT_MU_C_BOUNDS_EV,
    DEFAULT_N_POINTS,
    DEFAULT_RECONFIG_MU_C_EV,
    DEFAULT_RELAXATION_TIME,
    DEFAULT_TEMPERATURE,
    MATCH_TOLERANCE,
    SILICON_PERMITTIVITY,
    VALIDATION_TOLERANCE,
)
from src.design.schemas import DesignSolution, DesignTarget
from src.design.service import synthesize_geometry
from src.enums import (
    ConductivityModel,
    FreeParameter,
    OutputFormat,
    PeakStatus,
    Polarization,
    SolveMode,
)
from src.exceptions import ModelDomainError
from src.material.schemas import GrapheneSheet
from src.schemas import BaseSchema
from src.spectrum.schemas import (
    BandwidthResult,
    FrequencyGrid,
    PeakResult,
    ReconfigurationEntry,
    WaveTemplate,
)
from src.tmm.schemas import ValidationReport
from src.utils import UNITS

DEGREE = UNITS["angle"]["deg"]


class RunConfig(BaseSchema):
    """
    Effective run configuration

    Values are SI except chemical potentials (eV) and angles (radians).
    Geometry left unset is synthesized from the design frequency.
    """

    mu_c: float = Field(default=DEFAULT_CHEMICAL_POTENTIAL_EV, gt=0)
    tau: float = Field(default=DEFAULT_RELAXATION_TIME, gt=0)
    temperature: float = Field(default=DEFAULT_TEMPERATURE, gt=0)
    mobility: Optional[float] = Field(default=None, gt=0)
    frequency: float = Field(default=DEFAULT_DESIGN_FREQUENCY, gt=0)
    period: Optional[float] = Field(default=None, gt=0)
    patch_width: Optional[float] = Field(default=None, gt=0)
    thickness: Optional[float] = Field(default=None, gt=0)
    eps_r: float = Field(default=SILICON_PERMITTIVITY, ge=1)
    loss_tangent: float = Field(default=DEFAULT_LOSS_TANGENT, ge=0)
    model: ConductivityModel = ConductivityModel.DRUDE
    f_start: float = Field(default=DEFAULT_F_START, gt=0)
    f_stop: float = Field(default=DEFAULT_F_STOP, gt=0)
    n_points: int = Field(default=DEFAULT_N_POINTS, ge=2)
    angle: float = Field(default=0.0, ge=0, lt=math.pi / 2)
    polarization: Polarization = Polarization.TE
    angles: List[float] = Field(
        default=[value * DEGREE for value in DEFAULT_ANGLES_DEG], min_length=1
    )
    polarizations: List[Polarization] = Field(
        default=[Polarization.TE, Polarization.TM], min_length=1
    )
    mu_c_list: List[float] = Field(default=DEFAULT_RECONFIG_MU_C_EV, min_length=1)
    f_target: Optional[float] = Field(default=None, gt=0)
    mu_c_bounds: Tuple[float, float] = DEFAULT_MU_C_BOUNDS_EV
    solve_mode: SolveMode = SolveMode.PEAK
    free_parameters: List[FreeParameter] = Field(
        default=[FreeParameter.MU_C], min_length=1, max_length=3
    )
    match_tolerance: float = Field(default=MATCH_TOLERANCE, gt=0)
    min_absorption: float = Field(default=DEFAULT_MIN_ABSORPTION, gt=0, le=1)
    bandwidth_threshold: float = Field(
        default=DEFAULT_BANDWIDTH_THRESHOLD, gt=0, lt=1
    )
    validation_tolerance: float = Field(default=VALIDATION_TOLERANCE, gt=0)
    output_format: OutputFormat = OutputFormat.CSV
    output: Optional[str] = None

    @field_validator("angles")
    @classmethod
    def check_angles(cls, angles: List[float]) -> List[float]:
        """Every angle in [0, π/2)."""
        for angle in angles:
            if not 0 <= angle < math.pi / 2:
                raise ValueError(f"Angle {angle} rad outside [0, pi/2)")
        return angles

    @field_validator("mu_c_list")
    @classmethod
    def check_mu_c_list(cls, values: List[float]) -> List[float]:
        """Positive and strictly increasing."""
        if any(value <= 0 for value in values):
            raise ValueError("Chemical potentials must be positive")
        for previous, current in zip(values, values[1:]):
            if not current > previous:
                raise ValueError("Chemical potentials must increase strictly")
        return values

    @field_validator("mu_c_bounds")
    @classmethod
    def check_mu_c_bounds(cls, bounds: Tuple[float, float]) -> Tuple[float, float]:
        """0 < lower < upper."""
        if not 0 < bounds[0] < bounds[1]:
            raise ValueError("mu_c_bounds must satisfy 0 < lower < upper")
        return bounds

    @model_validator(mode="after")
    def check_engine_inputs(self) -> Self:
        """Grid, stackup and target must all be constructible."""
        if not self.f_start < self.f_stop:
            raise ValueError("f_start must be smaller than f_stop")
        try:
            self.stackup()
        except (ValidationError, ModelDomainError) as exc:
            raise ValueError(f"Invalid stackup: {exc}") from exc
        return self

    def sheet(self) -> GrapheneSheet:
        """Graphene layer"""
        return GrapheneSheet(
            chemical_potential=self.mu_c,
            relaxation_time=self.tau,
            temperature=self.temperature,
            mobility=self.mobility,
        )

    def stackup(self) -> Stackup:
        """Absorber, synthesized at the design frequency then overridden"""
        synthesized = synthesize_geometry(
            self.frequency, self.sheet(), self.eps_r, self.loss_tangent
        )
        geometry = synthesized.geometry
        substrate = synthesized.substrate
        return Stackup(
            sheet=synthesized.sheet,
            geometry=PatchArrayGeometry(
                period=self.period or geometry.period,
                patch_width=self.patch_width or geometry.patch_width,
            ),
            substrate=Substrate(
                relative_permittivity=self.eps_r,
                thickness=self.thickness or substrate.thickness,
                loss_tangent=self.loss_tangent,
            ),
        )

    def grid(self) -> FrequencyGrid:
        """Sweep grid"""
        return FrequencyGrid(
            f_start=self.f_start, f_stop=self.f_stop, n_points=self.n_points
        )

    def wave(self) -> WaveTemplate:
        """Incidence for spectrum and solve"""
        return WaveTemplate(angle=self.angle, polarization=self.polarization)

    def target(self) -> DesignTarget:
        """Inverse-design target, the design frequency unless f_target is set"""
        return DesignTarget(
            f_target=self.f_target or self.frequency,
            min_absorption=self.min_absorption,
            free_parameters=self.free_parameters,
        )


class SpectrumRow(BaseSchema):
    """One grid point as written out"""

    frequency_hz: float
    s11_real: float
    s11_imag: float
    s11_mag_db: float
    absorption: float
    transmission: float = 0.0


class SpectrumDocument(BaseSchema):
    """JSON artifact of the spectrum subcommand"""

    kind: Literal["spectrum"] = "spectrum"
    model: ConductivityModel
    angle_rad: float
    polarization: Polarization
    points: List[SpectrumRow]
    peak: PeakResult
    bandwidth: BandwidthResult


class AngleRow(BaseSchema):
    """Peak of one (polarization, angle) spectrum"""

    angle_rad: float
    angle_deg: float
    polarization: Polarization
    peak_status: PeakStatus
    f_peak_hz: Optional[float]
    a_peak: Optional[float]


class AnglesDocument(BaseSchema):
    """JSON artifact of the angles subcommand"""

    kind: Literal["angles"] = "angles"
    model: ConductivityModel
    peaks: List[AngleRow]
    spectra: List[SpectrumDocument]


class ReconfigDocument(BaseSchema):
    """JSON artifact of the reconfig subcommand"""

    kind: Literal["reconfig"] = "reconfig"
    model: ConductivityModel
    entries: List[ReconfigurationEntry]
    monotone: bool
    anomalies: List[str]
    spectra: List[SpectrumDocument]


class SolutionDocument(BaseSchema):
    """JSON artifact of the solve subcommand"""

    kind: Literal["solution"] = "solution"
    mode: SolveMode
    f_target_hz: float
    chemical_potential_ev: float
    period_m: float
    patch_width_m: float
    thickness_m: float
    solution: DesignSolution


class ValidationDocument(BaseSchema):
    """JSON artifact of the validate subcommand"""

    kind: Literal["validation"] = "validation"
    model: ConductivityModel
    report: ValidationReport
