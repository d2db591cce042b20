"""Schemas for the spectrum module."""

import math
from typing import List, Literal, Optional

import numpy as np
from pydantic import Field, field_validator, model_validator
from typing_extensions import Self

from src.circuit.schemas import IncidentWave, Stackup
from src.enums import BandwidthStatus, ConductivityModel, PeakStatus, Polarization
from src.schemas import BaseSchema

ENERGY_BALANCE_TOL = 1e-12


class FrequencyGrid(BaseSchema):
    """Linearly spaced sweep frequencies in hertz"""

    f_start: float = Field(gt=0)
    f_stop: float = Field(gt=0)
    n_points: int = Field(ge=2)
    spacing: Literal["linear"] = "linear"

    @model_validator(mode="after")
    def check_order(self) -> Self:
        """f_start must be below f_stop."""
        if not self.f_start < self.f_stop:
            raise ValueError("f_start must be smaller than f_stop")
        return self

    def frequencies(self) -> np.ndarray:
        """Grid points, endpoints included"""
        return np.linspace(self.f_start, self.f_stop, self.n_points)


class WaveTemplate(BaseSchema):
    """Incidence conditions shared by every point of a sweep"""

    angle: float = Field(default=0.0, ge=0, lt=math.pi / 2)
    polarization: Polarization = Polarization.TE

    def at(self, frequency: float) -> IncidentWave:
        """Incident wave at one frequency"""
        return IncidentWave(
            frequency=frequency, angle=self.angle, polarization=self.polarization
        )


class SpectrumPoint(BaseSchema):
    """Reflection and absorption at one frequency"""

    frequency: float
    s11_real: float
    s11_imag: float
    absorption: float

    @property
    def s11(self) -> complex:
        """Complex reflection coefficient"""
        return complex(self.s11_real, self.s11_imag)


class Spectrum(BaseSchema):
    """
    Sampled absorber response

    Carries the stackup, incidence and conductivity model it was computed
    with so peaks can be refined on the continuous model.
    """

    points: List[SpectrumPoint] = Field(min_length=1)
    stackup: Stackup
    wave: WaveTemplate
    model: ConductivityModel = ConductivityModel.DRUDE

    @field_validator("points")
    @classmethod
    def check_points(cls, points: List[SpectrumPoint]) -> List[SpectrumPoint]:
        """Frequencies strictly increasing, A = 1 - |S11|² at every point."""
        for previous, current in zip(points, points[1:]):
            if not current.frequency > previous.frequency:
                raise ValueError(
                    f"Frequencies must increase strictly ({current.frequency} Hz)"
                )
        for point in points:
            balance = point.absorption + abs(point.s11) ** 2 - 1.0
            if abs(balance) > ENERGY_BALANCE_TOL:
                raise ValueError(
                    f"Absorption inconsistent with S11 at {point.frequency} Hz"
                )
        return points

    def frequencies(self) -> np.ndarray:
        """Frequencies as an array"""
        return np.array([point.frequency for point in self.points])

    def reflection(self) -> np.ndarray:
        """S11 as a complex array"""
        return np.array([point.s11 for point in self.points], dtype=complex)

    def absorption(self) -> np.ndarray:
        """Absorption as an array"""
        return np.array([point.absorption for point in self.points])


class PeakResult(BaseSchema):
    """Absorption maximum of a spectrum"""

    status: PeakStatus
    frequency: Optional[float] = None
    absorption: Optional[float] = None
    grid_index: Optional[int] = None

    @property
    def found(self) -> bool:
        """Whether the spectrum has a maximum at all"""
        return self.status is not PeakStatus.NONE


class BandwidthResult(BaseSchema):
    """Contiguous band around the peak where absorption stays above a threshold"""

    status: BandwidthStatus
    threshold: float
    f_lo: Optional[float] = None
    f_hi: Optional[float] = None
    fractional_bandwidth: Optional[float] = None

    @property
    def f_center(self) -> Optional[float]:
        """Band centre"""
        if self.f_lo is None or self.f_hi is None:
            return None
        return 0.5 * (self.f_lo + self.f_hi)


class AngleSpectrum(BaseSchema):
    """Spectrum and its peak at one incidence angle"""

    angle: float
    polarization: Polarization
    spectrum: Spectrum
    peak: PeakResult


class ReconfigurationEntry(BaseSchema):
    """Peak position at one chemical potential"""

    chemical_potential: float
    f_peak: Optional[float]
    a_peak: Optional[float]


class ReconfigurationMap(BaseSchema):
    """Peak frequency and height as the chemical potential is gated"""

    entries: List[ReconfigurationEntry]
    spectra: List[Spectrum] = []
    monotone: bool = True
    anomalies: List[str] = []

    @field_validator("entries")
    @classmethod
    def check_chemical_potentials(
        cls, entries: List[ReconfigurationEntry]
    ) -> List[ReconfigurationEntry]:
        """Chemical potentials strictly increasing."""
        for previous, current in zip(entries, entries[1:]):
            if not current.chemical_potential > previous.chemical_potential:
                raise ValueError("Chemical potentials must increase strictly")
        return entries
