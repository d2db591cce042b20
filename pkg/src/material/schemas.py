"""Schemas for the material module."""

from typing import NamedTuple, Optional

import numpy as np
from pydantic import Field, model_validator
from scipy import constants
from typing_extensions import Self

from src.config import (
    DEFAULT_CHEMICAL_POTENTIAL_EV,
    DEFAULT_RELAXATION_TIME,
    DEFAULT_TEMPERATURE,
    FERMI_VELOCITY,
    MOBILITY_CONSISTENCY_RTOL,
)
from src.material.logger import logger
from src.schemas import BaseSchema


class PhysicalConstants(BaseSchema):
    """
    Physical constants in SI units

    Values come from scipy.constants (CODATA); v_F is the graphene Fermi velocity.
    """

    electron_charge: float = Field(default=constants.e, gt=0)
    boltzmann: float = Field(default=constants.k, gt=0)
    reduced_planck: float = Field(default=constants.hbar, gt=0)
    vacuum_permittivity: float = Field(default=constants.epsilon_0, gt=0)
    vacuum_permeability: float = Field(default=constants.mu_0, gt=0)
    free_space_impedance: float = Field(
        default=float(np.sqrt(constants.mu_0 / constants.epsilon_0)), gt=0
    )
    light_speed: float = Field(default=constants.c, gt=0)
    fermi_velocity: float = Field(default=FERMI_VELOCITY, gt=0)


CONSTANTS = PhysicalConstants()


class GrapheneSheet(BaseSchema):
    """
    Electronic state of the graphene layer

    chemical_potential in eV, relaxation_time in s, temperature in K,
    mobility in m^2/(V·s) (informational).
    """

    chemical_potential: float = Field(default=DEFAULT_CHEMICAL_POTENTIAL_EV, gt=0)
    relaxation_time: float = Field(default=DEFAULT_RELAXATION_TIME, gt=0)
    temperature: float = Field(default=DEFAULT_TEMPERATURE, gt=0)
    mobility: Optional[float] = Field(default=None, gt=0)

    @property
    def chemical_potential_joule(self) -> float:
        """Chemical potential converted to joules"""
        return self.chemical_potential * CONSTANTS.electron_charge

    @model_validator(mode="after")
    def check_mobility_consistency(self) -> Self:
        """Warn when τ and µ_g disagree through τ = µ_c·µ_g/(e·v_F²)."""
        if self.mobility is None:
            return self
        expected = (
            self.chemical_potential * self.mobility / CONSTANTS.fermi_velocity**2
        )
        deviation = abs(self.relaxation_time - expected) / expected
        if deviation > MOBILITY_CONSISTENCY_RTOL:
            logger.warning(
                "Relaxation time %.4e s inconsistent with mobility %.4e m2/Vs "
                "(expected %.4e s, deviation %.1f%%); using the relaxation time",
                self.relaxation_time,
                self.mobility,
                expected,
                100.0 * deviation,
            )
        return self


class ConductivityTerms(NamedTuple):
    """Intraband and interband parts of the Kubo conductivity"""

    intraband: complex
    interband: complex

    @property
    def total(self) -> complex:
        """Sum of both contributions"""
        return self.intraband + self.interband
