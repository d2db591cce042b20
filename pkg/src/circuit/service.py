"""Equivalent-circuit model of the grounded graphene patch array"""

import math
from typing import Optional, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike

from src.circuit.logger import logger
from src.circuit.schemas import (
    IncidentWave,
    PatchArrayGeometry,
    RlcTriple,
    Stackup,
    Substrate,
)
from src.config import INVALID_GEOMETRY, TAN_SINGULARITY_RTOL
from src.enums import ConductivityModel, Polarization
from src.exceptions import ModelDomainError
from src.material.schemas import CONSTANTS
from src.material.service import conductivity as sheet_conductivity
from src.material.service import drude_sigma0
from src.utils import unwrap

ComplexLike = Union[complex, np.ndarray]

OPEN_CIRCUIT = complex(0.0, math.inf)


def _check_frequency(frequency: np.ndarray) -> None:
    if np.any(frequency <= 0):
        bad = float(np.atleast_1d(frequency)[np.atleast_1d(frequency) <= 0][0])
        raise ModelDomainError("Frequency must be positive", frequency=bad)


def _check_angle(angle: float) -> None:
    if not 0.0 <= angle < math.pi / 2:
        raise ModelDomainError(
            "Incidence angle must lie in [0, pi/2)", angle_rad=angle
        )


def effective_capacitance(
    geometry: PatchArrayGeometry, relative_permittivity: float
) -> float:
    """C_ef = (1/π)·ε0·(ε_r + 1)·P·ln csc(πs/2P), in farads"""
    period = geometry.period
    gap = geometry.gap
    if gap <= 0:
        raise ModelDomainError(
            f"{INVALID_GEOMETRY}: zero gap gives infinite capacitance", gap_m=gap
        )
    if gap >= period:
        raise ModelDomainError(
            f"{INVALID_GEOMETRY}: vanishing patch gives zero capacitance", gap_m=gap
        )
    if relative_permittivity < 1:
        raise ModelDomainError(
            "Relative permittivity must be at least 1",
            relative_permittivity=relative_permittivity,
        )
    log_csc = -math.log(math.sin(math.pi * gap / (2.0 * period)))
    return (
        CONSTANTS.vacuum_permittivity
        * (relative_permittivity + 1.0)
        * period
        * log_csc
        / math.pi
    )


def grid_impedance_for_conductivity(
    geometry: PatchArrayGeometry,
    relative_permittivity: float,
    conductivity: ArrayLike,
    frequency: ArrayLike,
) -> ComplexLike:
    """Z_g = P/(d·σ_g) - j/(ω·C_ef) for a given sheet conductivity"""
    f = np.asarray(frequency, dtype=float)
    _check_frequency(f)
    omega = 2.0 * np.pi * f
    capacitance = effective_capacitance(geometry, relative_permittivity)
    sigma = np.asarray(conductivity, dtype=complex)
    resistive = geometry.period / (geometry.patch_width * sigma)
    return unwrap(resistive - 1j / (omega * capacitance))


def grid_impedance(
    stackup: Stackup,
    frequency: ArrayLike,
    model: ConductivityModel = ConductivityModel.DRUDE,
) -> ComplexLike:
    """Homogenized surface impedance of the patch array"""
    f = np.asarray(frequency, dtype=float)
    _check_frequency(f)
    sigma = sheet_conductivity(stackup.sheet, f, model)
    return grid_impedance_for_conductivity(
        stackup.geometry, stackup.substrate.relative_permittivity, sigma, f
    )


def rlc_extract(stackup: Stackup) -> RlcTriple:
    """R = P/(dσ0), L = τP/(dσ0), C = C_ef"""
    geometry = stackup.geometry
    resistance = geometry.period / (geometry.patch_width * drude_sigma0(stackup.sheet))
    return RlcTriple(
        resistance=resistance,
        inductance=stackup.sheet.relaxation_time * resistance,
        capacitance=effective_capacitance(
            geometry, stackup.substrate.relative_permittivity
        ),
    )


def rlc_impedance(rlc: RlcTriple, frequency: ArrayLike) -> ComplexLike:
    """Series R + j(ωL - 1/ωC)"""
    omega = 2.0 * np.pi * np.asarray(frequency, dtype=float)
    return unwrap(
        rlc.resistance
        + 1j * (omega * rlc.inductance - 1.0 / (omega * rlc.capacitance))
    )


def _normal_index(substrate: Substrate, angle: float) -> complex:
    """Normalized longitudinal wavenumber β_z/k0 = sqrt(ε - sin²θ)"""
    return complex(np.sqrt(substrate.complex_permittivity - math.sin(angle) ** 2))


def slab_line(
    substrate: Substrate, angle: float, polarization: Polarization
) -> Tuple[complex, complex]:
    """Characteristic impedance and β_z/k0 of the substrate line"""
    _check_angle(angle)
    eps = substrate.complex_permittivity
    z0 = CONSTANTS.free_space_impedance
    if angle == 0.0:
        index = complex(np.sqrt(eps))
        return z0 / index, index
    index = _normal_index(substrate, angle)
    if Polarization(polarization) is Polarization.TE:
        return z0 / index, index
    return z0 * index / eps, index


def slab_impedance_array(
    substrate: Substrate,
    frequency: ArrayLike,
    angle: float = 0.0,
    polarization: Polarization = Polarization.TE,
) -> np.ndarray:
    """
    Z_s = j·Z_c·tan(β_z·h) over a frequency array

    Points within the tan-singularity window come back as an open circuit.
    """
    f = np.atleast_1d(np.asarray(frequency, dtype=float))
    _check_frequency(f)
    z_c, index = slab_line(substrate, angle, polarization)
    phase = 2.0 * np.pi * f / CONSTANTS.light_speed * index * substrate.thickness
    resonant = np.abs(np.cos(phase)) <= TAN_SINGULARITY_RTOL
    if np.any(resonant):
        logger.warning(
            "Slab at quarter-wave resonance for %d frequency point(s), first at "
            "%.6e Hz; treating the slab branch as open",
            int(np.count_nonzero(resonant)),
            float(f[resonant][0]),
        )
    with np.errstate(divide="ignore", invalid="ignore"):
        z_s = 1j * z_c * np.tan(phase)
    return np.where(resonant, OPEN_CIRCUIT, z_s)


def slab_input_impedance(substrate: Substrate, wave: IncidentWave) -> complex:
    """Input impedance of the metal-backed substrate"""
    z_s = slab_impedance_array(
        substrate, wave.frequency, wave.angle, wave.polarization
    )
    return complex(z_s[0])


def parallel_impedance(z_a: ArrayLike, z_b: ArrayLike) -> ComplexLike:
    """
    1/Z = 1/Z_a + 1/Z_b

    An infinite branch is open (the other one remains), a zero branch shorts.
    """
    a = np.asarray(z_a, dtype=complex)
    b = np.asarray(z_b, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        combined = a * b / (a + b)
    combined = np.where(np.isinf(b), a, combined)
    combined = np.where(np.isinf(a), b, combined)
    combined = np.where((a == 0) | (b == 0), 0.0 + 0.0j, combined)
    return unwrap(combined)


def free_space_wave_impedance(
    angle: float = 0.0, polarization: Polarization = Polarization.TE
) -> float:
    """Z0/cosθ for TE, Z0·cosθ for TM"""
    _check_angle(angle)
    z0 = CONSTANTS.free_space_impedance
    if Polarization(polarization) is Polarization.TE:
        return z0 / math.cos(angle)
    return z0 * math.cos(angle)


def input_impedance_array(
    stackup: Stackup,
    frequency: ArrayLike,
    angle: float = 0.0,
    polarization: Polarization = Polarization.TE,
    model: ConductivityModel = ConductivityModel.DRUDE,
    conductivity: Optional[ArrayLike] = None,
) -> np.ndarray:
    """Grid impedance in parallel with the slab over a frequency array"""
    f = np.atleast_1d(np.asarray(frequency, dtype=float))
    if conductivity is None:
        z_g = grid_impedance(stackup, f, model)
    else:
        z_g = grid_impedance_for_conductivity(
            stackup.geometry,
            stackup.substrate.relative_permittivity,
            conductivity,
            f,
        )
    z_s = slab_impedance_array(stackup.substrate, f, angle, polarization)
    return np.atleast_1d(parallel_impedance(z_g, z_s))


def input_impedance(
    stackup: Stackup,
    wave: IncidentWave,
    model: ConductivityModel = ConductivityModel.DRUDE,
) -> complex:
    """Total input impedance Z_in of the absorber"""
    z_in = input_impedance_array(
        stackup, wave.frequency, wave.angle, wave.polarization, model
    )
    return complex(z_in[0])


def reflection_spectrum(
    stackup: Stackup,
    frequency: ArrayLike,
    angle: float = 0.0,
    polarization: Polarization = Polarization.TE,
    model: ConductivityModel = ConductivityModel.DRUDE,
    conductivity: Optional[ArrayLike] = None,
) -> ComplexLike:
    """
    S11 = (Z_in - Z_w)/(Z_in + Z_w) over a frequency array

    Z_w is the polarization-dependent free-space wave impedance. A fixed
    conductivity overrides the sheet model when given.
    """
    z_in = input_impedance_array(
        stackup, frequency, angle, polarization, model, conductivity
    )
    z_w = free_space_wave_impedance(angle, polarization)
    s11 = (z_in - z_w) / (z_in + z_w)
    if np.ndim(frequency) == 0:
        return complex(s11[0])
    return s11


def absorption_from_reflection(s11: ArrayLike) -> ComplexLike:
    """A = 1 - |S11|², transmission being zero behind the ground plane"""
    return unwrap(1.0 - np.abs(np.asarray(s11)) ** 2)


def reflection_coefficient(
    stackup: Stackup,
    wave: IncidentWave,
    model: ConductivityModel = ConductivityModel.DRUDE,
) -> complex:
    """Reflection coefficient S11 for a single incident wave"""
    return reflection_spectrum(
        stackup, wave.frequency, wave.angle, wave.polarization, model
    )


def absorption(
    stackup: Stackup,
    wave: IncidentWave,
    model: ConductivityModel = ConductivityModel.DRUDE,
) -> float:
    """Absorbed fraction of the incident power"""
    s11 = reflection_coefficient(stackup, wave, model)
    return float(absorption_from_reflection(s11))
