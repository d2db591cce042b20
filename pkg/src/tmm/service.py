"""
Transfer-matrix oracle

Tangential fields in each medium are written as a forward amplitude a and a
backward amplitude b, E = a + b and H = (a - b)/η. Interfaces (optionally
carrying a conductive sheet) and propagation through finite layers are 2x2
matrices cascaded from the ground plane up to the incidence side.
"""

import math
from typing import Iterable, List, Tuple

import numpy as np
from numpy.typing import ArrayLike

from src.circuit.schemas import IncidentWave, Stackup
from src.circuit.service import grid_impedance, reflection_spectrum
from src.config import VALIDATION_TOLERANCE
from src.enums import ConductivityModel, Polarization
from src.exceptions import ModelDomainError
from src.material.schemas import CONSTANTS
from src.tmm.logger import logger
from src.tmm.schemas import (
    DeviationPoint,
    DielectricLayer,
    LayerStack,
    PecTermination,
    SheetLayer,
    ValidationReport,
)

AIR_PERMITTIVITY = 1.0 + 0.0j


def medium_response(
    permittivity: complex, angle: float, polarization: Polarization
) -> Tuple[complex, complex]:
    """Wave impedance η and normalized wavenumber β_z/k0 of a medium"""
    sin2 = math.sin(angle) ** 2
    if permittivity.real - sin2 <= 0:
        raise ModelDomainError(
            "Evanescent wave in layer", permittivity=permittivity.real, angle_rad=angle
        )
    index = complex(np.sqrt(permittivity - sin2))
    z0 = CONSTANTS.free_space_impedance
    if Polarization(polarization) is Polarization.TE:
        return z0 / index, index
    return z0 * index / permittivity, index


def interface_matrix(
    eta_above: complex, eta_below: complex, admittance: complex = 0.0
) -> np.ndarray:
    """
    Maps (a, b) just below an interface to (a, b) just above it

    E is continuous, H jumps by admittance·E across a sheet.
    """
    to_fields_below = np.array([[1.0, 1.0], [1.0 / eta_below, -1.0 / eta_below]])
    sheet = np.array([[1.0, 0.0], [admittance, 1.0]], dtype=complex)
    to_amplitudes_above = 0.5 * np.array([[1.0, eta_above], [1.0, -eta_above]])
    return to_amplitudes_above @ sheet @ to_fields_below


def propagation_matrix(phase: complex) -> np.ndarray:
    """Maps (a, b) at the bottom of a layer to its top, phase = β_z·h"""
    return np.array(
        [[np.exp(1j * phase), 0.0], [0.0, np.exp(-1j * phase)]], dtype=complex
    )


def tmm_reflection(stack: LayerStack, wave: IncidentWave) -> complex:
    """Reflection coefficient of the tangential electric field"""
    k0 = 2.0 * math.pi * wave.frequency / CONSTANTS.light_speed
    eta_current, _ = medium_response(AIR_PERMITTIVITY, wave.angle, wave.polarization)
    transfer = np.eye(2, dtype=complex)
    pending_admittance = 0.0 + 0.0j

    for layer in stack.layers:
        if isinstance(layer, SheetLayer):
            pending_admittance += 1.0 / layer.impedance
        elif isinstance(layer, DielectricLayer):
            eta_layer, index = medium_response(
                layer.complex_permittivity, wave.angle, wave.polarization
            )
            transfer = (
                transfer
                @ interface_matrix(eta_current, eta_layer, pending_admittance)
                @ propagation_matrix(k0 * index * layer.thickness)
            )
            eta_current = eta_layer
            pending_admittance = 0.0 + 0.0j
        elif isinstance(layer, PecTermination):
            transfer = transfer @ interface_matrix(
                eta_current, eta_current, pending_admittance
            )

    # E = a + b = 0 on the conductor
    incident, reflected = transfer @ np.array([1.0, -1.0], dtype=complex)
    return complex(reflected / incident)


def tmm_absorption(stack: LayerStack, wave: IncidentWave) -> float:
    """Absorbed fraction, the PEC blocking all transmission"""
    return 1.0 - abs(tmm_reflection(stack, wave)) ** 2


def stack_from_stackup(
    stackup: Stackup,
    frequency: float,
    model: ConductivityModel = ConductivityModel.DRUDE,
) -> LayerStack:
    """Absorber as a layer stack sharing the homogenized grid impedance"""
    z_g = complex(grid_impedance(stackup, frequency, model))
    substrate = stackup.substrate
    return LayerStack(
        layers=[
            SheetLayer(impedance_real=z_g.real, impedance_imag=z_g.imag),
            DielectricLayer(
                relative_permittivity=substrate.relative_permittivity,
                thickness=substrate.thickness,
                loss_tangent=substrate.loss_tangent,
            ),
            PecTermination(),
        ]
    )


def salisbury_screen(frequency: float) -> LayerStack:
    """Resistive sheet R = Z0 a quarter wavelength of air above a conductor"""
    return LayerStack(
        layers=[
            SheetLayer(
                impedance_real=CONSTANTS.free_space_impedance, impedance_imag=0.0
            ),
            DielectricLayer(
                relative_permittivity=1.0,
                thickness=CONSTANTS.light_speed / (4.0 * frequency),
            ),
            PecTermination(),
        ]
    )


def tmm_reflection_spectrum(
    stackup: Stackup,
    frequency: ArrayLike,
    angle: float = 0.0,
    polarization: Polarization = Polarization.TE,
    model: ConductivityModel = ConductivityModel.DRUDE,
) -> np.ndarray:
    """Oracle S11 of the absorber at every frequency"""
    values: List[complex] = []
    for f in np.atleast_1d(np.asarray(frequency, dtype=float)):
        wave = IncidentWave(frequency=float(f), angle=angle, polarization=polarization)
        stack = stack_from_stackup(stackup, float(f), model)
        values.append(tmm_reflection(stack, wave))
    return np.array(values, dtype=complex)


def compare_with_circuit(
    stackup: Stackup,
    frequency: ArrayLike,
    angles: Iterable[float],
    polarizations: Iterable[Polarization] = (Polarization.TE, Polarization.TM),
    model: ConductivityModel = ConductivityModel.DRUDE,
    tolerance: float = VALIDATION_TOLERANCE,
) -> ValidationReport:
    """Largest |S11_circuit - S11_tmm| over frequencies, angles and polarizations"""
    f = np.atleast_1d(np.asarray(frequency, dtype=float))
    worst = None
    n_points = 0
    for angle in angles:
        for polarization in polarizations:
            circuit = np.atleast_1d(
                reflection_spectrum(stackup, f, angle, polarization, model)
            )
            oracle = tmm_reflection_spectrum(stackup, f, angle, polarization, model)
            deviation = np.abs(circuit - oracle)
            index = int(np.argmax(deviation))
            n_points += deviation.size
            if worst is None or deviation[index] > worst.deviation:
                worst = DeviationPoint(
                    frequency=float(f[index]),
                    angle=float(angle),
                    polarization=polarization,
                    deviation=float(deviation[index]),
                )
    if worst is None:
        raise ModelDomainError("Validation needs at least one angle and polarization")
    passed = worst.deviation < tolerance
    logger.info(
        "Circuit vs TMM: max |dS11| = %.3e over %d points (%s)",
        worst.deviation,
        n_points,
        "pass" if passed else "fail",
    )
    return ValidationReport(
        max_deviation=worst.deviation,
        tolerance=tolerance,
        passed=passed,
        n_points=n_points,
        worst=worst,
    )
