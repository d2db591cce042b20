"""Graphene sheet conductivity"""

from typing import Union

import numpy as np
from numpy.typing import ArrayLike

from src.config import BRANCH_CUT_RTOL
from src.enums import ConductivityModel
from src.exceptions import ModelDomainError
from src.material.logger import logger
from src.material.schemas import CONSTANTS, ConductivityTerms, GrapheneSheet
from src.utils import unwrap

ComplexLike = Union[complex, np.ndarray]


def _check_sheet(sheet: GrapheneSheet) -> None:
    if sheet.chemical_potential <= 0:
        raise ModelDomainError(
            "Chemical potential must be positive",
            chemical_potential_ev=sheet.chemical_potential,
        )
    if sheet.relaxation_time <= 0:
        raise ModelDomainError(
            "Relaxation time must be positive",
            relaxation_time_s=sheet.relaxation_time,
        )
    if sheet.temperature <= 0:
        raise ModelDomainError(
            "Temperature must be positive", temperature_k=sheet.temperature
        )


def drude_sigma0(sheet: GrapheneSheet) -> float:
    """DC sheet conductance σ0 = e²·µ_c·τ/(π·ħ²) in siemens"""
    _check_sheet(sheet)
    e = CONSTANTS.electron_charge
    hbar = CONSTANTS.reduced_planck
    return e**2 * sheet.chemical_potential_joule * sheet.relaxation_time / (
        np.pi * hbar**2
    )


def drude_conductivity(sheet: GrapheneSheet, frequency: ArrayLike) -> ComplexLike:
    """Drude sheet conductivity σ0/(1 + jωτ) under the e^{+jωt} convention"""
    omega = 2.0 * np.pi * np.asarray(frequency, dtype=float)
    sigma0 = drude_sigma0(sheet)
    return unwrap(sigma0 / (1.0 + 1j * omega * sheet.relaxation_time))


def kubo_terms(sheet: GrapheneSheet, frequency: ArrayLike) -> ConductivityTerms:
    """
    Intraband and interband Kubo conductivity

    Both logarithms use the complex principal branch. Raises ModelDomainError
    when the interband argument sits on the negative real axis.
    """
    _check_sheet(sheet)
    f = np.asarray(frequency, dtype=float)
    if np.any(f <= 0):
        bad = float(np.atleast_1d(f)[np.atleast_1d(f) <= 0][0])
        raise ModelDomainError(
            "Kubo conductivity requires a positive frequency", frequency=bad
        )
    e = CONSTANTS.electron_charge
    hbar = CONSTANTS.reduced_planck
    kt = CONSTANTS.boltzmann * sheet.temperature
    mu = sheet.chemical_potential_joule
    omega_c = 2.0 * np.pi * f - 1j / sheet.relaxation_time

    # ln(e^{-µ/kT} + 1) without overflow at low temperature
    thermal = mu / kt + 2.0 * np.logaddexp(0.0, -mu / kt)
    intraband = -1j * e**2 * kt / (np.pi * hbar**2 * omega_c) * thermal

    ratio = (2.0 * abs(mu) - hbar * omega_c) / (2.0 * abs(mu) + hbar * omega_c)
    on_cut = (ratio.real < 0) & (np.abs(ratio.imag) <= BRANCH_CUT_RTOL * np.abs(ratio))
    if np.any(on_cut):
        bad = float(np.atleast_1d(f)[np.atleast_1d(on_cut)][0])
        raise ModelDomainError(
            "Interband logarithm argument crosses the branch cut", frequency=bad
        )
    interband = -1j * e**2 / (4.0 * np.pi * hbar) * np.log(ratio)
    return ConductivityTerms(unwrap(intraband), unwrap(interband))


def kubo_conductivity(sheet: GrapheneSheet, frequency: ArrayLike) -> ComplexLike:
    """Full Kubo sheet conductivity, intraband + interband"""
    return kubo_terms(sheet, frequency).total


def conductivity(
    sheet: GrapheneSheet,
    frequency: ArrayLike,
    model: ConductivityModel = ConductivityModel.DRUDE,
) -> ComplexLike:
    """Sheet conductivity under the selected model"""
    if ConductivityModel(model) is ConductivityModel.KUBO:
        return kubo_conductivity(sheet, frequency)
    return drude_conductivity(sheet, frequency)


def relaxation_time_from_mobility(chemical_potential: float, mobility: float) -> float:
    """
    Relaxation time from chemical potential (eV) and mobility (m²/V·s)

    τ = µ_c·µ_g/(e·v_F²), µ_c in joules.
    """
    if chemical_potential <= 0 or mobility <= 0:
        raise ModelDomainError(
            "Chemical potential and mobility must be positive",
            chemical_potential_ev=chemical_potential,
            mobility=mobility,
        )
    e = CONSTANTS.electron_charge
    tau = chemical_potential * e * mobility / (e * CONSTANTS.fermi_velocity**2)
    logger.debug(
        "tau(mu_c=%.4g eV, mobility=%.4g m2/Vs) = %.4e s",
        chemical_potential,
        mobility,
        tau,
    )
    return tau


def with_chemical_potential(
    sheet: GrapheneSheet, chemical_potential: float
) -> GrapheneSheet:
    """Copy of the sheet gated to a new chemical potential, τ held fixed"""
    if chemical_potential <= 0:
        raise ModelDomainError(
            "Chemical potential must be positive",
            chemical_potential_ev=chemical_potential,
        )
    return sheet.model_copy(update={"chemical_potential": float(chemical_potential)})
