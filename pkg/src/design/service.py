"""Inverse design of the absorber"""

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError
from scipy.optimize import brentq, minimize

from src.circuit.schemas import PatchArrayGeometry, Stackup, Substrate
from src.circuit.service import absorption_from_reflection, reflection_spectrum
from src.config import (
    DEFAULT_LOSS_TANGENT,
    DEFAULT_MIN_ABSORPTION,
    DEFAULT_MU_C_BOUNDS_EV,
    DEFAULT_N_POINTS,
    INVALID_DESIGN_PENALTY,
    MATCH_FTOL,
    MATCH_MAX_ITERATIONS,
    MATCH_TOLERANCE,
    MATCH_XTOL,
    PATCH_WAVELENGTH_DIVISOR,
    PERIOD_WAVELENGTH_DIVISOR,
    ROOT_FREQUENCY_RTOL,
    ROOT_MAX_ITERATIONS,
    ROOT_XTOL_EV,
    SILICON_PERMITTIVITY,
    SOLVER_GRID_SPAN,
    THICKNESS_WAVELENGTH_DIVISOR,
)
from src.design.logger import logger
from src.design.schemas import DesignSolution, DesignTarget, ParameterBounds
from src.enums import ConductivityModel, FreeParameter, SolveMode
from src.exceptions import BracketError, ModelDomainError, SolverError
from src.material.schemas import CONSTANTS, GrapheneSheet
from src.material.service import with_chemical_potential
from src.spectrum.schemas import FrequencyGrid, PeakResult, WaveTemplate
from src.spectrum.service import find_peak, frequency_sweep


def synthesize_geometry(
    f_target: float,
    sheet: Optional[GrapheneSheet] = None,
    relative_permittivity: float = SILICON_PERMITTIVITY,
    loss_tangent: float = DEFAULT_LOSS_TANGENT,
) -> Stackup:
    """
    Starting design from the free-space wavelength at f_target

    h = λ/13, d = λ/14, P = λ/10 on silicon with the default graphene sheet.
    """
    if f_target <= 0:
        raise ModelDomainError("Target frequency must be positive", frequency=f_target)
    wavelength = CONSTANTS.light_speed / f_target
    return Stackup(
        sheet=sheet or GrapheneSheet(),
        geometry=PatchArrayGeometry(
            period=wavelength / PERIOD_WAVELENGTH_DIVISOR,
            patch_width=wavelength / PATCH_WAVELENGTH_DIVISOR,
        ),
        substrate=Substrate(
            relative_permittivity=relative_permittivity,
            thickness=wavelength / THICKNESS_WAVELENGTH_DIVISOR,
            loss_tangent=loss_tangent,
        ),
    )


def solver_grid(f_target: float) -> FrequencyGrid:
    """Peak search window centred on the target"""
    low, high = SOLVER_GRID_SPAN
    return FrequencyGrid(
        f_start=low * f_target, f_stop=high * f_target, n_points=DEFAULT_N_POINTS
    )


def _gated(stackup: Stackup, chemical_potential: float) -> Stackup:
    return stackup.model_copy(
        update={"sheet": with_chemical_potential(stackup.sheet, chemical_potential)}
    )


def _peak(
    stackup: Stackup,
    grid: FrequencyGrid,
    wave: WaveTemplate,
    model: ConductivityModel,
) -> PeakResult:
    return find_peak(frequency_sweep(stackup, wave, grid, model))


def _reflection_at(
    stackup: Stackup,
    f_target: float,
    wave: WaveTemplate,
    model: ConductivityModel,
) -> complex:
    return complex(
        reflection_spectrum(
            stackup, f_target, wave.angle, wave.polarization, model
        )
    )


def _solution(
    stackup: Stackup,
    f_target: float,
    grid: FrequencyGrid,
    wave: WaveTemplate,
    model: ConductivityModel,
    min_absorption: float,
    **fields,
) -> DesignSolution:
    """Diagnostics of a candidate design at the target frequency"""
    peak = _peak(stackup, grid, wave, model)
    s11 = _reflection_at(stackup, f_target, wave, model)
    absorption = float(absorption_from_reflection(s11))
    fields.setdefault(
        "frequency_error",
        abs(peak.frequency - f_target) if peak.found else None,
    )
    return DesignSolution(
        stackup=stackup,
        achieved_f_peak=peak.frequency,
        achieved_a_peak=peak.absorption,
        residual=abs(s11),
        meets_target=absorption >= min_absorption,
        **fields,
    )


def solve_chemical_potential(
    stackup: Stackup,
    f_target: float,
    bounds: Tuple[float, float] = DEFAULT_MU_C_BOUNDS_EV,
    grid: Optional[FrequencyGrid] = None,
    wave: WaveTemplate = WaveTemplate(),
    model: ConductivityModel = ConductivityModel.DRUDE,
    min_absorption: float = DEFAULT_MIN_ABSORPTION,
) -> DesignSolution:
    """
    Chemical potential (eV) that puts the absorption peak on f_target

    Bracketed Brent root finding on f_peak(µ_c) - f_target, relying on the
    peak moving up monotonically with µ_c. Converged once the peak is within
    1e-3·f_target of the target.
    """
    if f_target <= 0:
        raise ModelDomainError("Target frequency must be positive", frequency=f_target)
    lower, upper = bounds
    if not 0 < lower < upper:
        raise ModelDomainError(
            "Chemical potential bounds must satisfy 0 < lower < upper",
            lower_ev=lower,
            upper_ev=upper,
        )
    grid = grid or solver_grid(f_target)
    tolerance = ROOT_FREQUENCY_RTOL * f_target

    def peak_frequency(chemical_potential: float) -> float:
        peak = _peak(_gated(stackup, chemical_potential), grid, wave, model)
        if not peak.found:
            raise SolverError(
                "No absorption peak to steer", chemical_potential_ev=chemical_potential
            )
        return peak.frequency

    start = stackup.sheet.chemical_potential
    if lower <= start <= upper and abs(peak_frequency(start) - f_target) < tolerance:
        logger.info("Starting chemical potential %.6g eV already on target", start)
        return _solution(
            stackup,
            f_target,
            grid,
            wave,
            model,
            min_absorption,
            iterations=0,
            converged=True,
            message="Starting point already on target",
        )

    lower_peak = peak_frequency(lower)
    upper_peak = peak_frequency(upper)
    if (lower_peak - f_target) * (upper_peak - f_target) > 0:
        raise BracketError(
            f"Target {f_target:.6e} Hz is not bracketed: peak at {lower_peak:.6e} Hz "
            f"for {lower} eV and {upper_peak:.6e} Hz for {upper} eV",
            lower_peak=lower_peak,
            upper_peak=upper_peak,
            f_target=f_target,
        )

    chemical_potential, result = brentq(
        lambda mu: peak_frequency(mu) - f_target,
        lower,
        upper,
        xtol=ROOT_XTOL_EV,
        maxiter=ROOT_MAX_ITERATIONS,
        full_output=True,
        disp=False,
    )
    solved = _gated(stackup, chemical_potential)
    solution = _solution(
        solved,
        f_target,
        grid,
        wave,
        model,
        min_absorption,
        iterations=result.iterations,
        converged=False,
    )
    converged = (
        solution.frequency_error is not None and solution.frequency_error < tolerance
    )
    message = (
        f"Peak within {ROOT_FREQUENCY_RTOL:g} of target at {chemical_potential:.6g} eV"
        if converged
        else f"Root finder stopped after {result.iterations} iterations ({result.flag})"
    )
    if not converged:
        logger.warning(message)
    else:
        logger.info(message)
    return solution.model_copy(update={"converged": converged, "message": message})


def parameter_value(stackup: Stackup, parameter: FreeParameter) -> float:
    """Current value of a design variable (eV for µ_c, meters otherwise)"""
    if parameter is FreeParameter.MU_C:
        return stackup.sheet.chemical_potential
    if parameter is FreeParameter.PATCH_WIDTH:
        return stackup.geometry.patch_width
    if parameter is FreeParameter.PERIOD:
        return stackup.geometry.period
    return stackup.substrate.thickness


def apply_parameters(
    stackup: Stackup,
    parameters: Sequence[FreeParameter],
    values: Sequence[float],
) -> Stackup:
    """New stackup with the given design variables replaced; geometry is revalidated"""
    sheet = stackup.sheet
    geometry = stackup.geometry.model_dump()
    substrate = stackup.substrate.model_dump()
    for parameter, value in zip(parameters, values):
        if parameter is FreeParameter.MU_C:
            sheet = with_chemical_potential(sheet, float(value))
        elif parameter is FreeParameter.PATCH_WIDTH:
            geometry["patch_width"] = float(value)
        elif parameter is FreeParameter.PERIOD:
            geometry["period"] = float(value)
        else:
            substrate["thickness"] = float(value)
    return Stackup(
        sheet=sheet,
        geometry=PatchArrayGeometry(**geometry),
        substrate=Substrate(**substrate),
        ground=stackup.ground,
    )


def _search_bounds(
    stackup: Stackup,
    parameters: Sequence[FreeParameter],
    bounds: ParameterBounds,
) -> List[Tuple[float, float]]:
    """Box bounds in coordinates scaled by the starting values"""
    scaled = []
    for parameter in parameters:
        if parameter is FreeParameter.MU_C:
            start = stackup.sheet.chemical_potential
            lower, upper = bounds.mu_c
            if not lower <= start <= upper:
                raise ModelDomainError(
                    "Starting chemical potential outside the search bounds",
                    chemical_potential_ev=start,
                    lower_ev=lower,
                    upper_ev=upper,
                )
            scaled.append((lower / start, upper / start))
        else:
            scaled.append(bounds.geometry_scale)
    return scaled


def match_impedance(
    stackup: Stackup,
    f_target: float,
    free_parameters: Sequence[FreeParameter] = (FreeParameter.MU_C,),
    tolerance: float = MATCH_TOLERANCE,
    bounds: Optional[ParameterBounds] = None,
    wave: WaveTemplate = WaveTemplate(),
    model: ConductivityModel = ConductivityModel.DRUDE,
    grid: Optional[FrequencyGrid] = None,
    min_absorption: float = DEFAULT_MIN_ABSORPTION,
) -> DesignSolution:
    """
    Drive |S11(f_target)| toward zero over one to three design variables

    Derivative-free Powell search inside box bounds. Proposals with the patch
    no longer fitting its cell are penalized. The best design visited is
    returned, or the start when nothing improves on it.
    """
    parameters = [FreeParameter(parameter) for parameter in free_parameters]
    if not 1 <= len(parameters) <= 3 or len(set(parameters)) != len(parameters):
        raise ModelDomainError(
            "Impedance matching needs one to three distinct free parameters",
            free_parameters=[parameter.value for parameter in parameters],
        )
    if f_target <= 0:
        raise ModelDomainError("Target frequency must be positive", frequency=f_target)
    bounds = bounds or ParameterBounds()
    grid = grid or solver_grid(f_target)
    start = np.array([parameter_value(stackup, p) for p in parameters])
    search_bounds = _search_bounds(stackup, parameters, bounds)

    best = {"scale": np.ones(len(parameters)), "value": math.inf}

    def objective(scale: np.ndarray) -> float:
        try:
            candidate = apply_parameters(stackup, parameters, scale * start)
            value = abs(_reflection_at(candidate, f_target, wave, model)) ** 2
        except (ValidationError, ModelDomainError):
            value = INVALID_DESIGN_PENALTY
        if value < best["value"]:
            best["scale"] = np.array(scale, dtype=float)
            best["value"] = value
        return value

    initial = objective(np.ones(len(parameters)))
    history = [math.sqrt(initial)]
    if history[0] < tolerance:
        return _solution(
            stackup,
            f_target,
            grid,
            wave,
            model,
            min_absorption,
            iterations=0,
            converged=True,
            history=history,
            message="Starting point already matched",
        )

    # Powell iterates may rise under bounds; only the best point is accepted.
    def record(_scale: np.ndarray) -> None:
        accepted = math.sqrt(best["value"])
        if accepted <= history[-1]:
            history.append(accepted)

    result = minimize(
        objective,
        np.ones(len(parameters)),
        method="Powell",
        bounds=search_bounds,
        callback=record,
        options={
            "maxiter": MATCH_MAX_ITERATIONS,
            "xtol": MATCH_XTOL,
            "ftol": MATCH_FTOL,
        },
    )
    if best["value"] < initial:
        matched = apply_parameters(stackup, parameters, best["scale"] * start)
        if math.sqrt(best["value"]) < history[-1]:
            history.append(math.sqrt(best["value"]))
    else:
        matched = stackup
    solution = _solution(
        matched,
        f_target,
        grid,
        wave,
        model,
        min_absorption,
        iterations=int(result.nit),
        converged=False,
        history=history,
    )
    converged = solution.residual < tolerance
    message = (
        f"|S11| = {solution.residual:.3e} below {tolerance:g}"
        if converged
        else f"Best |S11| = {solution.residual:.3e} after {result.nit} iterations"
    )
    if converged:
        logger.info(message)
    else:
        logger.warning(message)
    return solution.model_copy(update={"converged": converged, "message": message})


def solve_design(
    stackup: Stackup,
    target: DesignTarget,
    mode: SolveMode = SolveMode.PEAK,
    mu_c_bounds: Optional[Tuple[float, float]] = None,
    grid: Optional[FrequencyGrid] = None,
    wave: WaveTemplate = WaveTemplate(),
    model: ConductivityModel = ConductivityModel.DRUDE,
    tolerance: float = MATCH_TOLERANCE,
) -> DesignSolution:
    """Run the solver selected by mode for a design target"""
    if SolveMode(mode) is SolveMode.PEAK:
        if target.free_parameters != [FreeParameter.MU_C]:
            logger.info("Peak solver only moves mu_c; other free parameters ignored")
        return solve_chemical_potential(
            stackup,
            target.f_target,
            mu_c_bounds or DEFAULT_MU_C_BOUNDS_EV,
            grid,
            wave,
            model,
            target.min_absorption,
        )
    bounds = ParameterBounds(mu_c=mu_c_bounds) if mu_c_bounds else ParameterBounds()
    return match_impedance(
        stackup,
        target.f_target,
        target.free_parameters,
        tolerance,
        bounds,
        wave,
        model,
        grid,
        target.min_absorption,
    )
