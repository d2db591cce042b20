"""Sweeps, peak and bandwidth extraction, reconfiguration maps"""

from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import Iterable, List, Sequence

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from src.circuit.schemas import Stackup
from src.circuit.service import absorption_from_reflection, reflection_spectrum
from src.config import (
    DEFAULT_BANDWIDTH_THRESHOLD,
    FLAT_SPECTRUM_TOL,
    NO_PEAK,
    PEAK_REFINE_RTOL,
    get_max_workers,
)
from src.enums import BandwidthStatus, ConductivityModel, PeakStatus, Polarization
from src.exceptions import ModelDomainError
from src.material.service import with_chemical_potential
from src.spectrum.logger import logger
from src.spectrum.schemas import (
    AngleSpectrum,
    BandwidthResult,
    FrequencyGrid,
    PeakResult,
    ReconfigurationEntry,
    ReconfigurationMap,
    Spectrum,
    SpectrumPoint,
    WaveTemplate,
)


def _reflection_chunk(
    stackup: Stackup,
    wave: WaveTemplate,
    model: ConductivityModel,
    frequencies: np.ndarray,
) -> np.ndarray:
    return np.atleast_1d(
        reflection_spectrum(
            stackup, frequencies, wave.angle, wave.polarization, model
        )
    )


def evaluate_reflection(
    stackup: Stackup,
    wave: WaveTemplate,
    frequencies: np.ndarray,
    model: ConductivityModel = ConductivityModel.DRUDE,
) -> np.ndarray:
    """
    S11 at every frequency, split across MSF_THREADS workers

    Chunks are merged back in grid order; every point is evaluated by the
    same elementwise arithmetic whatever the worker count.
    """
    workers = min(get_max_workers(), len(frequencies))
    evaluate = partial(_reflection_chunk, stackup, wave, model)
    if workers <= 1:
        return evaluate(frequencies)
    chunks = np.array_split(frequencies, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(evaluate, chunks))
    return np.concatenate(results)


def frequency_sweep(
    stackup: Stackup,
    wave: WaveTemplate,
    grid: FrequencyGrid,
    model: ConductivityModel = ConductivityModel.DRUDE,
) -> Spectrum:
    """Absorber response over a frequency grid"""
    frequencies = grid.frequencies()
    s11 = evaluate_reflection(stackup, wave, frequencies, model)
    absorption = absorption_from_reflection(s11)
    points = [
        SpectrumPoint(
            frequency=float(f),
            s11_real=float(value.real),
            s11_imag=float(value.imag),
            absorption=float(a),
        )
        for f, value, a in zip(frequencies, s11, absorption)
    ]
    logger.debug(
        "Swept %d points in [%.4e, %.4e] Hz at %.4f rad %s",
        grid.n_points,
        grid.f_start,
        grid.f_stop,
        wave.angle,
        wave.polarization.value,
    )
    return Spectrum(points=points, stackup=stackup, wave=wave, model=model)


def continuous_absorption(spectrum: Spectrum, frequency: float) -> float:
    """Absorption of the spectrum's model between grid points"""
    s11 = reflection_spectrum(
        spectrum.stackup,
        frequency,
        spectrum.wave.angle,
        spectrum.wave.polarization,
        spectrum.model,
    )
    return float(absorption_from_reflection(s11))


def find_peak(spectrum: Spectrum) -> PeakResult:
    """
    Global absorption maximum

    The grid maximum (lowest frequency on ties) is refined by a bounded
    golden-section/parabolic search inside its two neighbouring cells.
    """
    frequencies = spectrum.frequencies()
    absorption = spectrum.absorption()
    if absorption.max() - absorption.min() < FLAT_SPECTRUM_TOL:
        logger.info(NO_PEAK)
        return PeakResult(status=PeakStatus.NONE)

    index = int(np.argmax(absorption))
    if index in (0, len(absorption) - 1):
        return PeakResult(
            status=PeakStatus.BOUNDARY,
            frequency=float(frequencies[index]),
            absorption=float(absorption[index]),
            grid_index=index,
        )

    result = minimize_scalar(
        lambda f: -continuous_absorption(spectrum, f),
        bounds=(frequencies[index - 1], frequencies[index + 1]),
        method="bounded",
        options={"xatol": PEAK_REFINE_RTOL * frequencies[index]},
    )
    f_peak = float(frequencies[index])
    a_peak = float(absorption[index])
    if -result.fun > a_peak:
        f_peak = float(result.x)
        a_peak = float(-result.fun)
    return PeakResult(
        status=PeakStatus.INTERIOR,
        frequency=f_peak,
        absorption=a_peak,
        grid_index=index,
    )


def _band_edge(
    spectrum: Spectrum,
    anchor: float,
    indices: Iterable[int],
    threshold: float,
) -> float:
    """Walk grid points away from the peak until absorption drops below threshold"""
    frequencies = spectrum.frequencies()
    absorption = spectrum.absorption()
    inside = anchor
    for index in indices:
        if absorption[index] < threshold:
            return float(
                brentq(
                    lambda f: continuous_absorption(spectrum, f) - threshold,
                    min(inside, frequencies[index]),
                    max(inside, frequencies[index]),
                )
            )
        inside = float(frequencies[index])
    return inside


def bandwidth(
    spectrum: Spectrum, threshold: float = DEFAULT_BANDWIDTH_THRESHOLD
) -> BandwidthResult:
    """Widest contiguous band around the peak with absorption ≥ threshold"""
    if not 0.0 < threshold < 1.0:
        raise ModelDomainError(
            "Bandwidth threshold must lie in (0, 1)", threshold=threshold
        )
    peak = find_peak(spectrum)
    if not peak.found or peak.absorption < threshold:
        logger.info("Absorption below %.3f everywhere", threshold)
        return BandwidthResult(
            status=BandwidthStatus.BELOW_THRESHOLD, threshold=threshold
        )

    frequencies = spectrum.frequencies()
    below = np.flatnonzero(frequencies < peak.frequency)[::-1]
    above = np.flatnonzero(frequencies > peak.frequency)
    f_lo = min(
        _band_edge(spectrum, peak.frequency, below, threshold), peak.frequency
    )
    f_hi = max(
        _band_edge(spectrum, peak.frequency, above, threshold), peak.frequency
    )
    center = 0.5 * (f_lo + f_hi)
    return BandwidthResult(
        status=BandwidthStatus.OK,
        threshold=threshold,
        f_lo=f_lo,
        f_hi=f_hi,
        fractional_bandwidth=(f_hi - f_lo) / center,
    )


def angle_map(
    stackup: Stackup,
    grid: FrequencyGrid,
    angles: Sequence[float],
    polarization: Polarization = Polarization.TE,
    model: ConductivityModel = ConductivityModel.DRUDE,
) -> List[AngleSpectrum]:
    """One spectrum and its peak per incidence angle (radians)"""
    entries = []
    for angle in angles:
        wave = WaveTemplate(angle=angle, polarization=polarization)
        spectrum = frequency_sweep(stackup, wave, grid, model)
        entries.append(
            AngleSpectrum(
                angle=angle,
                polarization=polarization,
                spectrum=spectrum,
                peak=find_peak(spectrum),
            )
        )
    return entries


def reconfiguration_map(
    stackup: Stackup,
    grid: FrequencyGrid,
    chemical_potentials: Sequence[float],
    wave: WaveTemplate = WaveTemplate(),
    model: ConductivityModel = ConductivityModel.DRUDE,
) -> ReconfigurationMap:
    """Peak frequency and absorption for each chemical potential (eV)"""
    for previous, current in zip(chemical_potentials, chemical_potentials[1:]):
        if not current > previous:
            raise ModelDomainError(
                "Chemical potentials must increase strictly",
                chemical_potential_ev=current,
            )

    entries = []
    spectra = []
    for mu_c in chemical_potentials:
        gated = stackup.model_copy(
            update={"sheet": with_chemical_potential(stackup.sheet, mu_c)}
        )
        spectrum = frequency_sweep(gated, wave, grid, model)
        peak = find_peak(spectrum)
        spectra.append(spectrum)
        entries.append(
            ReconfigurationEntry(
                chemical_potential=float(mu_c),
                f_peak=peak.frequency,
                a_peak=peak.absorption,
            )
        )

    anomalies = []
    for previous, current in zip(entries, entries[1:]):
        if (
            previous.f_peak is None
            or current.f_peak is None
            or not current.f_peak > previous.f_peak
        ):
            anomalies.append(
                f"Peak frequency does not increase from {previous.chemical_potential} "
                f"eV to {current.chemical_potential} eV"
            )
    for anomaly in anomalies:
        logger.warning(anomaly)
    return ReconfigurationMap(
        entries=entries,
        spectra=spectra,
        monotone=not anomalies,
        anomalies=anomalies,
    )
