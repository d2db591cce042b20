"""Artifact serialization with atomic writes"""

import csv
import io
import math
import os
import tempfile
from typing import Iterable, List, Sequence

from pydantic import BaseModel

from src.cli.logger import logger
from src.cli.schemas import AngleRow, SpectrumDocument, SpectrumRow
from src.config import SPECTRUM_CSV_HEADER
from src.spectrum.schemas import (
    AngleSpectrum,
    BandwidthResult,
    PeakResult,
    ReconfigurationMap,
    Spectrum,
)
from src.utils import format_float, magnitude_db

ANGLES_CSV_HEADER = ["angle_deg", "polarization", "peak_status", "f_peak_hz", "a_peak"]
RECONFIG_CSV_HEADER = ["mu_c_ev", "f_peak_hz", "a_peak"]


def write_atomic(path: str, text: str) -> None:
    """Write through a temporary file in the target directory, then rename"""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    handle, temporary = tempfile.mkstemp(dir=directory, prefix=".msf-", suffix=".tmp")
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="") as stream:
            stream.write(text)
        os.replace(temporary, path)
    except BaseException:
        if os.path.exists(temporary):
            os.remove(temporary)
        raise
    logger.info("Wrote %s", path)


def write_json(path: str, document: BaseModel) -> None:
    """JSON artifact; floats keep their shortest round-trip form"""
    write_atomic(path, document.model_dump_json(indent=2) + "\n")


def _optional(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def _table(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def spectrum_rows(spectrum: Spectrum) -> List[SpectrumRow]:
    """Output rows of a spectrum, |S11| in dB"""
    return [
        SpectrumRow(
            frequency_hz=point.frequency,
            s11_real=point.s11_real,
            s11_imag=point.s11_imag,
            s11_mag_db=magnitude_db(point.s11),
            absorption=point.absorption,
        )
        for point in spectrum.points
    ]


def spectrum_csv(spectrum: Spectrum) -> str:
    """frequency_hz,s11_real,s11_imag,s11_mag_db,absorption with 17 digits"""
    return _table(
        SPECTRUM_CSV_HEADER,
        (
            [
                format_float(row.frequency_hz),
                format_float(row.s11_real),
                format_float(row.s11_imag),
                format_float(row.s11_mag_db),
                format_float(row.absorption),
            ]
            for row in spectrum_rows(spectrum)
        ),
    )


def spectrum_document(
    spectrum: Spectrum, peak: PeakResult, bandwidth: BandwidthResult
) -> SpectrumDocument:
    """JSON document of a spectrum with its peak and band"""
    return SpectrumDocument(
        model=spectrum.model,
        angle_rad=spectrum.wave.angle,
        polarization=spectrum.wave.polarization,
        points=spectrum_rows(spectrum),
        peak=peak,
        bandwidth=bandwidth,
    )


def angle_rows(entries: Iterable[AngleSpectrum]) -> List[AngleRow]:
    """Peak table rows"""
    return [
        AngleRow(
            angle_rad=entry.angle,
            angle_deg=math.degrees(entry.angle),
            polarization=entry.polarization,
            peak_status=entry.peak.status,
            f_peak_hz=entry.peak.frequency,
            a_peak=entry.peak.absorption,
        )
        for entry in entries
    ]


def angles_csv(rows: Iterable[AngleRow]) -> str:
    """Peak table, one row per (polarization, angle)"""
    return _table(
        ANGLES_CSV_HEADER,
        (
            [
                format_float(row.angle_deg),
                row.polarization.value,
                row.peak_status.value,
                _optional(row.f_peak_hz),
                _optional(row.a_peak),
            ]
            for row in rows
        ),
    )


def angle_spectrum_path(path: str, entry: AngleSpectrum) -> str:
    """Per-angle spectrum file next to the peak table"""
    stem, extension = os.path.splitext(path)
    degrees = math.degrees(entry.angle)
    return f"{stem}_{entry.polarization.value}_{degrees:g}deg{extension or '.csv'}"


def reconfig_csv(reconfiguration: ReconfigurationMap) -> str:
    """mu_c_ev,f_peak_hz,a_peak"""
    return _table(
        RECONFIG_CSV_HEADER,
        (
            [
                format_float(entry.chemical_potential),
                _optional(entry.f_peak),
                _optional(entry.a_peak),
            ]
            for entry in reconfiguration.entries
        ),
    )


def reconfig_spectrum_path(path: str, chemical_potential: float) -> str:
    """Per-chemical-potential spectrum file next to the reconfiguration table"""
    stem, extension = os.path.splitext(path)
    return f"{stem}_{chemical_potential:g}eV{extension or '.csv'}"
