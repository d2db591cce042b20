"""Subcommand dispatch"""

import os
from typing import Optional

from pydantic import ValidationError

from src.cli.exceptions import default_error_response
from src.cli.logger import logger
from src.cli.schemas import (
    AnglesDocument,
    ReconfigDocument,
    RunConfig,
    SolutionDocument,
    ValidationDocument,
)
from src.cli.writer import (
    angle_rows,
    angle_spectrum_path,
    angles_csv,
    reconfig_csv,
    reconfig_spectrum_path,
    spectrum_csv,
    spectrum_document,
    write_atomic,
    write_json,
)
from src.design.service import solve_design
from src.enums import OutputFormat, Subcommand
from src.exceptions import ModelDomainError, MsfError, SolverError, ValidationFailure
from src.spectrum.service import (
    angle_map,
    bandwidth,
    find_peak,
    frequency_sweep,
    reconfiguration_map,
)
from src.tmm.service import compare_with_circuit


class CommandRouter:
    """Runs one subcommand against a validated configuration"""

    def __init__(self, config: RunConfig) -> None:
        self.config = config

    def __process_spectrum(self, out: str, output_format: OutputFormat) -> None:
        """Spectrum at the configured incidence"""
        config = self.config
        spectrum = frequency_sweep(
            config.stackup(), config.wave(), config.grid(), config.model
        )
        if output_format is OutputFormat.CSV:
            write_atomic(out, spectrum_csv(spectrum))
            return
        write_json(
            out,
            spectrum_document(
                spectrum,
                find_peak(spectrum),
                bandwidth(spectrum, config.bandwidth_threshold),
            ),
        )

    def __process_angles(self, out: str, output_format: OutputFormat) -> None:
        """Peak table and per-angle spectra for every polarization"""
        config = self.config
        entries = []
        for polarization in config.polarizations:
            entries.extend(
                angle_map(
                    config.stackup(),
                    config.grid(),
                    config.angles,
                    polarization,
                    config.model,
                )
            )
        rows = angle_rows(entries)
        if output_format is OutputFormat.CSV:
            write_atomic(out, angles_csv(rows))
            for entry in entries:
                write_atomic(
                    angle_spectrum_path(out, entry), spectrum_csv(entry.spectrum)
                )
            return
        write_json(
            out,
            AnglesDocument(
                model=config.model,
                peaks=rows,
                spectra=[
                    spectrum_document(
                        entry.spectrum,
                        entry.peak,
                        bandwidth(entry.spectrum, config.bandwidth_threshold),
                    )
                    for entry in entries
                ],
            ),
        )

    def __process_reconfig(self, out: str, output_format: OutputFormat) -> None:
        """Peak position per chemical potential"""
        config = self.config
        reconfiguration = reconfiguration_map(
            config.stackup(),
            config.grid(),
            config.mu_c_list,
            config.wave(),
            config.model,
        )
        pairs = list(zip(reconfiguration.entries, reconfiguration.spectra))
        if output_format is OutputFormat.CSV:
            write_atomic(out, reconfig_csv(reconfiguration))
            for entry, spectrum in pairs:
                write_atomic(
                    reconfig_spectrum_path(out, entry.chemical_potential),
                    spectrum_csv(spectrum),
                )
            return
        write_json(
            out,
            ReconfigDocument(
                model=config.model,
                entries=reconfiguration.entries,
                monotone=reconfiguration.monotone,
                anomalies=reconfiguration.anomalies,
                spectra=[
                    spectrum_document(
                        spectrum,
                        find_peak(spectrum),
                        bandwidth(spectrum, config.bandwidth_threshold),
                    )
                    for _, spectrum in pairs
                ],
            ),
        )

    def __process_solve(self, out: str, output_format: OutputFormat) -> None:
        """Design solution, always written as JSON"""
        config = self.config
        if output_format is OutputFormat.CSV:
            logger.info("solve writes JSON only")
        target = config.target()
        solution = solve_design(
            config.stackup(),
            target,
            config.solve_mode,
            config.mu_c_bounds,
            None,
            config.wave(),
            config.model,
            config.match_tolerance,
        )
        stackup = solution.stackup
        write_json(
            out,
            SolutionDocument(
                mode=config.solve_mode,
                f_target_hz=target.f_target,
                chemical_potential_ev=stackup.sheet.chemical_potential,
                period_m=stackup.geometry.period,
                patch_width_m=stackup.geometry.patch_width,
                thickness_m=stackup.substrate.thickness,
                solution=solution,
            ),
        )
        if not solution.converged:
            raise SolverError(
                solution.message or "Solver did not converge",
                residual=solution.residual,
                iterations=solution.iterations,
                output=out,
            )

    def __process_validate(self, out: str, output_format: OutputFormat) -> None:
        """Circuit model against the transfer-matrix oracle, written as JSON"""
        config = self.config
        if output_format is OutputFormat.CSV:
            logger.info("validate writes JSON only")
        report = compare_with_circuit(
            config.stackup(),
            config.grid().frequencies(),
            config.angles,
            config.polarizations,
            config.model,
            config.validation_tolerance,
        )
        write_json(out, ValidationDocument(model=config.model, report=report))
        if not report.passed:
            raise ValidationFailure(
                "Circuit model deviates from the transfer-matrix oracle",
                max_deviation=report.max_deviation,
                tolerance=report.tolerance,
                output=out,
            )

    def run(
        self,
        subcommand: Subcommand,
        out: Optional[str] = None,
        output_format: Optional[OutputFormat] = None,
    ) -> str:
        """Execute a subcommand and return the artifact path"""
        subcommand = Subcommand(subcommand)
        output_format = OutputFormat(output_format or self.config.output_format)
        if subcommand in (Subcommand.SOLVE, Subcommand.VALIDATE):
            extension = OutputFormat.JSON.value
        else:
            extension = output_format.value
        out = out or self.config.output or f"{subcommand.value}.{extension}"
        processors = {
            Subcommand.SPECTRUM: self.__process_spectrum,
            Subcommand.ANGLES: self.__process_angles,
            Subcommand.RECONFIG: self.__process_reconfig,
            Subcommand.SOLVE: self.__process_solve,
            Subcommand.VALIDATE: self.__process_validate,
        }
        logger.info("Running %s -> %s", subcommand.value, os.path.abspath(out))
        processors[subcommand](out, output_format)
        return out


def run_subcommand(
    name: Subcommand,
    config: RunConfig,
    out: Optional[str] = None,
    output_format: Optional[OutputFormat] = None,
) -> int:
    """Exit status of a subcommand run; errors go to stderr as JSON"""
    try:
        CommandRouter(config).run(name, out, output_format)
    except MsfError as exc:
        return default_error_response(exc)
    except ValidationError as exc:
        return default_error_response(ModelDomainError(str(exc)))
    return 0
