"""Main Service"""

import argparse
import logging
import os
import sys
from logging.handlers import TimedRotatingFileHandler
from typing import List, NoReturn, Optional

from src.cli.exceptions import default_error_response
from src.cli.parser import dump_config, parse_config
from src.cli.router import run_subcommand
from src.cli.writer import write_atomic
from src.config import DATE_FORMAT, FORMAT, LOG_DIR, LOG_FILENAME, LOG_LEVEL
from src.enums import OutputFormat, Subcommand
from src.exceptions import ConfigError, MsfError

logger = logging.getLogger(__name__)


def configure_logging() -> None:
    """Daily rotating log file under MSF_LOG_DIR"""
    if logging.getLogger().handlers:
        return
    if not os.path.exists(LOG_DIR):
        os.makedirs(LOG_DIR)
    file_handler = TimedRotatingFileHandler(LOG_FILENAME, when="midnight")
    file_handler.suffix = "bkp"
    logging.basicConfig(
        encoding="utf-8",
        level=LOG_LEVEL,
        format=FORMAT,
        datefmt=DATE_FORMAT,
        handlers=[file_handler],
    )


class MsfArgumentParser(argparse.ArgumentParser):
    """Usage errors raise ConfigError instead of exiting"""

    def error(self, message: str) -> NoReturn:
        raise ConfigError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    """msf <subcommand> --config <path> [--out <path>] [--format csv|json]"""
    parser = MsfArgumentParser(
        prog="msf",
        description="Graphene metasurface absorber: spectra, maps and inverse design",
    )
    parser.add_argument(
        "subcommand", choices=[subcommand.value for subcommand in Subcommand]
    )
    parser.add_argument(
        "--config", help="key = value configuration file (defaults when omitted)"
    )
    parser.add_argument("--out", help="artifact path")
    parser.add_argument(
        "--format",
        dest="output_format",
        choices=[output_format.value for output_format in OutputFormat],
    )
    parser.add_argument(
        "--dump-config", help="write the effective configuration to this path"
    )
    return parser


def read_config_text(path: Optional[str]) -> str:
    """Configuration text, empty when no file is given"""
    if path is None:
        return ""
    try:
        with open(path, encoding="utf-8") as stream:
            return stream.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigError(f"Cannot read configuration file {path}: {exc}") from exc


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point of the msf command; returns the exit status"""
    try:
        args = build_parser().parse_args(argv)
    except ConfigError as exc:
        return default_error_response(exc)
    configure_logging()
    logger.info("msf %s", args.subcommand)
    try:
        config = parse_config(read_config_text(args.config))
        if args.dump_config:
            write_atomic(args.dump_config, dump_config(config))
    except MsfError as exc:
        return default_error_response(exc)
    return run_subcommand(
        Subcommand(args.subcommand),
        config,
        args.out,
        OutputFormat(args.output_format) if args.output_format else None,
    )


if __name__ == "__main__":
    sys.exit(main())
