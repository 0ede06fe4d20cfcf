# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Base class for ``resr`` subcommands.

A command declares its arguments, turns the ones that map onto
configuration keys into dotted overrides, and implements ``handle``.
``run`` loads the layered configuration, calls ``handle`` and, when any
file was written, finishes with the run manifest.

Exit codes:
    0: success
    1: usage error, bad input or failed write
    2: divergence (search failed or a forecast went non-finite)
"""

import argparse
import sys
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Optional, TextIO, Union
import logging

from .. import config
from ..bank import EquationBank, load_bank, load_default_bank
from ..output import (
    ExporterRegistry,
    ExportResult,
    check_run_directory,
    generate_run_manifest,
    json_safe,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DIVERGENT = 2


class CommandError(Exception):
    """Raised to stop a command with a message and an exit code."""

    def __init__(self, message: str, exit_code: int = EXIT_USAGE):
        super().__init__(message)
        self.exit_code = exit_code


class CommandArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors as CommandError (exit code 1)."""

    def error(self, message):
        raise CommandError(f"{self.prog}: {message}", EXIT_USAGE)


def parse_resolution(value: str):
    """``640x480`` -> ``(640, 480)``."""
    try:
        width, height = (int(part) for part in value.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WIDTHxHEIGHT, got {value!r}")
    if width <= 0 or height <= 0:
        raise argparse.ArgumentTypeError(f"resolution must be positive, got {value!r}")
    return (width, height)


class BaseCommand(ABC):
    """One ``resr`` subcommand."""

    name: str = ""
    help: str = ""

    def __init__(self, stdout: Optional[TextIO] = None):
        self.stdout = stdout or sys.stdout
        self.out_dir: Optional[Path] = None
        self.data_counts: Dict[str, int] = {}

    @staticmethod
    def add_common_arguments(parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--config", help="TOML, JSON or YAML configuration file")
        parser.add_argument("--seed", type=int, help="Master random seed")
        parser.add_argument("--alpha", type=float, help="Fraction of each population seeded from retrieval")
        parser.add_argument("--bank", help="Equation bank file (default: the packaged bank)")
        parser.add_argument("--out-dir", help="Directory for output files")
        parser.add_argument(
            "-v", "--verbose", action="count", default=0,
            help="-v for progress, -vv for debug detail",
        )

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Add command-specific arguments."""
        pass

    def config_overrides(self, options: argparse.Namespace) -> Dict[str, Any]:
        """Dotted configuration keys set by command-specific flags."""
        return {}

    @abstractmethod
    def handle(self, options: argparse.Namespace, settings: Dict[str, Any]) -> int:
        """Do the work; returns the exit code."""
        pass

    def run(self, options: argparse.Namespace) -> int:
        try:
            config.load_config(options.config)
            overrides = {
                "search.seed": options.seed,
                "search.alpha": options.alpha,
                "retrieval.bank": options.bank,
                "output.out_dir": options.out_dir,
            }
            overrides.update(self.config_overrides(options))
            settings = config.apply_overrides(overrides)
        except config.ConfigError as e:
            raise CommandError(str(e), EXIT_USAGE) from e

        self.out_dir = Path(settings["output"]["out_dir"])
        exit_code = self.handle(options, settings)
        if self.data_counts:
            manifest = generate_run_manifest(
                self.out_dir, self.name, json_safe(settings), self.data_counts
            )
            self.write(manifest.save(self.out_dir))
        return exit_code

    def write(self, text: str) -> None:
        self.stdout.write(f"{text}\n")

    def record(self, result: ExportResult) -> ExportResult:
        """Account for a written file, failing the command if the write failed."""
        if not result.success:
            raise CommandError("; ".join(result.errors), EXIT_USAGE)
        self.data_counts[Path(result.file_path).name] = result.count
        self.write(result.file_path)
        return result

    def export(self, format_name: str, payload: Any, filename: str) -> ExportResult:
        """Write ``payload`` into the output directory with a registered exporter."""
        return self.record(ExporterRegistry.export(format_name, payload, self.out_dir / filename))

    def check_input(self, path: Union[str, Path]) -> None:
        """Warn when an input file sits in a run directory that no longer matches its manifest."""
        for problem in check_run_directory(Path(path).parent):
            logger.warning(f"{self.name}: {problem}")

    def load_bank(self, settings: Dict[str, Any]) -> EquationBank:
        path = settings["retrieval"].get("bank")
        if not path:
            return load_default_bank()
        self.check_input(path)
        return load_bank(path)
