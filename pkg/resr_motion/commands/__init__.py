# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""``resr`` subcommands."""

from .base import (
    EXIT_DIVERGENT,
    EXIT_OK,
    EXIT_USAGE,
    BaseCommand,
    CommandArgumentParser,
    CommandError,
    parse_resolution,
)
from .bench import BenchCommand
from .discover import DiscoverCommand
from .export import ExportCommand
from .forecast import ForecastCommand
from .gen_data import GenDataCommand
from .retrieve import RetrieveCommand

COMMANDS = [
    GenDataCommand,
    RetrieveCommand,
    DiscoverCommand,
    ForecastCommand,
    ExportCommand,
    BenchCommand,
]

__all__ = [
    "EXIT_DIVERGENT",
    "EXIT_OK",
    "EXIT_USAGE",
    "BaseCommand",
    "CommandArgumentParser",
    "CommandError",
    "parse_resolution",
    "BenchCommand",
    "DiscoverCommand",
    "ExportCommand",
    "ForecastCommand",
    "GenDataCommand",
    "RetrieveCommand",
    "COMMANDS",
]
