# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Command-line entry point: ``resr <command> [options]``.

Commands:
    gen-data   Generate synthetic trajectories with ground-truth equations
    retrieve   Rank equation-bank entries by distance to a trajectory
    discover   Discover trajectory equations with retrieval-seeded search
    forecast   Forecast future samples from a discovery result
    export     Export a forecast as a resampled coordinate sequence
    bench      Benchmark retrieval seeding across systems, seeds and alphas
"""

import logging
import sys
from typing import List, Optional, TextIO

from . import __version__
from .commands import COMMANDS, EXIT_USAGE, CommandArgumentParser, CommandError

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(verbosity: int) -> None:
    """WARNING by default, INFO with -v, DEBUG with -vv; always on stderr."""
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def build_parser(stdout: Optional[TextIO] = None) -> CommandArgumentParser:
    parser = CommandArgumentParser(
        prog="resr",
        description="Retrieval-seeded symbolic regression for motion trajectories.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=CommandArgumentParser)
    subparsers.required = True
    for command_class in COMMANDS:
        command = command_class(stdout)
        subparser = subparsers.add_parser(command.name, help=command.help, description=command.help)
        command.add_arguments(subparser)
        command.add_common_arguments(subparser)
        subparser.set_defaults(handler=command)
    return parser


def main(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """Run one command; returns the exit code."""
    try:
        options = build_parser(stdout).parse_args(argv)
    except CommandError as e:
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code

    configure_logging(options.verbose)
    try:
        return options.handler.run(options)
    except CommandError as e:
        logger.debug("Command failed", exc_info=True)
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code
    except KeyboardInterrupt:
        sys.stderr.write("interrupted\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
