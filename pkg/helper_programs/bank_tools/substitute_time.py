#!/usr/bin/env python3
"""
Turn a multi-variable physics formula into an equation bank line.

Every identifier that is not a known function is either a time-dependent
variable, replaced by a motion law in t, or a constant, replaced by a
number. ``pi`` always becomes 3.14159. The result is parsed with the
package grammar, checked for finiteness on the bank check grid and printed
as one tab-separated bank line.

Usage:
    python substitute_time.py ID "q1*q2/(4*pi*epsilon*r**2)" --time r
    python substitute_time.py feynman_I.50.26 "x1*(cos(omega*t)+alpha*cos(omega*t)**2)" \\
        --literal-time --notes "Anharmonic oscillator displacement"

Output:
    ID<TAB>feynman<TAB>expression<TAB>notes
"""

import argparse
import re
import sys

from resr_motion.bank import SOURCES, is_materializable
from resr_motion.expr import FUNCTIONS, ParseError, parse, to_string

DEFAULT_LAW = "(10 + 10 * t)"
DEFAULT_CONSTANT = "10"
PI = "3.14159"

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def substitute(formula: str, time_variables, law: str, constant: str, literal_time: bool) -> str:
    """Replace identifiers in ``formula``; ``**`` becomes ``^``."""
    time_variables = set(time_variables)

    def replace(match):
        name = match.group(0)
        if name in FUNCTIONS:
            return name
        if name == "pi":
            return PI
        if name == "t" and literal_time:
            return "t"
        if name in time_variables:
            return law
        return constant

    return IDENTIFIER.sub(replace, formula.replace("**", "^"))


def main():
    parser = argparse.ArgumentParser(
        description="Substitute time and constants into a formula and print a bank line"
    )
    parser.add_argument("entry_id", help="Bank entry id, e.g. feynman_I.12.2")
    parser.add_argument("formula", help="Formula in infix notation (** or ^ for powers)")
    parser.add_argument(
        "--time", action="append", default=[], metavar="NAME",
        help="Time-dependent variable (repeatable)"
    )
    parser.add_argument(
        "--law", default=DEFAULT_LAW,
        help=f"Expression substituted for time-dependent variables (default: {DEFAULT_LAW})"
    )
    parser.add_argument(
        "--constant", default=DEFAULT_CONSTANT,
        help=f"Value substituted for every other variable (default: {DEFAULT_CONSTANT})"
    )
    parser.add_argument(
        "--literal-time", action="store_true",
        help="Keep a variable literally named t as the time variable"
    )
    parser.add_argument("--source", default="feynman", choices=SOURCES)
    parser.add_argument("--notes", default="", help="Free-text notes column")

    args = parser.parse_args()

    text = substitute(args.formula, args.time, args.law, args.constant, args.literal_time)
    try:
        expr = parse(text)
    except ParseError as e:
        print(f"Error: cannot parse {text!r}: {e}", file=sys.stderr)
        sys.exit(1)

    if not is_materializable(expr):
        print(f"Error: {to_string(expr)} is not finite on enough of the check grid", file=sys.stderr)
        sys.exit(1)

    print("\t".join((args.entry_id, args.source, to_string(expr), args.notes)))


if __name__ == '__main__':
    main()
