# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Reading and writing equation bank files.

File layout (tab separated, ``#`` starts a comment line)::

    # VERSION: 1.0.0
    id	source	expression	notes
    nguyen_8	nguyen	sqrt(t)	Nguyen-8

The column header line is optional. Lines that cannot be turned into a
usable entry are skipped with a warning; duplicate ids and a bank with no
usable entry are errors.
"""

from importlib import resources
from pathlib import Path
from typing import List, Optional, Tuple, Union
import logging
import re

from ..expr import ParseError, parse
from ..output.version import CompatibilityStatus, check_version_compatibility
from .entries import (
    SOURCES,
    BankFileError,
    BankVersionError,
    DuplicateEntryError,
    EmptyBankError,
    EquationBank,
    EquationBankEntry,
    bank_stats,
    is_materializable,
)

logger = logging.getLogger(__name__)

BANK_FORMAT_VERSION = "1.0.0"
COLUMNS = ("id", "source", "expression", "notes")
DEFAULT_BANK_RESOURCE = "data/bank/default.tsv"

_VERSION_RE = re.compile(r"^#\s*VERSION:\s*(\S+)\s*$")


def check_bank_version(version: str) -> List[str]:
    """Check a bank's declared version against the supported one.

    Returns:
        Warnings for a minor mismatch, empty when compatible

    Raises:
        BankVersionError: On a major version mismatch
    """
    status, warnings, errors = check_version_compatibility(version, BANK_FORMAT_VERSION)
    if status == CompatibilityStatus.INCOMPATIBLE:
        raise BankVersionError("; ".join(errors))
    return warnings


def _parse_line(line: str, lineno: int) -> Tuple[Optional[EquationBankEntry], Optional[str]]:
    columns = line.split("\t")
    if len(columns) < 3 or len(columns) > 4:
        return None, f"line {lineno}: expected 3 or 4 tab-separated columns, got {len(columns)}"
    entry_id, source, expression = (column.strip() for column in columns[:3])
    notes = columns[3].strip() if len(columns) == 4 else ""
    if not entry_id:
        return None, f"line {lineno}: empty id"
    if source not in SOURCES:
        return None, f"line {lineno}: unknown source {source!r} for {entry_id}"
    try:
        expr = parse(expression)
    except ParseError as e:
        return None, f"line {lineno}: cannot parse {entry_id}: {e}"
    if not is_materializable(expr):
        return None, f"line {lineno}: {entry_id} is not finite on enough of the check grid"
    return EquationBankEntry(entry_id, source, expr, notes), None


def parse_bank_text(text: str, source: Optional[str] = None) -> EquationBank:
    """Build a bank from file contents. See ``load_bank``."""
    version = None
    warnings: List[str] = []
    entries: List[EquationBankEntry] = []
    seen = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        if line.startswith("#"):
            match = _VERSION_RE.match(line)
            if match and version is None:
                version = match.group(1)
            continue
        if tuple(column.strip() for column in line.split("\t")) == COLUMNS:
            continue

        entry, warning = _parse_line(line, lineno)
        if warning:
            logger.warning(f"Skipping bank entry: {warning}")
            warnings.append(warning)
            continue
        if entry.id in seen:
            raise DuplicateEntryError(f"line {lineno}: duplicate id {entry.id}")
        seen.add(entry.id)
        entries.append(entry)

    if version is None:
        warning = f"no VERSION header, assuming {BANK_FORMAT_VERSION}"
        logger.warning(f"Bank {source or '<text>'}: {warning}")
        warnings.append(warning)
        version = BANK_FORMAT_VERSION
    else:
        for warning in check_bank_version(version):
            logger.warning(f"Bank {source or '<text>'}: {warning}")
            warnings.append(warning)

    if not entries:
        raise EmptyBankError(f"Bank {source or '<text>'} has zero valid entries")

    return EquationBank(entries, version, source, warnings)


def load_bank(path: Union[str, Path]) -> EquationBank:
    """Load a bank file.

    Args:
        path: Bank file path

    Returns:
        The parsed bank; rejected lines are listed in ``bank.warnings``

    Raises:
        BankFileError: If the file cannot be read
        DuplicateEntryError: If two entries share an id
        EmptyBankError: If no entry survives validation
        BankVersionError: If the file's major version is unsupported
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise BankFileError(f"Cannot read bank file {path}: {e}")

    bank = parse_bank_text(text, str(path))
    counts = ", ".join(
        f"{name}={stats.count}" for name, stats in bank_stats(bank).items()
    )
    logger.info(f"Loaded {len(bank)} bank entries from {path} ({counts})")
    return bank


def format_bank(bank: EquationBank) -> str:
    lines = [f"# VERSION: {bank.version}", "\t".join(COLUMNS)]
    for entry in bank.entries:
        lines.append("\t".join((entry.id, entry.source, entry.expression, entry.notes)))
    return "\n".join(lines) + "\n"


def save_bank(bank: EquationBank, path: Union[str, Path]) -> Path:
    """Write ``bank`` in the line format, VERSION header first."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(format_bank(bank), encoding="utf-8")
    except OSError as e:
        raise BankFileError(f"Cannot write bank file {path}: {e}")
    logger.info(f"Saved {len(bank)} bank entries to {path}")
    return path


def default_bank_path() -> Path:
    """Location of the bank shipped with the package."""
    return Path(str(resources.files("resr_motion").joinpath(DEFAULT_BANK_RESOURCE)))


def load_default_bank() -> EquationBank:
    return load_bank(default_bank_path())
