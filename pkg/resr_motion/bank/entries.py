# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Equation bank entries and the in-memory bank.

An entry is a single-axis expression over ``t`` tagged with the collection
it came from. Entries are materialized into series on whatever time grid
the caller supplies, so the same bank serves any query length.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence
import logging

import numpy as np
from numpy.typing import ArrayLike

from ..expr import Expr, complexity, evaluate_array, to_string

logger = logging.getLogger(__name__)

SOURCES = ("feynman", "nguyen", "augmented")

FINITE_CHECK_START = 0.1
FINITE_CHECK_STOP = 10.0
FINITE_CHECK_POINTS = 100
MIN_FINITE_FRACTION = 0.9


class BankError(Exception):
    """Base exception for equation bank errors."""
    pass


class BankFileError(BankError):
    """Raised when a bank file cannot be read or written."""
    pass


class DuplicateEntryError(BankError):
    """Raised when two entries share an id."""
    pass


class EmptyBankError(BankError):
    """Raised when a bank ends up with zero valid entries."""
    pass


class BankVersionError(BankError):
    """Raised when a bank file's major version is not supported."""
    pass


@dataclass(frozen=True)
class EquationBankEntry:
    """One bank equation.

    Attributes:
        id: Unique identifier, e.g. ``feynman_I.12.1``
        source: One of ``feynman``, ``nguyen``, ``augmented``
        expr: Expression over ``t``
        notes: Free text, usually the original equation name
    """
    id: str
    source: str
    expr: Expr
    notes: str = ""

    @property
    def expression(self) -> str:
        return to_string(self.expr)

    @property
    def complexity(self) -> int:
        return complexity(self.expr)


def finite_fraction(e: Expr) -> float:
    """Share of the check grid on which ``e`` evaluates finitely (protected ops)."""
    t = np.linspace(FINITE_CHECK_START, FINITE_CHECK_STOP, FINITE_CHECK_POINTS)
    values = evaluate_array(e, t, protected=True)
    return float(np.isfinite(values).mean())


def is_materializable(e: Expr) -> bool:
    return finite_fraction(e) >= MIN_FINITE_FRACTION


def materialize(entry: EquationBankEntry, t_values: ArrayLike) -> np.ndarray:
    """Evaluate an entry on ``t_values`` under protected operators."""
    return evaluate_array(entry.expr, t_values, protected=True)


@dataclass
class SourceStats:
    count: int
    mean_complexity: float


@dataclass
class EquationBank:
    """An immutable-after-load collection of entries.

    Attributes:
        entries: Entries in file order
        version: Format version from the ``# VERSION:`` header
        source: Path the bank was read from, if any
        warnings: Lines rejected while loading and other non-fatal issues
    """
    entries: List[EquationBankEntry]
    version: str
    source: Optional[str] = None
    warnings: List[str] = field(default_factory=list)

    def __post_init__(self):
        seen = set()
        for entry in self.entries:
            if entry.id in seen:
                raise DuplicateEntryError(f"Duplicate bank entry id: {entry.id}")
            seen.add(entry.id)
        self._by_id = {entry.id: entry for entry in self.entries}

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def get(self, entry_id: str) -> EquationBankEntry:
        return self._by_id[entry_id]

    @property
    def ids(self) -> List[str]:
        return [entry.id for entry in self.entries]

    def subset(self, ids: Sequence[str]) -> "EquationBank":
        """Bank restricted to ``ids``, keeping file order."""
        wanted = set(ids)
        return EquationBank(
            [entry for entry in self.entries if entry.id in wanted],
            self.version,
            self.source,
        )

    def counts_by_source(self) -> Dict[str, int]:
        return {name: stats.count for name, stats in bank_stats(self).items()}


def bank_stats(bank: EquationBank) -> Dict[str, SourceStats]:
    """Per-source entry count and mean node count, sources in sorted order."""
    grouped: Dict[str, List[int]] = {}
    for entry in bank.entries:
        grouped.setdefault(entry.source, []).append(entry.complexity)
    return {
        source: SourceStats(len(sizes), float(np.mean(sizes)))
        for source, sizes in sorted(grouped.items())
    }
