# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""The physics equation bank used to seed the search.

Usage:
    from resr_motion.bank import load_default_bank, bank_stats

    bank = load_default_bank()
    bank_stats(bank)["nguyen"].count    # 10
"""

from .entries import (
    SOURCES,
    BankError,
    BankFileError,
    BankVersionError,
    DuplicateEntryError,
    EmptyBankError,
    EquationBank,
    EquationBankEntry,
    SourceStats,
    bank_stats,
    finite_fraction,
    is_materializable,
    materialize,
)
from .loader import (
    BANK_FORMAT_VERSION,
    check_bank_version,
    default_bank_path,
    format_bank,
    load_bank,
    load_default_bank,
    parse_bank_text,
    save_bank,
)

__all__ = [
    "SOURCES",
    "BankError",
    "BankFileError",
    "BankVersionError",
    "DuplicateEntryError",
    "EmptyBankError",
    "EquationBank",
    "EquationBankEntry",
    "SourceStats",
    "bank_stats",
    "finite_fraction",
    "is_materializable",
    "materialize",
    "BANK_FORMAT_VERSION",
    "check_bank_version",
    "default_bank_path",
    "format_bank",
    "load_bank",
    "load_default_bank",
    "parse_bank_text",
    "save_bank",
]
