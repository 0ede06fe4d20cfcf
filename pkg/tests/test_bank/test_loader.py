# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Tests for reading and writing bank files."""

import tempfile
from pathlib import Path
from unittest import TestCase

from resr_motion.bank import (
    BANK_FORMAT_VERSION,
    BankFileError,
    BankVersionError,
    DuplicateEntryError,
    EmptyBankError,
    bank_stats,
    check_bank_version,
    load_bank,
    parse_bank_text,
    save_bank,
)

HEADER = "# VERSION: 1.0.0\nid\tsource\texpression\tnotes\n"


class TestParseBankText(TestCase):
    """Tests for parse_bank_text()."""

    def test_valid_lines(self):
        bank = parse_bank_text(
            HEADER
            + "nguyen_8\tnguyen\tsqrt(t)\tNguyen-8\n"
            + "aug_1\taugmented\t2 * cos(3 * t)\n"
        )
        self.assertEqual(bank.ids, ["nguyen_8", "aug_1"])
        self.assertEqual(bank.version, "1.0.0")
        self.assertEqual(bank.get("aug_1").notes, "")
        self.assertEqual(bank.get("nguyen_8").expression, "sqrt(t)")
        self.assertEqual(bank.warnings, [])

    def test_malformed_line_is_skipped_with_one_warning(self):
        bank = parse_bank_text(
            HEADER
            + "a\tnguyen\tt + 1\n"
            + "b\tnguyen\tt +\n"
            + "c\tnguyen\tcos(t)\n"
        )
        self.assertEqual(bank.ids, ["a", "c"])
        self.assertEqual(len(bank.warnings), 1)
        self.assertIn("line 4", bank.warnings[0])

    def test_rejections(self):
        text = (
            HEADER
            + "a\tunknown\tt\n"
            + "b\tnguyen\n"
            + "c\tnguyen\t1 / (0 * t)\n"
            + "\tnguyen\tt\n"
            + "e\tnguyen\tt\n"
        )
        bank = parse_bank_text(text)
        self.assertEqual(bank.ids, ["e"])
        self.assertEqual(len(bank.warnings), 4)

    def test_duplicate_ids(self):
        with self.assertRaises(DuplicateEntryError):
            parse_bank_text(HEADER + "a\tnguyen\tt\na\tnguyen\tcos(t)\n")

    def test_empty_bank(self):
        with self.assertRaises(EmptyBankError):
            parse_bank_text(HEADER + "a\tnguyen\tt +\n")

    def test_missing_version_warns(self):
        bank = parse_bank_text("a\tnguyen\tt\n")
        self.assertEqual(bank.version, BANK_FORMAT_VERSION)
        self.assertEqual(len(bank.warnings), 1)

    def test_major_version_mismatch(self):
        with self.assertRaises(BankVersionError):
            parse_bank_text("# VERSION: 2.0.0\na\tnguyen\tt\n")

    def test_minor_version_mismatch_warns(self):
        self.assertTrue(check_bank_version("1.1.0"))
        self.assertEqual(check_bank_version("1.0.3"), [])


class TestBankFiles(TestCase):
    """Tests for load_bank(), save_bank() and bank_stats()."""

    def setUp(self):
        self.temp_dir = tempfile.TemporaryDirectory()
        self.root = Path(self.temp_dir.name)

    def tearDown(self):
        self.temp_dir.cleanup()

    def test_save_and_reload(self):
        bank = parse_bank_text(HEADER + "a\tnguyen\tt ^ 2 + t\tquadratic\nb\tfeynman\t10 * (10 + 10 * t)\n")
        path = save_bank(bank, self.root / "banks" / "bank.tsv")
        self.assertTrue(path.read_text().startswith("# VERSION: 1.0.0\n"))
        reloaded = load_bank(path)
        self.assertEqual(reloaded.ids, bank.ids)
        self.assertEqual([e.expr for e in reloaded], [e.expr for e in bank])
        self.assertEqual(reloaded.get("a").notes, "quadratic")

    def test_missing_file(self):
        with self.assertRaises(BankFileError):
            load_bank(self.root / "missing.tsv")

    def test_single_entry_stats(self):
        stats = bank_stats(parse_bank_text(HEADER + "a\tnguyen\tt\n"))
        self.assertEqual(stats["nguyen"].count, 1)
        self.assertEqual(stats["nguyen"].mean_complexity, 1.0)

    def test_subset_keeps_file_order(self):
        bank = parse_bank_text(HEADER + "a\tnguyen\tt\nb\tnguyen\tcos(t)\nc\tnguyen\tsin(t)\n")
        self.assertEqual(bank.subset(["c", "a"]).ids, ["a", "c"])
