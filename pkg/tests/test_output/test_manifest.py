# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Tests for run manifests."""

import tempfile
from pathlib import Path
from unittest import TestCase

from resr_motion import __version__
from resr_motion.output import (
    MANIFEST_FILENAME,
    RunManifest,
    calculate_checksum,
    check_run_directory,
    generate_run_manifest,
    get_software_versions,
    verify_checksum,
)


class TestRunManifest(TestCase):

    def setUp(self):
        self.temp_dir = tempfile.TemporaryDirectory()
        self.root = Path(self.temp_dir.name)
        (self.root / "front_x.tsv").write_text("complexity\tmse\texpression\n1\t0.5\tt\n")
        (self.root / "sub").mkdir()
        (self.root / "sub" / "log.csv").write_text("iteration\n1\n")

    def tearDown(self):
        self.temp_dir.cleanup()

    def test_generate_and_validate(self):
        manifest = generate_run_manifest(self.root, "discover", {"seed": 0}, {"front_x": 1})
        self.assertEqual(manifest.validate(), [])
        self.assertEqual(manifest.command, "discover")
        self.assertEqual(manifest.software_versions.resr_motion, __version__)
        self.assertEqual(manifest.checksum["algorithm"], "sha256")

    def test_save_and_reload(self):
        manifest = generate_run_manifest(self.root, "bench", {}, {"runs": 3})
        path = manifest.save(self.root)
        self.assertEqual(Path(path).name, MANIFEST_FILENAME)
        restored = RunManifest.from_file(self.root)
        self.assertEqual(restored.to_dict(), manifest.to_dict())
        self.assertTrue(verify_checksum(restored, self.root))

    def test_checksum_ignores_manifest_and_detects_changes(self):
        before = calculate_checksum(self.root)
        manifest = generate_run_manifest(self.root, "bench", {}, {})
        manifest.save(self.root)
        self.assertEqual(calculate_checksum(self.root), before)
        (self.root / "sub" / "log.csv").write_text("iteration\n2\n")
        self.assertFalse(verify_checksum(manifest, self.root))

    def test_validate_reports_problems(self):
        manifest = RunManifest.from_dict({"format_id": "other", "data_counts": {"runs": -1}})
        errors = manifest.validate()
        self.assertIn("Invalid format_id: other", errors)
        self.assertIn("Missing command", errors)
        self.assertIn("Invalid record count for runs: -1", errors)

    def test_missing_checksum_verifies(self):
        manifest = RunManifest.from_dict({})
        self.assertTrue(verify_checksum(manifest, self.root))

    def test_software_versions(self):
        versions = get_software_versions()
        self.assertTrue(versions.numpy)
        self.assertTrue(versions.python)


class TestCheckRunDirectory(TestCase):
    """Tests for check_run_directory()."""

    def setUp(self):
        self.temp_dir = tempfile.TemporaryDirectory()
        self.root = Path(self.temp_dir.name)
        (self.root / "discovery_p0.json").write_text('{"point_id": 0}\n')

    def tearDown(self):
        self.temp_dir.cleanup()

    def test_directory_without_manifest(self):
        self.assertEqual(check_run_directory(self.root), [])

    def test_intact_run(self):
        generate_run_manifest(self.root, "discover", {}, {"discovery_p0.json": 1}).save(self.root)
        self.assertEqual(check_run_directory(self.root), [])

    def test_changed_file(self):
        generate_run_manifest(self.root, "discover", {}, {"discovery_p0.json": 1}).save(self.root)
        (self.root / "discovery_p0.json").write_text('{"point_id": 1}\n')
        problems = check_run_directory(self.root)
        self.assertEqual(len(problems), 1)
        self.assertIn("'discover'", problems[0])

    def test_unreadable_manifest(self):
        (self.root / MANIFEST_FILENAME).write_text("not json")
        problems = check_run_directory(self.root)
        self.assertEqual(len(problems), 1)
        self.assertIn("Unreadable run manifest", problems[0])

    def test_malformed_manifest(self):
        (self.root / MANIFEST_FILENAME).write_text('{"format_id": "other"}')
        self.assertIn("Invalid format_id: other", check_run_directory(self.root))
