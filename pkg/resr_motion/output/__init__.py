# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Output artifacts: exporters, their registry, run manifests and versions."""

from .base import BaseExporter, ExportResult
from .registry import ExporterRegistry, OutputError, RegistryError
from . import exporters  # noqa: F401  registers the built-in formats
from .exporters import json_safe
from .manifest import (
    MANIFEST_FILENAME,
    RunManifest,
    SoftwareVersions,
    calculate_checksum,
    check_run_directory,
    generate_run_manifest,
    get_software_versions,
    verify_checksum,
)
from .version import CompatibilityStatus, check_version_compatibility, parse_version

__all__ = [
    "BaseExporter",
    "ExportResult",
    "ExporterRegistry",
    "OutputError",
    "RegistryError",
    "json_safe",
    "MANIFEST_FILENAME",
    "RunManifest",
    "SoftwareVersions",
    "calculate_checksum",
    "check_run_directory",
    "generate_run_manifest",
    "get_software_versions",
    "verify_checksum",
    "CompatibilityStatus",
    "check_version_compatibility",
    "parse_version",
]
