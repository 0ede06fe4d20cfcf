# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Semantic-version compatibility checks for versioned files.

Used for the equation bank's ``# VERSION:`` header and for discovery result
documents read back by ``resr forecast``.

Compatibility Levels:
    COMPATIBLE: Same major and minor version
    COMPATIBLE_WITH_WARNINGS: Same major, different minor
    INCOMPATIBLE: Different major version
"""

from enum import Enum
from typing import List, Tuple


class CompatibilityStatus(Enum):
    """Compatibility status for reading a versioned file."""
    COMPATIBLE = "compatible"
    COMPATIBLE_WITH_WARNINGS = "compatible_with_warnings"
    INCOMPATIBLE = "incompatible"


def parse_version(version_str: str) -> Tuple[int, int, int]:
    """Parse semantic version string to tuple.

    Handles version strings like "1.0.0" or "1.0". Invalid strings parse
    as (0, 0, 0).
    """
    try:
        parts = version_str.strip().split(".")
        major = int(parts[0]) if len(parts) > 0 else 0
        minor = int(parts[1]) if len(parts) > 1 else 0
        patch = int(parts[2]) if len(parts) > 2 else 0
        return (major, minor, patch)
    except (ValueError, IndexError, AttributeError):
        return (0, 0, 0)


def check_version_compatibility(
    file_version: str,
    supported_version: str,
) -> Tuple[CompatibilityStatus, List[str], List[str]]:
    """Check a file's format version against the version this code writes.

    Args:
        file_version: Version declared by the file
        supported_version: Version this code supports

    Returns:
        Tuple of (status, warnings, errors)
    """
    warnings = []
    errors = []

    file_major, file_minor, _ = parse_version(file_version)
    supported_major, supported_minor, _ = parse_version(supported_version)

    if file_major != supported_major:
        errors.append(
            f"Major version mismatch: file is v{file_major}.x, "
            f"supported is v{supported_major}.x"
        )
        return (CompatibilityStatus.INCOMPATIBLE, warnings, errors)

    if file_minor > supported_minor:
        warnings.append(
            f"File version ({file_version}) is newer than supported ({supported_version}). "
            "Some fields may be ignored."
        )
        return (CompatibilityStatus.COMPATIBLE_WITH_WARNINGS, warnings, errors)

    if file_minor < supported_minor:
        warnings.append(
            f"File version ({file_version}) is older than supported ({supported_version}). "
            "Missing fields use default values."
        )
        return (CompatibilityStatus.COMPATIBLE_WITH_WARNINGS, warnings, errors)

    return (CompatibilityStatus.COMPATIBLE, warnings, errors)
