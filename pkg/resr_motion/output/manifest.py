# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Run manifest generation and validation.

Every command that writes into an output directory finishes by writing
``manifest.json`` next to its data files:

    {
        "format_id": "resr-motion-run",
        "format_version": "1.0.0",
        "created_at": "2026-01-17T12:00:00+00:00",
        "command": "discover",
        "software_versions": {...},
        "config": {...},
        "data_counts": {"convergence_p3_x.csv": 100, ...},
        "checksum": {"algorithm": "sha256", "value": "..."}
    }

The checksum covers every file in the directory except the manifest,
hashed in sorted path order.
"""

import hashlib
import json
import platform
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Union
import logging

logger = logging.getLogger(__name__)

RUN_FORMAT = "resr-motion-run"
RUN_FORMAT_VERSION = "1.0.0"
MANIFEST_FILENAME = "manifest.json"


@dataclass
class SoftwareVersions:
    """Versions of the packages that produced a run."""
    resr_motion: str
    numpy: str
    scipy: str
    pandas: str
    python: str


@dataclass
class RunManifest:
    """Manifest describing the files written by one command run."""
    format_id: str
    format_version: str
    created_at: str
    command: str
    software_versions: SoftwareVersions
    config: Dict[str, Any] = field(default_factory=dict)
    data_counts: Dict[str, int] = field(default_factory=dict)
    checksum: Optional[Dict[str, str]] = None

    def to_dict(self) -> Dict:
        return asdict(self)

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, default=str)

    def save(self, output_dir: Union[str, Path]) -> str:
        """Save manifest into ``output_dir``."""
        output_path = Path(output_dir) / MANIFEST_FILENAME
        with open(output_path, "w") as f:
            f.write(self.to_json() + "\n")
        return str(output_path)

    @classmethod
    def from_dict(cls, data: Dict) -> "RunManifest":
        sw_versions = data.get("software_versions") or {}
        if isinstance(sw_versions, dict):
            sw_versions = SoftwareVersions(
                resr_motion=sw_versions.get("resr_motion", ""),
                numpy=sw_versions.get("numpy", ""),
                scipy=sw_versions.get("scipy", ""),
                pandas=sw_versions.get("pandas", ""),
                python=sw_versions.get("python", ""),
            )
        return cls(
            format_id=data.get("format_id", ""),
            format_version=data.get("format_version", ""),
            created_at=data.get("created_at", ""),
            command=data.get("command", ""),
            software_versions=sw_versions,
            config=data.get("config", {}),
            data_counts=data.get("data_counts", {}),
            checksum=data.get("checksum"),
        )

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "RunManifest":
        """Load from a manifest file or the directory holding one."""
        manifest_path = Path(path)
        if manifest_path.is_dir():
            manifest_path = manifest_path / MANIFEST_FILENAME
        with open(manifest_path, "r") as f:
            return cls.from_dict(json.load(f))

    def validate(self) -> List[str]:
        """Return a list of problems; empty when the manifest is well formed."""
        errors = []
        if not self.format_version:
            errors.append("Missing format_version")
        if self.format_id != RUN_FORMAT:
            errors.append(f"Invalid format_id: {self.format_id}")
        if not self.created_at:
            errors.append("Missing created_at timestamp")
        if not self.command:
            errors.append("Missing command")
        if not self.software_versions or not self.software_versions.resr_motion:
            errors.append("Missing software_versions")
        for name, count in self.data_counts.items():
            if not isinstance(count, int) or count < 0:
                errors.append(f"Invalid record count for {name}: {count}")
        return errors


def get_software_versions() -> SoftwareVersions:
    """Get current software versions."""
    import numpy
    import pandas
    import scipy

    try:
        from resr_motion import __version__ as package_version
    except (ImportError, AttributeError):
        package_version = "unknown"

    return SoftwareVersions(
        resr_motion=package_version,
        numpy=numpy.__version__,
        scipy=scipy.__version__,
        pandas=pandas.__version__,
        python=platform.python_version(),
    )


def calculate_checksum(output_dir: Union[str, Path], algorithm: str = "sha256") -> Dict[str, str]:
    """Hash every file under ``output_dir`` except the manifest."""
    hasher = hashlib.new(algorithm)
    root = Path(output_dir)
    for data_file in sorted(p for p in root.rglob("*") if p.is_file()):
        if data_file.name == MANIFEST_FILENAME:
            continue
        hasher.update(data_file.relative_to(root).as_posix().encode("utf-8"))
        with open(data_file, "rb") as f:
            hasher.update(f.read())
    return {"algorithm": algorithm, "value": hasher.hexdigest()}


def verify_checksum(manifest: RunManifest, output_dir: Union[str, Path]) -> bool:
    """Verify the files in ``output_dir`` against the manifest checksum."""
    if not manifest.checksum:
        logger.warning("Manifest does not contain checksum")
        return True
    algorithm = manifest.checksum.get("algorithm", "sha256")
    expected = manifest.checksum.get("value", "")
    return calculate_checksum(output_dir, algorithm)["value"] == expected


def generate_run_manifest(
    output_dir: Union[str, Path],
    command: str,
    config: Dict[str, Any],
    data_counts: Dict[str, int],
) -> RunManifest:
    """Build the manifest for files already written to ``output_dir``."""
    return RunManifest(
        format_id=RUN_FORMAT,
        format_version=RUN_FORMAT_VERSION,
        created_at=datetime.now(timezone.utc).isoformat(),
        command=command,
        software_versions=get_software_versions(),
        config=config,
        data_counts=dict(sorted(data_counts.items())),
        checksum=calculate_checksum(output_dir),
    )


def check_run_directory(directory: Union[str, Path]) -> List[str]:
    """Problems with the run manifest in ``directory``.

    A directory without a manifest has nothing to check and yields no
    problems. Otherwise the manifest must load, validate, and match the
    files currently in the directory.
    """
    root = Path(directory)
    manifest_path = root / MANIFEST_FILENAME
    if not manifest_path.is_file():
        return []
    try:
        manifest = RunManifest.from_file(manifest_path)
    except (OSError, ValueError, TypeError, AttributeError) as e:
        return [f"Unreadable run manifest {manifest_path}: {e}"]
    problems = manifest.validate()
    if not problems and not verify_checksum(manifest, root):
        problems.append(
            f"Files in {root} do not match the checksum written by the "
            f"{manifest.command!r} run on {manifest.created_at}"
        )
    return problems
