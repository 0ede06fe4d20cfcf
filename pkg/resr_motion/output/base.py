# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Base class for file exporters.

Every file the tool writes goes through an exporter. An exporter turns a
payload (a trajectory set, a convergence log, a benchmark table, ...) into
a flat list of records and renders those records as text.

Architecture:
    BaseExporter -> CsvExporter -> TrajectoryCsvExporter, FrontTsvExporter, ...
    BaseExporter -> JsonExporter -> DiscoveryJsonExporter, ForecastJsonExporter, ...

The base class handles:
    - Writing the rendered text to disk
    - Record counting and error collection
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Union
import logging

logger = logging.getLogger(__name__)

Record = Dict[str, Any]


@dataclass
class ExportResult:
    """Result of an export operation.

    Attributes:
        format_name: Registered exporter name (e.g., "convergence_csv")
        count: Number of records written
        file_path: Path to the output file
        success: Whether the export completed without errors
        errors: List of error messages encountered
        warnings: List of warning messages (non-fatal issues)
    """
    format_name: str
    count: int
    file_path: str
    success: bool
    errors: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)


class BaseExporter(ABC):
    """Abstract base class for exporters.

    Subclasses must implement:
        - format_name: Unique identifier for this exporter
        - file_extension: Suffix including the dot
        - collect_records(): Payload to list of records
        - render(): Records (plus metadata) to file text

    Example:
        @ExporterRegistry.register
        class FrontTsvExporter(CsvExporter):
            format_name = "front_tsv"
            file_extension = ".tsv"
            separator = "\\t"
            columns = ["complexity", "mse", "expression"]

            def collect_records(self, front):
                return [{"complexity": ..., "mse": ..., "expression": ...}]
    """

    format_name: str = ""
    file_extension: str = ""

    @abstractmethod
    def collect_records(self, payload: Any) -> List[Record]:
        """Flatten ``payload`` into records."""
        pass

    @abstractmethod
    def render(self, records: List[Record], metadata: Record) -> str:
        """Render records as the file's text."""
        pass

    def metadata(self, payload: Any) -> Record:
        """Document-level fields written alongside the records."""
        return {}

    def get_filename(self, stem: str) -> str:
        return f"{stem}{self.file_extension}"

    def export(self, payload: Any, path: Union[str, Path]) -> ExportResult:
        """Write ``payload`` to ``path``.

        Failures are reported in the returned result, not raised.
        """
        output_path = Path(path)
        try:
            records = self.collect_records(payload)
            text = self.render(records, self.metadata(payload))
            output_path.parent.mkdir(parents=True, exist_ok=True)
            with open(output_path, "w", newline="") as f:
                f.write(text)
        except Exception as e:
            logger.error(f"Export failed for {self.format_name}: {e}")
            return ExportResult(
                format_name=self.format_name,
                count=0,
                file_path=str(output_path),
                success=False,
                errors=[f"Export failed: {e}"],
            )

        logger.info(f"Wrote {len(records)} {self.format_name} records to {output_path}")
        return ExportResult(
            format_name=self.format_name,
            count=len(records),
            file_path=str(output_path),
            success=True,
        )
