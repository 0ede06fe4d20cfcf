# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Registry of exporter classes.

Usage:
    @ExporterRegistry.register
    class ConvergenceCsvExporter(CsvExporter):
        format_name = "convergence_csv"
        ...

    ExporterRegistry.export("convergence_csv", log, "out/convergence_x.csv")
"""

from pathlib import Path
from typing import Any, Dict, List, Type, Union
import logging

from .base import BaseExporter, ExportResult

logger = logging.getLogger(__name__)


class OutputError(Exception):
    """Base exception for output artifacts."""
    pass


class RegistryError(OutputError):
    """Exception raised for registry errors."""
    pass


class ExporterRegistry:
    """Registry mapping format names to exporter classes."""

    _exporters: Dict[str, Type[BaseExporter]] = {}

    @classmethod
    def register(cls, exporter_class: Type[BaseExporter]) -> Type[BaseExporter]:
        """Decorator to register an exporter class."""
        if not exporter_class.format_name:
            raise RegistryError(
                f"Exporter class {exporter_class.__name__} must define format_name"
            )
        existing = cls._exporters.get(exporter_class.format_name)
        if existing is not None and existing is not exporter_class:
            raise RegistryError(
                f"Format {exporter_class.format_name!r} already registered "
                f"by {existing.__name__}"
            )
        cls._exporters[exporter_class.format_name] = exporter_class
        logger.debug(f"Registered exporter: {exporter_class.format_name}")
        return exporter_class

    @classmethod
    def get_exporter(cls, format_name: str) -> Type[BaseExporter]:
        """Get exporter class by format name."""
        if format_name not in cls._exporters:
            raise RegistryError(f"No exporter registered for: {format_name}")
        return cls._exporters[format_name]

    @classmethod
    def get_all_format_names(cls) -> List[str]:
        """List all registered format names, sorted."""
        return sorted(cls._exporters.keys())

    @classmethod
    def export(cls, format_name: str, payload: Any, path: Union[str, Path]) -> ExportResult:
        """Instantiate the named exporter and write ``payload`` to ``path``."""
        return cls.get_exporter(format_name)().export(payload, path)

    @classmethod
    def clear(cls):
        """Clear all registered exporters (for testing)."""
        cls._exporters = {}
