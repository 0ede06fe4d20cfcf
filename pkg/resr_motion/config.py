# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""
Runtime configuration for resr-motion.

This module provides thread-safe configuration management with support for:
- Nested sections addressed with dotted keys (``search.alpha``)
- YAML, JSON or TOML files, chosen by suffix
- Layered overrides from command-line flags

Configuration precedence (highest to lowest):
1. Command-line flags, via apply_overrides()
2. The file passed with ``--config``
3. The file named by the RESR_CONFIG environment variable
4. DEFAULT_CONFIG

Usage:
    from resr_motion import config

    config.load_config("run.toml")
    config.apply_overrides({"search.alpha": 0.5})
    alpha = config.get("search.alpha")
"""

import copy
import json
import os
import logging
import sys
from pathlib import Path
from threading import Lock
from typing import Any, Dict, Mapping, Optional, Union

import yaml

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

logger = logging.getLogger(__name__)

# Thread-safe configuration storage
_config: Dict[str, Any] = {}
_config_lock = Lock()

DEFAULT_CONFIG_PATH = "~/.config/resr-motion/config.yaml"

# Every key the tool reads, with its default
DEFAULT_CONFIG: Dict[str, Dict[str, Any]] = {
    "search": {
        "n_iterations": 100,
        "n_populations": 30,
        "population_size": 30,
        "alpha": 0.75,
        "top_k_retrieval": 10,
        "max_complexity": 30,
        "max_depth": 5,
        "parsimony": 1e-3,
        "tournament_size": 5,
        "crossover_probability": 0.2,
        "mutation_probability": 0.9,
        "optimize_probability": 1.0,
        "optimizer_restarts": 8,
        "optimizer_evaluations": 100,
        "offspring_evaluations": 30,
        "workers": 1,
        "log_every": 10,
        "seed": 0,
    },
    "retrieval": {
        "metric": "ndtw",       # ndtw, dtw or euclidean
        "band": None,           # Sakoe-Chiba band; None is unconstrained
        "bank": None,           # None uses the packaged default bank
    },
    "dynamics": {
        "duration": 5.0,
        "sample_rate": 30.0,
        "noise": 0.0,
        "grid_size": None,
        "image_size": [640, 480],
        "object_points": 4,
        "initial_state_ranges": None,
    },
    "ingestion": {
        "fps": None,            # used when a CSV has no sidecar
    },
    "pipeline": {
        "top_k_trajectories": 5,
        "forecast_steps": 150,
        "points_per_second": 2.0,
        "source_resolution": [640, 480],
        "target_resolution": None,
    },
    "benchmark": {
        "profile": "desk",
    },
    "output": {
        "out_dir": "runs",
    },
}


class ConfigError(Exception):
    """Raised when a configuration file cannot be read or a key is malformed."""
    pass


def get_config_path() -> str:
    """
    Get path to the user configuration file.

    Returns:
        str: The RESR_CONFIG environment variable, or the default location.
    """
    return os.path.expanduser(os.environ.get("RESR_CONFIG", DEFAULT_CONFIG_PATH))


def read_config_file(config_path: Union[str, Path]) -> Dict[str, Any]:
    """
    Parse a YAML, JSON or TOML file by suffix.

    Raises:
        ConfigError: If the file cannot be read or parsed.
    """
    path = Path(config_path)
    suffix = path.suffix.lower()
    try:
        if suffix == ".toml":
            with open(path, "rb") as f:
                data = tomllib.load(f)
        elif suffix == ".json":
            with open(path, "r") as f:
                data = json.load(f)
        else:
            with open(path, "r") as f:
                data = yaml.safe_load(f)
    except (OSError, ValueError, yaml.YAMLError) as e:
        raise ConfigError(f"Failed to load config file {path}: {e}") from e
    data = data or {}
    if not isinstance(data, dict):
        raise ConfigError(f"Config file {path} must hold a mapping, got {type(data).__name__}")
    return data


def merge(base: Dict[str, Any], update: Mapping[str, Any]) -> Dict[str, Any]:
    """Recursively merge ``update`` into a copy of ``base``."""
    merged = copy.deepcopy(base)
    for key, value in update.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), dict):
            merged[key] = merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def load_config(config_path: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    """
    Load configuration from DEFAULT_CONFIG, the RESR_CONFIG file and ``config_path``.

    A missing or unreadable RESR_CONFIG file falls back to defaults with a
    logged message; an explicit ``config_path`` must exist and parse.

    Returns:
        dict: The current configuration (copy of internal state).

    Raises:
        ConfigError: If ``config_path`` cannot be loaded.
    """
    global _config
    env_path = get_config_path()

    layers = []
    if os.path.exists(env_path):
        try:
            layers.append(read_config_file(env_path))
            logger.info(f"Loaded config from {env_path}")
        except ConfigError as e:
            logger.error(str(e))
    else:
        logger.debug(f"No config file at {env_path}, using defaults")
    if config_path is not None:
        layers.append(read_config_file(config_path))
        logger.info(f"Loaded config from {config_path}")

    with _config_lock:
        _config = copy.deepcopy(DEFAULT_CONFIG)
        for layer in layers:
            _config = merge(_config, layer)
        return copy.deepcopy(_config)


def _lookup(mapping: Mapping[str, Any], key: str):
    node: Any = mapping
    for part in key.split("."):
        if not isinstance(node, Mapping) or part not in node:
            raise KeyError(key)
        node = node[part]
    return node


def get(key: str, default: Any = None) -> Any:
    """
    Get a configuration value by dotted key (thread-safe).

    Args:
        key: Dotted key, e.g. ``search.alpha``, or a section name.
        default: Value to return if key is not found. If None, uses the
                 default from DEFAULT_CONFIG if available.

    Returns:
        The configuration value, or default if not found.
    """
    with _config_lock:
        source = _config or DEFAULT_CONFIG
        try:
            return copy.deepcopy(_lookup(source, key))
        except KeyError:
            pass
        if default is None:
            try:
                return copy.deepcopy(_lookup(DEFAULT_CONFIG, key))
            except KeyError:
                return None
        return default


def get_all() -> Dict[str, Any]:
    """
    Get a copy of all configuration values (thread-safe).

    Returns:
        dict: Copy of the current configuration, defaults when nothing is loaded.
    """
    with _config_lock:
        return copy.deepcopy(_config or DEFAULT_CONFIG)


def apply_overrides(overrides: Mapping[str, Any]) -> Dict[str, Any]:
    """
    Layer dotted-key values on top of the current configuration.

    ``None`` values are skipped so unset command-line flags leave the file
    values alone.

    Returns:
        dict: The updated configuration.

    Raises:
        ConfigError: If a key does not name ``section.key``.
    """
    global _config
    with _config_lock:
        current = copy.deepcopy(_config or DEFAULT_CONFIG)
        for key, value in overrides.items():
            if value is None:
                continue
            parts = key.split(".")
            if len(parts) < 2 or not all(parts):
                raise ConfigError(f"Override key must be section.key, got {key!r}")
            node = current
            for part in parts[:-1]:
                child = node.get(part)
                if not isinstance(child, dict):
                    child = {}
                    node[part] = child
                node = child
            node[parts[-1]] = copy.deepcopy(value)
        _config = current
        return copy.deepcopy(_config)


def reload_config(config_path: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    """
    Reload configuration from file, dropping earlier overrides.

    Returns:
        dict: The newly loaded configuration.
    """
    result = load_config(config_path)
    logger.info("Configuration reloaded")
    return result


def reset() -> None:
    """Forget the loaded configuration; ``get`` then answers from defaults."""
    global _config
    with _config_lock:
        _config = {}
