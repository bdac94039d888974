"""Configuration management for atilde-exceptional.

Loads settings from a YAML configuration file on top of DEFAULT_CONFIG.
ATILDE_* environment variables override the file; values that fail
validation fall back to their defaults with a warning.
"""

import copy
import logging
import os
from collections.abc import Callable
from pathlib import Path
from typing import Any

from sympy import isprime

# Module logger
logger = logging.getLogger("atilde_exceptional.config")

try:
    import yaml
    YAML_AVAILABLE = True
except ImportError:
    YAML_AVAILABLE = False


VALID_FIELD_MODES = ("rational", "prime")

# Default configuration values
DEFAULT_CONFIG = {
    "field": {
        "mode": "rational",  # rational | prime
        "prime": 32003,
    },
    "search": {
        "window": 3,  # full twists searched in each direction
        "max_winding": 2,  # l bound for enumerations
        "ordering_cap": 10,  # refuse brute-force orderings above this size
    },
    "output": {
        "json_indent": 2,
        "svg_size": 480,
    },
}

# (variable, section, key, parser)
ENV_OVERRIDES: tuple[tuple[str, str, str, Callable[[str], Any]], ...] = (
    ("ATILDE_FIELD_MODE", "field", "mode", str),
    ("ATILDE_FIELD_PRIME", "field", "prime", int),
    ("ATILDE_WINDOW", "search", "window", int),
)


def _is_count(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value >= 0


def _is_positive(value: Any) -> bool:
    return _is_count(value) and value > 0


def _is_odd_prime(value: Any) -> bool:
    return _is_count(value) and value >= 3 and isprime(value)


# (section, key, check, what a valid value is)
RULES: tuple[tuple[str, str, Callable[[Any], bool], str], ...] = (
    ("field", "mode", lambda v: v in VALID_FIELD_MODES, "one of " + ", ".join(VALID_FIELD_MODES)),
    ("field", "prime", _is_odd_prime, "an odd prime"),
    ("search", "window", _is_count, "a non-negative integer"),
    ("search", "max_winding", _is_count, "a non-negative integer"),
    ("search", "ordering_cap", _is_count, "a non-negative integer"),
    ("output", "json_indent", _is_positive, "a positive integer"),
    ("output", "svg_size", _is_positive, "a positive integer"),
)


class Config:
    """Configuration manager for atilde-exceptional."""

    def __init__(self, config_file: Path | None = None):
        """Initialize configuration.

        Args:
            config_file: Path to YAML config file (optional)
        """
        self._config: dict[str, dict[str, Any]] = copy.deepcopy(DEFAULT_CONFIG)

        if config_file and config_file.exists():
            self._load_from_file(config_file)

        self._apply_env_overrides()
        self._validate_config()

    def _load_from_file(self, config_file: Path) -> None:
        if not YAML_AVAILABLE:
            logger.warning(f"PyYAML not available, cannot load config from {config_file}")
            return

        try:
            with open(config_file) as f:
                user_config = yaml.safe_load(f)
        except (OSError, yaml.YAMLError) as e:
            logger.warning(f"Failed to load config from {config_file}: {e}")
            return

        if user_config is None:
            return
        if not isinstance(user_config, dict):
            logger.warning(f"Ignoring {config_file}: top level must be a mapping")
            return
        logger.debug(f"Loaded configuration from {config_file}")
        self._merge_config(user_config)

    def _merge_config(self, user_config: dict) -> None:
        """Merge known sections key by key; unknown sections are skipped."""
        for section, values in user_config.items():
            if section not in self._config:
                logger.warning(f"Ignoring unknown config section: {section}")
            elif not isinstance(values, dict):
                logger.warning(f"Ignoring config section {section}: expected a mapping")
            else:
                self._config[section].update(values)

    def _apply_env_overrides(self) -> None:
        """Apply ATILDE_* environment variables; unparsable values are ignored."""
        for variable, section, key, parse in ENV_OVERRIDES:
            raw = os.getenv(variable)
            if not raw:
                continue
            try:
                self._config[section][key] = parse(raw)
            except ValueError:
                logger.warning(f"Ignoring {variable}={raw!r}")

    def _validate_config(self) -> None:
        """Reset invalid values to their defaults."""
        for section, key, check, expected in RULES:
            value = self._config[section].get(key)
            if not check(value):
                logger.warning(f"Rejecting {section}.{key}={value!r}: expected {expected}")
                self._config[section][key] = DEFAULT_CONFIG[section][key]

    def get(self, section: str, key: str, default: Any = None) -> Any:
        """Get configuration value.

        Args:
            section: Configuration section (e.g., 'field', 'search')
            key: Configuration key within section
            default: Default value if not found

        Returns:
            Configuration value or default
        """
        return self._config.get(section, {}).get(key, default)

    @property
    def field_mode(self) -> str:
        """Get the coefficient field mode."""
        return self.get("field", "mode")

    @property
    def field_prime(self) -> int:
        return self.get("field", "prime")

    @property
    def window(self) -> int:
        """Get the twist search window in full twists."""
        return self.get("search", "window")

    @property
    def max_winding(self) -> int:
        return self.get("search", "max_winding")

    @property
    def ordering_cap(self) -> int:
        """Get the largest collection for brute-force orderings."""
        return self.get("search", "ordering_cap")

    @property
    def json_indent(self) -> int:
        return self.get("output", "json_indent")

    @property
    def svg_size(self) -> int:
        """Get SVG canvas size in pixels."""
        return self.get("output", "svg_size")


# Global default config instance
_default_config = None


def _default_paths() -> list[Path]:
    return [
        Path.cwd() / ".atilde-exceptional.yaml",
        Path.home() / ".atilde-exceptional.yaml",
        Path("/etc/atilde-exceptional/config.yaml"),
    ]


def get_config(config_file: Path | None = None) -> Config:
    """Get configuration instance.

    An explicit file always builds a fresh instance; otherwise the first
    existing default path is used and the result is cached.

    Args:
        config_file: Optional path to config file

    Returns:
        Config instance
    """
    global _default_config

    if config_file:
        _default_config = Config(config_file)
        return _default_config

    if _default_config is None:
        found = next((p for p in _default_paths() if p.exists()), None)
        _default_config = Config(found)

    return _default_config
