"""Configuration utilities."""

from __future__ import annotations

from pathlib import Path

from pydantic import TypeAdapter

from ..errors import ConfigError
from ..logger import DeuqLogger
from ..utils.io_dict import load_merge_dict

SUPPORTED_CONFIG_EXTENSIONS = [".yml", ".yaml", ".json", ".toml"]


class ConfigItem:
    """Base class to add a partial dict-like interface to configuration.

    Allows use of `.items()`, `["X"]`, `.get("X")` and `.to_dict()` on configuration.

    Not to be constructed directly. To be used as a mixin for pydantic dataclasses
    representing config schema. Do not use "get", "to_dict", or "items" for key names.
    """

    def __getitem__(self, key):
        """Return the value for key."""
        return getattr(self, key)

    def items(self):
        """A set-like object providing a view on the config's items."""
        return self.__dict__.items()

    def to_dict(self) -> dict:
        """Convert the configuration to a json-compatible dictionary."""
        return TypeAdapter(type(self)).dump_python(self, mode="json")

    def get(self, key, default=None):
        """Return the value for key if key is in the configuration, else default."""
        return self.__dict__.get(key, default)

    def update(self, data: Path | list[Path] | dict):
        """Update the configuration with a dictionary of new values."""
        if not isinstance(data, dict):
            DeuqLogger.info(f"Updating configuration with {data}.")
            data = load_merge_dict(data)
        self.__dict__.update(data)
        return self

    def resolve_paths(self, base_path: Path):
        """Resolve relative `*path` fields against `base_path`."""
        base_path = Path(base_path)
        for key, value in self.__dict__.items():
            if isinstance(value, ConfigItem):
                value.resolve_paths(base_path)
            elif key.endswith("path") and isinstance(value, str) and not Path(value).is_absolute():
                setattr(self, key, str((base_path / value).resolve()))


def config_data_from_files(path: Path | list[Path]) -> dict:
    """Load and combine configuration data from one or more files.

    Nested sections may be split across files; a key defined in two files is an error.
    """
    paths = path if isinstance(path, list) else [path]
    paths = [Path(p) for p in paths]
    for p in paths:
        if not p.is_file():
            msg = f"Configuration file not found: {p}"
            DeuqLogger.error(msg)
            raise FileNotFoundError(msg)
        if p.suffix not in SUPPORTED_CONFIG_EXTENSIONS:
            msg = f"Unsupported configuration file type {p.suffix}: {p}"
            DeuqLogger.error(msg)
            raise ConfigError(msg)
    return load_merge_dict(paths)
