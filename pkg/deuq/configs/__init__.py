"""Configuration module for deuq."""

from __future__ import annotations

from pathlib import Path

from pydantic import ValidationError

from ..errors import ConfigError
from ..logger import DeuqLogger
from ..utils.utils import override_dict
from .run import (
    ArchSpaceConfig,
    DatasetConfig,
    HpSpace,
    RunConfig,
    SearchConfig,
    SplitConfig,
)
from .utils import ConfigItem, config_data_from_files

ConfigInputTypes = dict | Path | list[Path] | RunConfig

__all__ = [
    "ArchSpaceConfig",
    "ConfigItem",
    "DatasetConfig",
    "HpSpace",
    "RunConfig",
    "SearchConfig",
    "SplitConfig",
    "load_run_config",
]


def _validation_message(err: ValidationError) -> str:
    fields = []
    for e in err.errors():
        loc = ".".join(str(part) for part in e["loc"]) or "(root)"
        fields.append(f"{loc}: {e['msg']}")
    return "Invalid run configuration. " + "; ".join(fields)


def load_run_config(
    data: ConfigInputTypes | None = None, overrides: dict | None = None
) -> RunConfig:
    """Load the run configuration.

    Args:
        data: a `RunConfig`, a dictionary in the structure of a config file, a path to a
            json/yaml/toml config file, or a list of such paths. None gives the defaults.
        overrides: top-level keys (e.g. from command line flags) that replace the values from
            `data`. None values are ignored.

    Raises:
        ConfigError: if the combined data does not validate; the message lists every field.
        FileNotFoundError: if a config file does not exist.
    """
    base_path = None
    if isinstance(data, RunConfig):
        data = data.to_dict()
    elif data is None:
        data = {}
    elif isinstance(data, Path) or (
        isinstance(data, list) and all(isinstance(d, Path) for d in data)
    ):
        base_path = (data[0] if isinstance(data, list) else data).parent
        data = config_data_from_files(data)
    elif not isinstance(data, dict):
        msg = "No valid configuration data found."
        DeuqLogger.error(msg + f"\n   Found: {data}.")
        raise ConfigError(msg)

    data = override_dict(data, overrides or {})
    try:
        config = RunConfig(**data)
    except (ValidationError, TypeError) as err:
        msg = _validation_message(err) if isinstance(err, ValidationError) else str(err)
        DeuqLogger.error(msg)
        raise ConfigError(msg) from err
    if base_path is not None:
        config.resolve_paths(base_path)
    return config
