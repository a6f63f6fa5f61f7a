"""General utility functions used throughout package."""

import hashlib
import json

import numpy as np

from ..logger import DeuqLogger


class DictionaryMergeError(Exception):
    """Error raised when there is a conflict in merging two dictionaries."""


def merge_dicts(right: dict, left: dict, path: list[str] | None = None) -> dict:
    """Merges the contents of nested dict left into nested dict right.

    Raises errors in case of namespace conflicts.

    Args:
        right: dict, modified in place
        left: dict to be merged into right
        path: default None, sequence of keys to be reported in case of
            error in merging nested dictionaries
    """
    if path is None:
        path = []
    for key in left:
        if key in right:
            if isinstance(right[key], dict) and isinstance(left[key], dict):
                merge_dicts(right[key], left[key], [*path, str(key)])
            else:
                dotted = ".".join([*path, str(key)])
                msg = f"duplicate keys in source dict files: {dotted}"
                DeuqLogger.error(msg)
                raise DictionaryMergeError(msg)
        else:
            right[key] = left[key]
    return right


def override_dict(base: dict, overrides: dict) -> dict:
    """Returns a copy of base with top-level keys replaced by the non-None overrides.

    Used for command line flags, which win over the values in a config file.
    """
    merged = dict(base)
    for key, value in overrides.items():
        if value is None:
            continue
        if key in merged and merged[key] != value:
            DeuqLogger.debug(f"Overriding {key}: {merged[key]} -> {value}")
        merged[key] = value
    return merged


def dict_to_hexkey(d: dict | list) -> str:
    """Converts a json-like object to a hexdigest of the sha1 hash of its canonical json.

    Keys are sorted so that two equal dictionaries always hash the same.

    Args:
        d: dictionary or list to convert to string

    Returns:
        str: hexdigest of the sha1 hash of the object
    """
    canonical = json.dumps(d, sort_keys=True, separators=(",", ":"))
    return hashlib.sha1(canonical.encode()).hexdigest()


def derive_seed(base_seed: int, *keys: int) -> int:
    """Derives an independent 63-bit seed from a base seed and integer keys.

    Example:
        >>> derive_seed(7, 3) == derive_seed(7, 3)
        True
    """
    seq = np.random.SeedSequence([base_seed % 2**63, *keys])
    return int(seq.generate_state(1, dtype=np.uint64)[0] >> 1)
