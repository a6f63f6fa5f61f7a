"""Base pydantic model for serializable records."""

from __future__ import annotations

import math
from typing import Any

from pydantic import BaseModel, ConfigDict


class RecordModel(BaseModel):
    """A pydantic model for records written to json or jsonl files.

    Attributes:
        model_config (ConfigDict): forbids unknown fields and validates on assignment so a
            record read back from disk is exactly the record that was written.
    """

    model_config = ConfigDict(
        extra="forbid",
        validate_assignment=True,
        protected_namespaces=(),
    )

    @property
    def asdict(self) -> dict:
        """Model as a json-compatible dictionary."""
        return self.model_dump(mode="json")

    @property
    def fields(self) -> list[str]:
        """All fields in the record."""
        return list(self.asdict.keys())


def inf_to_none(value: float) -> float | None:
    """Json has no infinity; +inf sentinels are written as null."""
    return None if math.isinf(value) else value


def none_to_inf(value: Any) -> Any:
    """Inverse of `inf_to_none` for use in `mode="before"` validators."""
    return math.inf if value is None else value


def nan_to_none(value: float) -> float | None:
    """Unset scores (NaN) are written as null."""
    return None if math.isnan(value) else value


def none_to_nan(value: Any) -> Any:
    """Inverse of `nan_to_none` for use in `mode="before"` validators."""
    return math.nan if value is None else value
