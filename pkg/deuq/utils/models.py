"""Helper functions for data models."""

import copy

import pandas as pd
import pandera as pa
from pandera.errors import SchemaError, SchemaErrors

from ..logger import DeuqLogger

SMALL_RECS = 5
"""Number of failure cases to log before writing them to a file instead."""


class TableValidationError(Exception):
    """Raised when a table validation fails."""


def validate_df_to_model(
    df: pd.DataFrame,
    model: type[pa.DataFrameModel] | pa.DataFrameSchema,
    name: str | None = None,
) -> pd.DataFrame:
    """Wrapper to validate a DataFrame against a pandera model or schema with better logging.

    Also copies the attrs from the input DataFrame to the validated DataFrame.

    Args:
        df: DataFrame to validate.
        model: pandera DataFrameModel class or DataFrameSchema to validate against.
        name: name used in messages. Defaults to the model's name.
    """
    name = name or getattr(model, "__name__", None) or getattr(model, "name", None) or "schema"
    attrs = copy.deepcopy(df.attrs)
    err_msg = f"Validation to {name} failed."
    try:
        model_df = model.validate(df, lazy=True)
    except SchemaErrors as e:
        DeuqLogger.error(f"{err_msg} {len(e.failure_cases)} errors.")
        DeuqLogger.error(f"Failure cases:\n{e.failure_cases.head(SMALL_RECS)}")
        raise TableValidationError(err_msg) from e
    except SchemaError as e:
        DeuqLogger.error(f"{err_msg} {e}")
        raise TableValidationError(err_msg) from e
    model_df.attrs = attrs
    return model_df
