"""Reading regression datasets from csv files."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pandas as pd

from ..configs import DatasetConfig, SplitConfig
from ..errors import DatasetReadError, DatasetShapeError
from ..logger import DeuqLogger
from ..models.tables import numeric_dataset_schema
from ..utils.models import TableValidationError, validate_df_to_model
from .splits import Dataset, DataSplits, make_splits
from .toy import toy_splits

BENCHMARK_SHAPES: dict[str, tuple[int, int]] = {
    "boston": (506, 13),
    "concrete": (1030, 8),
    "energy": (768, 8),
    "kin8nm": (8192, 8),
    "navalpropulsion": (11934, 16),
    "powerplant": (9568, 4),
    "protein": (45730, 9),
    "wine": (1599, 11),
    "yacht": (308, 6),
    "yearprediction": (515345, 90),
}
"""(rows, features) of the regression benchmark datasets, keyed by lowercase file stem."""


def _check_cells(df: pd.DataFrame, path: Path) -> None:
    """Raise on the first missing or non-numeric cell, naming its row and column."""
    for col in df.columns:
        values = pd.to_numeric(df[col], errors="coerce")
        bad = values.isna() | ~np.isfinite(values.fillna(0.0))
        if bad.any():
            row = int(np.flatnonzero(bad.to_numpy())[0])
            cell = df[col].iloc[row]
            kind = "Missing" if pd.isna(cell) else "Non-numeric"
            msg = f"{kind} value {cell!r} in {path} at row {row + 1}, column {col!r}."
            DeuqLogger.error(msg)
            raise DatasetReadError(msg)


def check_benchmark_shape(dataset: Dataset) -> None:
    """Compare a registered benchmark dataset with its known row and feature counts.

    Raises:
        DatasetShapeError: if `dataset.name` is registered and the counts differ.
    """
    expected = BENCHMARK_SHAPES.get(dataset.name.lower())
    if expected is None:
        return
    found = (len(dataset), dataset.input_dim)
    if found != expected:
        msg = f"Dataset {dataset.name} should have shape {expected}, found {found}."
        DeuqLogger.error(msg)
        raise DatasetShapeError(msg)


def load_csv(path: Path, target_column: str, name: str | None = None) -> Dataset:
    """Read a comma-separated file with a header row into a dataset.

    Every column other than `target_column` is a feature.

    Args:
        path: csv file.
        target_column: name of the target column.
        name: dataset name; defaults to the file stem.

    Raises:
        DatasetReadError: if the file is missing or unreadable, the target column is absent, or
            a cell is missing or non-numeric.
        DatasetShapeError: if there are no features, or a registered benchmark has the wrong
            shape.
    """
    path = Path(path)
    name = name or path.stem
    if not path.is_file():
        msg = f"Dataset file not found: {path}"
        DeuqLogger.error(msg)
        raise DatasetReadError(msg)
    try:
        df = pd.read_csv(path, encoding="utf-8")
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as err:
        msg = f"Could not read {path} as csv: {err}"
        DeuqLogger.error(msg)
        raise DatasetReadError(msg) from err
    if target_column not in df.columns:
        msg = f"Target column {target_column!r} not found in {path}. Columns: {list(df.columns)}"
        DeuqLogger.error(msg)
        raise DatasetReadError(msg)
    features = [c for c in df.columns if c != target_column]
    if not features:
        msg = f"{path} has no feature columns besides {target_column!r}."
        DeuqLogger.error(msg)
        raise DatasetShapeError(msg)
    _check_cells(df, path)
    try:
        df = validate_df_to_model(df, numeric_dataset_schema(list(df.columns), name), name)
    except TableValidationError as err:
        raise DatasetReadError(str(err)) from err
    dataset = Dataset(
        x=df[features].to_numpy(dtype=np.float64),
        y=df[[target_column]].to_numpy(dtype=np.float64),
        name=name,
    )
    check_benchmark_shape(dataset)
    DeuqLogger.info(f"Read {len(dataset)} rows and {dataset.input_dim} features from {path}.")
    return dataset


def load_splits(dataset: DatasetConfig, split: SplitConfig) -> DataSplits:
    """Raw (unstandardized) splits of the configured dataset."""
    if dataset.source == "toy":
        DeuqLogger.info(f"Generating toy data with seed {split.rng_seed}.")
        return toy_splits(np.random.default_rng(split.rng_seed))
    return make_splits(load_csv(Path(dataset.path), dataset.target, dataset.label), split)
