"""Column standardization fitted on the training split."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import StandardizerError
from ..logger import DeuqLogger
from .splits import Dataset, DataSplits


@dataclass(frozen=True)
class ColumnScaler:
    """Per-column mean and std; columns with `mask == False` were constant and are dropped."""

    mean: np.ndarray
    std: np.ndarray
    mask: np.ndarray

    @classmethod
    def fit(cls, a: np.ndarray) -> ColumnScaler:
        """Population mean and std of every column."""
        a = np.asarray(a, dtype=np.float64)
        mean = a.mean(axis=0)
        std = a.std(axis=0)
        mask = std > 0
        return cls(mean=mean, std=np.where(mask, std, 1.0), mask=mask)

    def apply(self, a: np.ndarray) -> np.ndarray:
        """Standardize and drop constant columns."""
        a = np.asarray(a, dtype=np.float64)
        return ((a - self.mean) / self.std)[:, self.mask]

    def invert(self, a: np.ndarray) -> np.ndarray:
        """Back to original units; dropped columns come back as their constant value."""
        a = np.asarray(a, dtype=np.float64).reshape(-1, int(self.mask.sum()))
        full = np.tile(self.mean, (a.shape[0], 1))
        full[:, self.mask] = a * self.std[self.mask] + self.mean[self.mask]
        return full


@dataclass(frozen=True)
class Standardizer:
    """Scalers of the features and targets of a training split."""

    x: ColumnScaler
    y: ColumnScaler

    @property
    def y_mean(self) -> np.ndarray:
        """Target means."""
        return self.y.mean

    @property
    def y_std(self) -> np.ndarray:
        """Target standard deviations."""
        return self.y.std

    def apply(self, dataset: Dataset) -> Dataset:
        """Standardized copy of a dataset."""
        return Dataset(x=self.x.apply(dataset.x), y=self.y.apply(dataset.y), name=dataset.name)

    def invert(self, dataset: Dataset) -> Dataset:
        """Inverse of `apply`."""
        return Dataset(x=self.x.invert(dataset.x), y=self.y.invert(dataset.y), name=dataset.name)

    def apply_splits(self, splits: DataSplits) -> DataSplits:
        """Standardize every split with the training statistics."""
        return DataSplits(
            train=self.apply(splits.train),
            valid=self.apply(splits.valid),
            test=self.apply(splits.test),
        )


def fit_standardizer(train: Dataset) -> Standardizer:
    """Fit scalers on the training split.

    Constant feature columns are dropped and recorded in `x.mask`.

    Raises:
        StandardizerError: if a target column is constant or every feature column is.
    """
    x_scaler = ColumnScaler.fit(train.x)
    y_scaler = ColumnScaler.fit(train.y)
    if not y_scaler.mask.all():
        msg = f"Target of {train.name} has zero variance on the training split."
        DeuqLogger.error(msg)
        raise StandardizerError(msg)
    if not x_scaler.mask.any():
        msg = f"Every feature of {train.name} is constant on the training split."
        DeuqLogger.error(msg)
        raise StandardizerError(msg)
    dropped = np.flatnonzero(~x_scaler.mask).tolist()
    if dropped:
        DeuqLogger.warning(f"Dropping constant feature columns {dropped} of {train.name}.")
    return Standardizer(x=x_scaler, y=y_scaler)


def destandardize_prediction(
    mu_std: np.ndarray, var_std: np.ndarray, standardizer: Standardizer
) -> tuple[np.ndarray, np.ndarray]:
    """Predictions in original target units: mu * s + m and var * s**2."""
    mu_std = np.asarray(mu_std, dtype=np.float64)
    var_std = np.asarray(var_std, dtype=np.float64)
    s, m = standardizer.y_std, standardizer.y_mean
    return mu_std * s + m, var_std * np.square(s)
