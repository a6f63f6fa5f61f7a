"""Datasets and their seeded train/valid/test partition."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..configs import SplitConfig
from ..errors import DatasetShapeError, SplitError
from ..logger import DeuqLogger


def _as_matrix(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    return a.reshape(-1, 1) if a.ndim == 1 else a


@dataclass(frozen=True)
class Dataset:
    """Regression data: features `x` (n, d) and targets `y` (n, m)."""

    x: np.ndarray
    y: np.ndarray
    name: str = "dataset"

    def __post_init__(self):
        """Coerce to 2-D float arrays and check rows match and values are finite."""
        x, y = _as_matrix(self.x), _as_matrix(self.y)
        if x.ndim != 2 or y.ndim != 2 or x.shape[0] != y.shape[0]:  # noqa: PLR2004
            msg = f"Dataset {self.name}: x {x.shape} and y {y.shape} do not have matching rows."
            DeuqLogger.error(msg)
            raise DatasetShapeError(msg)
        if not (np.isfinite(x).all() and np.isfinite(y).all()):
            msg = f"Dataset {self.name} has missing or non-finite values."
            DeuqLogger.error(msg)
            raise DatasetShapeError(msg)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __len__(self) -> int:
        """Number of rows."""
        return self.x.shape[0]

    @property
    def input_dim(self) -> int:
        """Number of features."""
        return self.x.shape[1]

    @property
    def output_dim(self) -> int:
        """Number of targets."""
        return self.y.shape[1]

    def subset(self, idx: np.ndarray, name: str | None = None) -> Dataset:
        """Rows `idx` as a new dataset."""
        return Dataset(x=self.x[idx], y=self.y[idx], name=name or self.name)


@dataclass(frozen=True)
class DataSplits:
    """Train, validation and test datasets."""

    train: Dataset
    valid: Dataset
    test: Dataset

    def __post_init__(self):
        """All splits share input and output widths."""
        dims = {(s.input_dim, s.output_dim) for s in (self.train, self.valid, self.test)}
        if len(dims) != 1:
            msg = f"Splits have different widths: {dims}."
            DeuqLogger.error(msg)
            raise DatasetShapeError(msg)

    @property
    def input_dim(self) -> int:
        """Number of features."""
        return self.train.input_dim

    @property
    def output_dim(self) -> int:
        """Number of targets."""
        return self.train.output_dim

    @property
    def name(self) -> str:
        """Name of the dataset the splits come from."""
        return self.train.name

    def get(self, split: str) -> Dataset:
        """Split by name: train, valid or test."""
        if split not in ("train", "valid", "test"):
            msg = f"Unknown split {split}."
            DeuqLogger.error(msg)
            raise SplitError(msg)
        return getattr(self, split)


def split_sizes(n: int, split_cfg: SplitConfig) -> tuple[int, int, int]:
    """Train/valid/test sizes; valid and test are floored and the remainder goes to train.

    Raises:
        SplitError: if any split would be empty.
    """
    n_valid = math.floor(n * split_cfg.valid + 1e-9)
    n_test = math.floor(n * split_cfg.test + 1e-9)
    n_train = n - n_valid - n_test
    if min(n_train, n_valid, n_test) < 1:
        fractions = (split_cfg.train, split_cfg.valid, split_cfg.test)
        msg = f"Splitting {n} rows by {fractions} leaves a split empty."
        DeuqLogger.error(msg)
        raise SplitError(msg)
    return n_train, n_valid, n_test


def split_indices(n: int, split_cfg: SplitConfig) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Seeded shuffle of `range(n)` cut into contiguous train/valid/test blocks."""
    n_train, n_valid, _ = split_sizes(n, split_cfg)
    order = np.random.default_rng(split_cfg.rng_seed).permutation(n)
    return order[:n_train], order[n_train : n_train + n_valid], order[n_train + n_valid :]


def make_splits(dataset: Dataset, split_cfg: SplitConfig) -> DataSplits:
    """Partition a dataset into train, validation and test sets."""
    train, valid, test = split_indices(len(dataset), split_cfg)
    DeuqLogger.info(
        f"Split {dataset.name} into {len(train)} train, {len(valid)} valid, {len(test)} test rows."
    )
    return DataSplits(
        train=dataset.subset(train),
        valid=dataset.subset(valid),
        test=dataset.subset(test),
    )
