"""Tests for datasets, splitting and the toy problem in deuq.data.

Run just these tests using `pytest tests/test_data/test_splits.py`
"""

import numpy as np
import pytest

from deuq import DeuqLogger
from deuq.configs import SplitConfig
from deuq.data import Dataset, make_splits, toy_sine_generate, toy_splits
from deuq.data.splits import split_indices, split_sizes
from deuq.data.toy import toy_function
from deuq.errors import DatasetShapeError, SplitError


def _dataset(n: int) -> Dataset:
    x = np.arange(2 * n, dtype=float).reshape(n, 2)
    return Dataset(x=x, y=x.sum(axis=1), name="range")


def test_split_sizes(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    assert split_sizes(10, SplitConfig()) == (8, 1, 1)
    assert split_sizes(506, SplitConfig(train=0.8, valid=0.1, test=0.1)) == (406, 50, 50)
    with pytest.raises(SplitError):
        split_sizes(5, SplitConfig())
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_make_splits_partition(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    dataset = _dataset(10)
    splits = make_splits(dataset, SplitConfig(rng_seed=4))
    assert (len(splits.train), len(splits.valid), len(splits.test)) == (8, 1, 1)
    rows = np.concatenate([splits.train.x, splits.valid.x, splits.test.x])
    assert sorted(map(tuple, rows)) == sorted(map(tuple, dataset.x))
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_split_indices_seeded(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    first = split_indices(50, SplitConfig(rng_seed=2))
    second = split_indices(50, SplitConfig(rng_seed=2))
    for a, b in zip(first, second, strict=True):
        np.testing.assert_array_equal(a, b)
    other = split_indices(50, SplitConfig(rng_seed=3))
    assert not np.array_equal(first[0], other[0])
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_dataset_validation(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    with pytest.raises(DatasetShapeError):
        Dataset(x=np.zeros((3, 2)), y=np.zeros(4))
    with pytest.raises(DatasetShapeError):
        Dataset(x=np.array([[np.nan]]), y=np.zeros(1))
    dataset = Dataset(x=np.zeros(3), y=np.zeros(3))
    assert (dataset.input_dim, dataset.output_dim, len(dataset)) == (1, 1, 3)
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_split_by_name(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    splits = make_splits(_dataset(20), SplitConfig())
    assert splits.get("valid") is splits.valid
    with pytest.raises(SplitError):
        splits.get("holdout")
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_toy_sizes(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    train_valid, test = toy_sine_generate(np.random.default_rng(0))
    assert len(train_valid) == 400
    assert len(test) == 200
    splits = toy_splits(np.random.default_rng(0))
    assert (len(splits.train), len(splits.valid), len(splits.test)) == (267, 133, 200)
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_toy_noise(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    train_valid, test = toy_sine_generate(np.random.default_rng(5))
    left = train_valid.x[:, 0] < 0
    residual = train_valid.y[left, 0] - toy_function(train_valid.x[left, 0])
    assert np.var(residual, ddof=1) == pytest.approx(0.25, rel=0.3)
    np.testing.assert_array_equal(test.y[:, 0], toy_function(test.x[:, 0]))
    assert train_valid.x.min() >= -30 and train_valid.x.max() <= 30
    assert not ((train_valid.x > -20) & (train_valid.x < 20)).any()
    DeuqLogger.info(f"--Finished: {request.node.name}")
