"""One-dimensional sine problem with input-dependent noise and a gap between two regions.

Training data come from x in [-30, -20] with noise variance 0.25 and from x in [20, 30] with
noise variance 1. The noiseless test grid spans [-40, 40], so it covers the gap between the
regions and both outer extrapolation zones.
"""

from __future__ import annotations

import numpy as np

from .splits import Dataset, DataSplits

TOY_REGIONS: list[tuple[float, float, float]] = [(-30.0, -20.0, 0.25), (20.0, 30.0, 1.0)]
"""(x low, x high, noise variance) of each sampled region."""

TOY_POINTS_PER_REGION: int = 200
TOY_TEST_RANGE: tuple[float, float] = (-40.0, 40.0)
TOY_TEST_POINTS: int = 200
TOY_VALID_FRACTION: float = 1 / 3


def toy_function(x: np.ndarray) -> np.ndarray:
    """Noiseless target 2 sin x."""
    return 2.0 * np.sin(x)


def toy_sine_generate(rng: np.random.Generator) -> tuple[Dataset, Dataset]:
    """Noisy training data (train + valid) and the noiseless test grid."""
    xs, ys = [], []
    for lo, hi, variance in TOY_REGIONS:
        x = rng.uniform(lo, hi, TOY_POINTS_PER_REGION)
        xs.append(x)
        ys.append(toy_function(x) + rng.normal(0.0, np.sqrt(variance), TOY_POINTS_PER_REGION))
    x_test = np.linspace(*TOY_TEST_RANGE, TOY_TEST_POINTS)
    return (
        Dataset(x=np.concatenate(xs), y=np.concatenate(ys), name="toy"),
        Dataset(x=x_test, y=toy_function(x_test), name="toy"),
    )


def toy_splits(rng: np.random.Generator) -> DataSplits:
    """Toy data with a uniformly sampled third of the noisy points held out for validation."""
    train_valid, test = toy_sine_generate(rng)
    order = rng.permutation(len(train_valid))
    n_valid = int(len(train_valid) * TOY_VALID_FRACTION)
    return DataSplits(
        train=train_valid.subset(order[n_valid:]),
        valid=train_valid.subset(order[:n_valid]),
        test=test,
    )
