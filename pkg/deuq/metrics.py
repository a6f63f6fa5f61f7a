"""Scores of predictions in original target units: Gaussian NLL and RMSE."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import MetricError, NonFiniteValueError, ShapeMismatchError
from .logger import DeuqLogger
from .models.records import ScoreReport
from .nn.loss import gaussian_nll


def nll_score(mu: np.ndarray, var: np.ndarray, y: np.ndarray) -> float:
    """Mean over points of ½·ln(2πσ²) + (y−μ)²/(2σ²).

    This is the training loss, so ensemble selection and reporting share one formula.

    Raises:
        MetricError: if a variance is not strictly positive or a value is not finite.
    """
    try:
        return gaussian_nll(mu, var, y)
    except NonFiniteValueError as err:
        raise MetricError(str(err)) from err


def rmse_score(mu: np.ndarray, y: np.ndarray) -> float:
    """Root mean squared error.

    Raises:
        MetricError: if there are no points.
        ShapeMismatchError: if `mu` and `y` differ in size.
    """
    mu = np.asarray(mu, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if mu.size == 0:
        msg = "RMSE of an empty set of predictions."
        DeuqLogger.error(msg)
        raise MetricError(msg)
    if mu.shape != y.shape:
        msg = f"RMSE needs matching sizes, got {mu.size} predictions and {y.size} targets."
        DeuqLogger.error(msg)
        raise ShapeMismatchError(msg)
    return float(np.sqrt(np.mean(np.square(y - mu))))


def score_prediction(
    mu: np.ndarray,
    var: np.ndarray,
    y: np.ndarray,
    dataset: str,
    seed: int,
    split: str = "test",
    model: str = "ensemble",
) -> ScoreReport:
    """NLL and RMSE of predictions already in original units."""
    return ScoreReport(
        nll=nll_score(mu, var, y),
        rmse=rmse_score(mu, y),
        n=int(np.asarray(y).shape[0]),
        dataset=dataset,
        seed=seed,
        split=split,
        model=model,
    )


@dataclass(frozen=True)
class SweepSummary:
    """Mean and standard error of a score over seeds."""

    mean: float
    se: float
    scores: tuple[float, ...]


def mean_and_se(scores: list[float] | np.ndarray) -> SweepSummary:
    """Sample mean and standard error (sample std / sqrt(n)).

    Raises:
        MetricError: with fewer than two scores.
    """
    values = np.asarray(scores, dtype=np.float64)
    if values.size < 2:  # noqa: PLR2004
        msg = f"Standard error needs at least two scores, got {values.size}."
        DeuqLogger.error(msg)
        raise MetricError(msg)
    return SweepSummary(
        mean=float(values.mean()),
        se=float(stats.sem(values, ddof=1)),
        scores=tuple(float(v) for v in values),
    )


def seed_sweep(
    run: Callable[[int], float], n_seeds: int, base_seed: int = 0
) -> SweepSummary:
    """Run `run(seed)` for `n_seeds` consecutive seeds and summarize the scores."""
    scores = []
    for seed in range(base_seed, base_seed + n_seeds):
        score = run(seed)
        DeuqLogger.info(f"Seed {seed}: {score:.5f}")
        scores.append(score)
    return mean_and_se(scores)
