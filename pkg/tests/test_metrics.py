"""Tests for scores and seed sweeps in deuq.metrics.

Run just these tests using `pytest tests/test_metrics.py`
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deuq import DeuqLogger
from deuq.errors import MetricError, ShapeMismatchError
from deuq.metrics import mean_and_se, nll_score, rmse_score, score_prediction, seed_sweep

nll_test_list = [
    {"mu": [0.0], "var": [1.0], "y": [0.0], "expected": 0.9189385},
    {"mu": [2.0], "var": [1.0 / (2 * math.pi)], "y": [2.0], "expected": 0.0},
    {"mu": [0.0], "var": [1.0], "y": [1.0], "expected": 1.4189385},
    {"mu": [0.0], "var": [math.e**2], "y": [0.0], "expected": 1.9189385},
    {"mu": [0.0, 0.0], "var": [1.0, 1.0], "y": [0.0, 1.0], "expected": 1.1689385},
]


@pytest.mark.parametrize("case", nll_test_list)
def test_nll_score(request, case):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    score = nll_score(np.array(case["mu"]), np.array(case["var"]), np.array(case["y"]))
    assert score == pytest.approx(case["expected"], abs=1e-6)
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_nll_score_errors(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    with pytest.raises(MetricError):
        nll_score(np.zeros(2), np.array([1.0, 0.0]), np.zeros(2))
    with pytest.raises(MetricError):
        nll_score(np.zeros(2), np.ones(2), np.array([0.0, np.nan]))
    with pytest.raises(ShapeMismatchError):
        nll_score(np.zeros(2), np.ones(3), np.zeros(2))
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_rmse_score(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    assert rmse_score(np.array([1.0, 2.0]), np.array([1.0, 2.0])) == 0.0
    assert rmse_score(np.zeros(2), np.array([3.0, 4.0])) == pytest.approx(math.sqrt(12.5))
    with pytest.raises(MetricError):
        rmse_score(np.array([]), np.array([]))
    with pytest.raises(ShapeMismatchError):
        rmse_score(np.zeros(2), np.zeros(3))
    DeuqLogger.info(f"--Finished: {request.node.name}")


@settings(deadline=None)
@given(
    st.lists(st.floats(-100, 100), min_size=1, max_size=20),
    st.floats(0.01, 100),
)
def test_rmse_scales_with_units(values, scale):
    mu = np.array(values)
    y = mu[::-1] + 1.0
    assert rmse_score(scale * mu, scale * y) == pytest.approx(
        scale * rmse_score(mu, y), rel=1e-9, abs=1e-9
    )


def test_score_prediction(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    report = score_prediction(
        np.zeros(4), np.ones(4), np.zeros(4), dataset="toy", seed=2, model="best_single_3"
    )
    assert report.nll == pytest.approx(0.9189385, abs=1e-6)
    assert report.rmse == 0.0
    assert report.n == 4
    assert (report.dataset, report.seed, report.split, report.model) == (
        "toy",
        2,
        "test",
        "best_single_3",
    )
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_mean_and_se(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    constant = mean_and_se([1.0, 1.0, 1.0])
    assert constant.mean == 1.0
    assert constant.se == 0.0
    pair = mean_and_se([1.0, 3.0])
    assert pair.mean == pytest.approx(2.0)
    assert pair.se == pytest.approx(1.0)
    assert pair.scores == (1.0, 3.0)
    DeuqLogger.info(f"--Finished: {request.node.name}")


@pytest.mark.parametrize("scores", [[], [1.0]])
def test_mean_and_se_too_few(request, scores):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    with pytest.raises(MetricError):
        mean_and_se(scores)
    DeuqLogger.info(f"--Finished: {request.node.name}")


@settings(deadline=None)
@given(st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=12), st.randoms())
def test_mean_and_se_order_invariant(scores, random):
    shuffled = list(scores)
    random.shuffle(shuffled)
    first, second = mean_and_se(scores), mean_and_se(shuffled)
    assert second.mean == pytest.approx(first.mean, abs=1e-9)
    assert second.se == pytest.approx(first.se, abs=1e-9)


def test_seed_sweep(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    seen = []

    def run(seed: int) -> float:
        seen.append(seed)
        return float(seed)

    summary = seed_sweep(run, n_seeds=3, base_seed=10)
    assert seen == [10, 11, 12]
    assert summary.mean == pytest.approx(11.0)
    assert summary.se == pytest.approx(1.0 / math.sqrt(3))
    DeuqLogger.info(f"--Finished: {request.node.name}")
