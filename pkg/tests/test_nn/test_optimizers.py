"""Tests for deuq.nn.optimizers and the plateau schedule.

Run just these tests using `pytest tests/test_nn/test_optimizers.py`
"""

import numpy as np
import pytest

from deuq import DeuqLogger
from deuq.errors import UnknownOptimizerError
from deuq.nn import DenseWeights, ModelWeights, OptimizerState, PlateauSchedule, optimizer_step
from deuq.params import OPTIMIZERS


def _scalar_weights(value: float) -> ModelWeights:
    """Weights whose only nonzero parameter is the mean-head weight."""
    return ModelWeights(
        layers=(),
        skips=(),
        mean_head=DenseWeights(w=np.array([[value]]), b=np.zeros(1)),
        var_head=DenseWeights(w=np.zeros((1, 1)), b=np.zeros(1)),
    )


optimizer_test_list = [
    {"optimizer": "sgd", "w": 1.0, "g": 0.5, "lr": 0.1, "answer": 0.95},
    {"optimizer": "adam", "w": 1.0, "g": 1.0, "lr": 0.001, "answer": 0.999},
    {"optimizer": "adagrad", "w": 1.0, "g": 2.0, "lr": 0.1, "answer": 0.9},
]


@pytest.mark.parametrize("case", optimizer_test_list, ids=lambda c: c["optimizer"])
def test_first_step(request, case):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    weights = _scalar_weights(case["w"])
    grads = _scalar_weights(case["g"])
    new, state = optimizer_step(weights, grads, OptimizerState(), case["optimizer"], case["lr"])
    assert new.mean_head.w[0, 0] == pytest.approx(case["answer"], abs=1e-6)
    assert state.step == 1
    DeuqLogger.info(f"--Finished: {request.node.name}")


@pytest.mark.parametrize("optimizer", OPTIMIZERS)
def test_step_descends_and_keeps_input(request, optimizer):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    weights = _scalar_weights(1.0)
    grads = _scalar_weights(1.0)
    state = OptimizerState()
    new = weights
    for _ in range(3):
        new, state = optimizer_step(new, grads, state, optimizer, 0.01)
    assert new.mean_head.w[0, 0] < 1.0
    assert weights.mean_head.w[0, 0] == 1.0
    assert state.step == 3
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_unknown_optimizer(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    weights = _scalar_weights(1.0)
    with pytest.raises(UnknownOptimizerError):
        optimizer_step(weights, weights, OptimizerState(), "lbfgs", 0.1)
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_schedule_stops_after_patience(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    schedule = PlateauSchedule(lr=0.01, patience_reduce_lr=10, patience_early_stop=2)
    steps = [schedule.step(v) for v in [5, 4, 6, 7]]
    assert [s.stop for s in steps] == [False, False, False, True]
    assert [s.new_best for s in steps] == [True, True, False, False]
    assert schedule.lowest == 4
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_schedule_reduces_learning_rate(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    schedule = PlateauSchedule(
        lr=0.01, patience_reduce_lr=2, patience_early_stop=10, factor=0.1, min_lr=1e-4
    )
    lrs = [schedule.step(v).lr for v in [1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0]]
    assert lrs == pytest.approx([0.01, 0.01, 0.001, 0.001, 1e-4, 1e-4, 1e-4])
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_schedule_small_improvement_is_not_progress(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    schedule = PlateauSchedule(lr=0.01, patience_reduce_lr=10, patience_early_stop=2)
    schedule.step(1.0)
    step = schedule.step(1.0 - 1e-6)
    assert step.new_best
    assert not step.improved
    assert schedule.step(1.0 - 2e-6).stop
    DeuqLogger.info(f"--Finished: {request.node.name}")
