"""Tests for deuq.nn.train.

Run just these tests using `pytest tests/test_nn/test_train.py`
"""

import numpy as np
import pytest
from pydantic import ValidationError

from deuq import DeuqLogger
from deuq.models.records import HpConfig
from deuq.nn import TrainConfig
from deuq.nn.train import train
from deuq.space import random_genome

HP = HpConfig(
    lr=0.01, batch_size=16, optimizer="adam", patience_reduce_lr=10, patience_early_stop=20
)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_training_never_worse_than_start(request, linear_splits, small_arch, seed):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    genome = random_genome(small_arch, np.random.default_rng(seed))
    model = train(genome, HP, linear_splits, rng_seed=seed, arch_cfg=small_arch, epochs=15)
    assert model.ok
    assert model.train_history[0][0] == 0
    assert model.valid_nll <= model.train_history[0][2]
    assert model.valid_nll == min(row[2] for row in model.train_history)
    assert len(model.train_history) <= 16
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_training_is_deterministic(request, linear_splits, small_arch):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    genome = random_genome(small_arch, np.random.default_rng(5))
    first = train(genome, HP, linear_splits, rng_seed=7, arch_cfg=small_arch, epochs=5)
    second = train(genome, HP, linear_splits, rng_seed=7, arch_cfg=small_arch, epochs=5)
    assert first.valid_nll == second.valid_nll
    for a, b in zip(first.weights.parameters(), second.weights.parameters(), strict=True):
        np.testing.assert_array_equal(a, b)
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_checkpoint_predicts_its_validation_nll(request, linear_splits, small_arch):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    from deuq.nn import gaussian_nll

    genome = random_genome(small_arch, np.random.default_rng(11))
    model = train(genome, HP, linear_splits, rng_seed=3, arch_cfg=small_arch, epochs=8)
    prediction = model.predict(linear_splits.valid.x)
    nll = gaussian_nll(prediction.mu, prediction.var, linear_splits.valid.y)
    assert nll == pytest.approx(model.valid_nll, rel=1e-12)
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_train_config_limits(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    with pytest.raises(ValidationError):
        TrainConfig(
            learning_rate=1.0,
            batch_size=4,
            optimizer="sgd",
            patience_reduce_lr=10,
            patience_early_stop=20,
            epochs=3,
            rng_seed=0,
        )
    config = TrainConfig.from_hp(HP, epochs=3, rng_seed=0)
    assert config.learning_rate == HP.lr
    DeuqLogger.info(f"--Finished: {request.node.name}")
