"""Mini-batch training of one network with checkpointing on the validation NLL."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import TYPE_CHECKING, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..errors import NonFiniteValueError, TrainingError
from ..logger import DeuqLogger
from ..models.records import HpConfig, OptimizerName
from ..params import LR_LIMITS, PATIENCE_EARLY_STOP_LIMITS, PATIENCE_REDUCE_LR_LIMITS
from ..utils.time import Stopwatch
from .forward import GaussianPrediction, forward, loss_and_gradients
from .graph import NetworkGraph
from .loss import gaussian_nll
from .optimizers import OptimizerState, optimizer_step
from .schedule import PlateauSchedule
from .weights import ModelWeights, init_weights

if TYPE_CHECKING:
    from ..configs import ArchSpaceConfig
    from ..data.splits import DataSplits

HistoryRow = tuple[int, float, float]


class TrainConfig(BaseModel):
    """Settings of one training run."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    learning_rate: float = Field(ge=LR_LIMITS[0], le=LR_LIMITS[1])
    batch_size: int = Field(ge=1)
    optimizer: OptimizerName
    patience_reduce_lr: int = Field(
        ge=PATIENCE_REDUCE_LR_LIMITS[0], le=PATIENCE_REDUCE_LR_LIMITS[1]
    )
    patience_early_stop: int = Field(
        ge=PATIENCE_EARLY_STOP_LIMITS[0], le=PATIENCE_EARLY_STOP_LIMITS[1]
    )
    epochs: int = Field(ge=1)
    rng_seed: int

    @classmethod
    def from_hp(cls, hp: HpConfig, epochs: int, rng_seed: int) -> TrainConfig:
        """Training settings of a hyperparameter configuration."""
        return cls(
            learning_rate=hp.lr,
            batch_size=hp.batch_size,
            optimizer=hp.optimizer,
            patience_reduce_lr=hp.patience_reduce_lr,
            patience_early_stop=hp.patience_early_stop,
            epochs=epochs,
            rng_seed=rng_seed,
        )


@dataclass(frozen=True)
class TrainedModel:
    """Result of training one (genome, hyperparameters) pair.

    Attributes:
        genome: architecture genome.
        hp: training hyperparameters.
        graph: decoded network.
        weights: checkpoint with the lowest validation NLL.
        valid_nll: lowest validation NLL (standardized units); +inf when training failed.
        train_history: (epoch, train loss, validation loss) per epoch; epoch 0 holds the losses
            of the initial weights.
        status: "ok" or "failed".
        rng_seed: seed of weight initialization and shuffling.
        wall_seconds: training time.
    """

    genome: tuple[int, ...]
    hp: HpConfig
    graph: NetworkGraph
    weights: ModelWeights
    valid_nll: float
    train_history: tuple[HistoryRow, ...]
    status: Literal["ok", "failed"]
    rng_seed: int
    wall_seconds: float = 0.0

    @property
    def ok(self) -> bool:
        """True when training finished with a finite validation NLL."""
        return self.status == "ok"

    def predict(self, x: np.ndarray) -> GaussianPrediction:
        """Predictions of the checkpointed weights."""
        return forward(self.graph, self.weights, x)


def _epoch(
    graph: NetworkGraph,
    weights: ModelWeights,
    state: OptimizerState,
    x: np.ndarray,
    y: np.ndarray,
    batch_size: int,
    optimizer: str,
    lr: float,
    rng: np.random.Generator,
) -> tuple[ModelWeights, OptimizerState, float]:
    n = x.shape[0]
    order = rng.permutation(n)
    total = 0.0
    for start in range(0, n, batch_size):
        idx = order[start : start + batch_size]
        loss, grads = loss_and_gradients(graph, weights, x[idx], y[idx])
        weights, state = optimizer_step(weights, grads, state, optimizer, lr)
        total += loss * len(idx)
    if not weights.is_finite():
        msg = "Weights became non-finite."
        raise TrainingError(msg)
    return weights, state, total / n


def _nll(graph: NetworkGraph, weights: ModelWeights, x: np.ndarray, y: np.ndarray) -> float:
    prediction = forward(graph, weights, x)
    return gaussian_nll(prediction.mu, prediction.var, y.reshape(prediction.mu.shape))


def fit(
    graph: NetworkGraph,
    config: TrainConfig,
    x_train: np.ndarray,
    y_train: np.ndarray,
    x_valid: np.ndarray,
    y_valid: np.ndarray,
) -> tuple[ModelWeights, float, list[HistoryRow], bool]:
    """Train a network from a fresh initialization.

    Returns:
        The checkpoint weights, their validation NLL, the history and whether training
        finished without non-finite values.
    """
    rng = np.random.default_rng(config.rng_seed)
    weights = init_weights(graph, rng)
    y_train = y_train.reshape(x_train.shape[0], -1)
    y_valid = y_valid.reshape(x_valid.shape[0], -1)
    batch_size = min(config.batch_size, x_train.shape[0])
    schedule = PlateauSchedule(
        lr=config.learning_rate,
        patience_reduce_lr=config.patience_reduce_lr,
        patience_early_stop=config.patience_early_stop,
    )
    best, best_nll = weights, math.inf
    history: list[HistoryRow] = []
    state = OptimizerState()
    with np.errstate(all="ignore"):
        try:
            losses = (
                _nll(graph, weights, x_train, y_train),
                _nll(graph, weights, x_valid, y_valid),
            )
            for epoch in range(config.epochs + 1):
                if epoch > 0:
                    weights, state, train_loss = _epoch(
                        graph,
                        weights,
                        state,
                        x_train,
                        y_train,
                        batch_size,
                        config.optimizer,
                        schedule.lr,
                        rng,
                    )
                    losses = (train_loss, _nll(graph, weights, x_valid, y_valid))
                history.append((epoch, *losses))
                step = schedule.step(losses[1])
                DeuqLogger.debug(
                    f"epoch {epoch}: train {losses[0]:.5f} valid {losses[1]:.5f} lr {step.lr:.2e}"
                )
                if step.new_best:
                    best, best_nll = weights, losses[1]
                if step.stop:
                    break
        except (NonFiniteValueError, TrainingError) as err:
            DeuqLogger.warning(f"Training failed after {len(history)} epochs: {err}")
            return best, math.inf, history, False
    return best, best_nll, history, True


def train(
    genome: Sequence[int],
    hp: HpConfig,
    splits: DataSplits,
    rng_seed: int,
    arch_cfg: ArchSpaceConfig,
    epochs: int,
) -> TrainedModel:
    """Decode a genome and train it on standardized splits.

    A non-finite loss or weight ends training; the model is returned with status "failed" and
    `valid_nll=inf` so a search can carry on.

    Args:
        genome: architecture genome valid for `arch_cfg`.
        hp: training hyperparameters.
        splits: standardized train and validation data.
        rng_seed: seed of weight initialization and per-epoch shuffling.
        arch_cfg: architecture space the genome belongs to.
        epochs: maximum number of epochs.
    """
    from ..space.arch import decode

    watch = Stopwatch()
    graph = decode(genome, arch_cfg, splits.input_dim, splits.output_dim)
    graph.log()
    config = TrainConfig.from_hp(hp, epochs=epochs, rng_seed=rng_seed)
    weights, valid_nll, history, finished = fit(
        graph,
        config,
        splits.train.x,
        splits.train.y,
        splits.valid.x,
        splits.valid.y,
    )
    return TrainedModel(
        genome=tuple(int(v) for v in genome),
        hp=hp,
        graph=graph,
        weights=weights,
        valid_nll=valid_nll,
        train_history=tuple(history),
        status="ok" if finished else "failed",
        rng_seed=rng_seed,
        wall_seconds=watch.seconds,
    )
