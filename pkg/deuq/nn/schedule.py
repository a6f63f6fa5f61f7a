"""Plateau learning-rate reduction and early stopping driven by the validation loss."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..params import LR_REDUCE_FACTOR, MIN_IMPROVEMENT, MIN_LEARNING_RATE


@dataclass(frozen=True)
class ScheduleStep:
    """What the trainer does after one epoch.

    Attributes:
        new_best: loss is the lowest seen so far; the weights become the checkpoint.
        improved: loss beat the previous best by more than the improvement threshold.
        lr: learning rate for the next epoch.
        stop: training ends.
    """

    new_best: bool
    improved: bool
    lr: float
    stop: bool


class PlateauSchedule:
    """Tracks validation losses epoch by epoch.

    Both patience counters count consecutive epochs without an improvement larger than
    `min_delta`. When the learning-rate counter reaches `patience_reduce_lr` the rate is
    multiplied by `factor` (never below `min_lr`) and the counter restarts; when the stop counter
    reaches `patience_early_stop` training stops.

    Example:
        >>> s = PlateauSchedule(lr=0.01, patience_reduce_lr=10, patience_early_stop=2)
        >>> [s.step(v).stop for v in [5, 4, 6, 7]]
        [False, False, False, True]
    """

    def __init__(
        self,
        lr: float,
        patience_reduce_lr: int,
        patience_early_stop: int,
        factor: float = LR_REDUCE_FACTOR,
        min_lr: float = MIN_LEARNING_RATE,
        min_delta: float = MIN_IMPROVEMENT,
    ):
        """Constructor."""
        self.lr = lr
        self.patience_reduce_lr = patience_reduce_lr
        self.patience_early_stop = patience_early_stop
        self.factor = factor
        self.min_lr = min_lr
        self.min_delta = min_delta
        self.best = math.inf
        self.lowest = math.inf
        self.wait_lr = 0
        self.wait_stop = 0

    def step(self, loss: float) -> ScheduleStep:
        """Register the validation loss of the epoch that just finished."""
        new_best = loss < self.lowest
        if new_best:
            self.lowest = loss
        improved = loss < self.best - self.min_delta
        if improved:
            self.best = loss
            self.wait_lr = 0
            self.wait_stop = 0
        else:
            self.wait_lr += 1
            self.wait_stop += 1
        if self.wait_lr >= self.patience_reduce_lr > 0:
            self.lr = max(self.lr * self.factor, self.min_lr)
            self.wait_lr = 0
        stop = self.wait_stop >= self.patience_early_stop
        return ScheduleStep(new_best=new_best, improved=improved, lr=self.lr, stop=stop)
