"""Training hyperparameter space: sampling and the numeric encoding used by the surrogate."""

from __future__ import annotations

import math

import numpy as np

from ..configs import HpSpace
from ..errors import HpSpaceError
from ..logger import DeuqLogger
from ..models.records import HpConfig
from ..params import OPTIMIZERS

HP_ENCODING_LENGTH = 4 + len(OPTIMIZERS)


def sample_hp(space: HpSpace, rng: np.random.Generator) -> HpConfig:
    """Draw one configuration.

    lr is log-uniform on `lr_bounds`; the batch size is `round(2**v)` with v uniform on
    `[0, log2(b_max)]`, clipped to the batch bounds; the optimizer and both patiences are
    uniform.
    """
    lr_lo, lr_hi = space.lr_bounds
    lr = 10 ** rng.uniform(math.log10(lr_lo), math.log10(lr_hi))
    b_lo, b_hi = space.batch_bounds
    batch = int(np.clip(round(2 ** rng.uniform(0.0, math.log2(b_hi))), b_lo, b_hi))
    optimizer = space.optimizers[int(rng.integers(len(space.optimizers)))]
    p_lr = int(rng.integers(space.patience_lr_bounds[0], space.patience_lr_bounds[1] + 1))
    p_es = int(rng.integers(space.patience_es_bounds[0], space.patience_es_bounds[1] + 1))
    return HpConfig(
        lr=float(np.clip(lr, lr_lo, lr_hi)),
        batch_size=batch,
        optimizer=optimizer,
        patience_reduce_lr=p_lr,
        patience_early_stop=p_es,
    )


def sample_hp_batch(space: HpSpace, rng: np.random.Generator, n: int) -> list[HpConfig]:
    """`n` independent draws of `sample_hp`."""
    return [sample_hp(space, rng) for _ in range(n)]


def _unit(value: float, lo: float, hi: float) -> float:
    return 0.0 if hi == lo else (value - lo) / (hi - lo)


def in_space(hp: HpConfig, space: HpSpace) -> bool:
    """True when every value of `hp` lies in `space`."""
    lr_lo, lr_hi = space.lr_bounds
    b_lo, b_hi = space.batch_bounds
    return (
        lr_lo <= hp.lr <= lr_hi
        and b_lo <= hp.batch_size <= b_hi
        and hp.optimizer in space.optimizers
        and space.patience_lr_bounds[0] <= hp.patience_reduce_lr <= space.patience_lr_bounds[1]
        and space.patience_es_bounds[0] <= hp.patience_early_stop <= space.patience_es_bounds[1]
    )


def encode_hp(hp: HpConfig, space: HpSpace) -> np.ndarray:
    """Surrogate features of a configuration, all in [0, 1].

    `[log10 lr, log2 batch, one-hot optimizer (7), patience_reduce_lr, patience_early_stop]`,
    each continuous value scaled to its bounds. The one-hot order is the fixed optimizer order
    whatever subset the space allows.

    Raises:
        HpSpaceError: if `hp` is outside `space`.
    """
    if not in_space(hp, space):
        msg = f"Hyperparameters {hp.asdict} are outside the search space."
        DeuqLogger.error(msg)
        raise HpSpaceError(msg)
    lr_lo, lr_hi = space.lr_bounds
    one_hot = np.zeros(len(OPTIMIZERS))
    one_hot[hp.optimizer_index] = 1.0
    return np.concatenate(
        [
            [
                _unit(math.log10(hp.lr), math.log10(lr_lo), math.log10(lr_hi)),
                _unit(math.log2(hp.batch_size), 0.0, math.log2(space.b_max)),
            ],
            one_hot,
            [
                _unit(hp.patience_reduce_lr, *space.patience_lr_bounds),
                _unit(hp.patience_early_stop, *space.patience_es_bounds),
            ],
        ]
    )
