"""First-order update rules for the seven supported optimizers.

Every rule works on the flat parameter list of a `ModelWeights` and keeps its running
statistics in an `OptimizerState`; neither the weights nor the state are modified in place.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from ..errors import ShapeMismatchError, UnknownOptimizerError
from ..logger import DeuqLogger
from ..params import (
    ADADELTA_EPSILON,
    ADADELTA_RHO,
    ADAGRAD_EPSILON,
    ADAM_BETA_1,
    ADAM_BETA_2,
    ADAM_EPSILON,
    OPTIMIZERS,
    RMSPROP_EPSILON,
    RMSPROP_RHO,
)
from .weights import ModelWeights

Arrays = list[np.ndarray]


@dataclass(frozen=True)
class OptimizerState:
    """Step counter and per-parameter slot arrays (e.g. `m` and `v` for adam)."""

    step: int = 0
    slots: dict[str, tuple[np.ndarray, ...]] = field(default_factory=dict)

    def slot(self, name: str, params: Arrays) -> Arrays:
        """The named slot, zero-initialized on first use."""
        if name not in self.slots:
            return [np.zeros_like(p) for p in params]
        values = list(self.slots[name])
        if [v.shape for v in values] != [p.shape for p in params]:
            msg = f"Optimizer slot {name} does not match the parameter shapes."
            DeuqLogger.error(msg)
            raise ShapeMismatchError(msg)
        return values


def _sgd(params: Arrays, grads: Arrays, _state: OptimizerState, lr: float, _t: int):
    return [p - lr * g for p, g in zip(params, grads, strict=True)], {}


def _rmsprop(params, grads, state, lr, _t):
    v = [
        RMSPROP_RHO * v + (1.0 - RMSPROP_RHO) * np.square(g)
        for v, g in zip(state.slot("v", params), grads, strict=True)
    ]
    new = [
        p - lr * g / (np.sqrt(vi) + RMSPROP_EPSILON)
        for p, g, vi in zip(params, grads, v, strict=True)
    ]
    return new, {"v": v}


def _adagrad(params, grads, state, lr, _t):
    acc = [a + np.square(g) for a, g in zip(state.slot("acc", params), grads, strict=True)]
    new = [
        p - lr * g / (np.sqrt(a) + ADAGRAD_EPSILON)
        for p, g, a in zip(params, grads, acc, strict=True)
    ]
    return new, {"acc": acc}


def _moments(params, grads, state):
    m = [
        ADAM_BETA_1 * m + (1.0 - ADAM_BETA_1) * g
        for m, g in zip(state.slot("m", params), grads, strict=True)
    ]
    v = [
        ADAM_BETA_2 * v + (1.0 - ADAM_BETA_2) * np.square(g)
        for v, g in zip(state.slot("v", params), grads, strict=True)
    ]
    return m, v


def _adam(params, grads, state, lr, t):
    m, v = _moments(params, grads, state)
    c1, c2 = 1.0 - ADAM_BETA_1**t, 1.0 - ADAM_BETA_2**t
    new = [
        p - lr * (mi / c1) / (np.sqrt(vi / c2) + ADAM_EPSILON)
        for p, mi, vi in zip(params, m, v, strict=True)
    ]
    return new, {"m": m, "v": v}


def _nadam(params, grads, state, lr, t):
    m, v = _moments(params, grads, state)
    c1_next, c1, c2 = 1.0 - ADAM_BETA_1 ** (t + 1), 1.0 - ADAM_BETA_1**t, 1.0 - ADAM_BETA_2**t
    new = []
    for p, g, mi, vi in zip(params, grads, m, v, strict=True):
        m_bar = ADAM_BETA_1 * mi / c1_next + (1.0 - ADAM_BETA_1) * g / c1
        new.append(p - lr * m_bar / (np.sqrt(vi / c2) + ADAM_EPSILON))
    return new, {"m": m, "v": v}


def _adamax(params, grads, state, lr, t):
    m = [
        ADAM_BETA_1 * m + (1.0 - ADAM_BETA_1) * g
        for m, g in zip(state.slot("m", params), grads, strict=True)
    ]
    u = [
        np.maximum(ADAM_BETA_2 * u, np.abs(g))
        for u, g in zip(state.slot("u", params), grads, strict=True)
    ]
    step = lr / (1.0 - ADAM_BETA_1**t)
    new = [p - step * mi / (ui + ADAM_EPSILON) for p, mi, ui in zip(params, m, u, strict=True)]
    return new, {"m": m, "u": u}


def _adadelta(params, grads, state, lr, _t):
    acc_g = [
        ADADELTA_RHO * a + (1.0 - ADADELTA_RHO) * np.square(g)
        for a, g in zip(state.slot("acc_grad", params), grads, strict=True)
    ]
    deltas = [
        np.sqrt(d + ADADELTA_EPSILON) / np.sqrt(a + ADADELTA_EPSILON) * g
        for d, a, g in zip(state.slot("acc_delta", params), acc_g, grads, strict=True)
    ]
    acc_d = [
        ADADELTA_RHO * d + (1.0 - ADADELTA_RHO) * np.square(dx)
        for d, dx in zip(state.slot("acc_delta", params), deltas, strict=True)
    ]
    new = [p - lr * dx for p, dx in zip(params, deltas, strict=True)]
    return new, {"acc_grad": acc_g, "acc_delta": acc_d}


UpdateRule = Callable[[Arrays, Arrays, OptimizerState, float, int], tuple[Arrays, dict]]

UPDATE_RULES: dict[str, UpdateRule] = {
    "sgd": _sgd,
    "rmsprop": _rmsprop,
    "adagrad": _adagrad,
    "adam": _adam,
    "adadelta": _adadelta,
    "adamax": _adamax,
    "nadam": _nadam,
}


def apply_update(
    params: Arrays, grads: Arrays, state: OptimizerState, optimizer: str, lr: float
) -> tuple[Arrays, OptimizerState]:
    """Apply one update of the named rule to a list of arrays."""
    if optimizer not in UPDATE_RULES:
        msg = f"Unknown optimizer {optimizer}. Expected one of {OPTIMIZERS}."
        DeuqLogger.error(msg)
        raise UnknownOptimizerError(msg)
    if [p.shape for p in params] != [g.shape for g in grads]:
        msg = "Gradient structure does not match the weights."
        DeuqLogger.error(msg)
        raise ShapeMismatchError(msg)
    t = state.step + 1
    new_params, slots = UPDATE_RULES[optimizer](params, grads, state, lr, t)
    return new_params, OptimizerState(step=t, slots={k: tuple(v) for k, v in slots.items()})


def optimizer_step(
    weights: ModelWeights,
    grads: ModelWeights,
    state: OptimizerState,
    optimizer: str,
    lr: float,
) -> tuple[ModelWeights, OptimizerState]:
    """Apply one update of the named rule to every parameter of a network.

    Args:
        weights: current parameters.
        grads: gradient with the same structure as `weights`.
        state: running statistics from the previous step (`OptimizerState()` to start).
        optimizer: one of sgd, rmsprop, adagrad, adam, adadelta, adamax, nadam.
        lr: learning rate for this step.

    Returns:
        Updated weights and optimizer state.
    """
    new_params, new_state = apply_update(
        weights.parameters(), grads.parameters(), state, optimizer, lr
    )
    return weights.with_parameters(new_params), new_state
