"""Elementwise activation functions and their derivatives.

Each entry of `ACTIVATION_FUNCTIONS` maps an activation name to a pair
`(f, df)` where `df(z, a)` is the derivative of `f` evaluated at pre-activation `z`
with `a = f(z)` passed in so that derivatives can reuse the forward value.
"""

from collections.abc import Callable

import numpy as np
from scipy.special import erf, expit

from ..errors import GenomeError
from ..logger import DeuqLogger

SELU_ALPHA = 1.6732632423543772
SELU_SCALE = 1.0507009873554805
_SQRT_2 = np.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / np.sqrt(2.0 * np.pi)

Activation = tuple[
    Callable[[np.ndarray], np.ndarray],
    Callable[[np.ndarray, np.ndarray], np.ndarray],
]


def softplus(z: np.ndarray) -> np.ndarray:
    """Numerically stable ln(1 + e^z)."""
    return np.logaddexp(0.0, z)


def _elu(z):
    return np.where(z > 0, z, np.expm1(np.minimum(z, 0.0)))


def _d_elu(z, a):
    return np.where(z > 0, 1.0, a + 1.0)


def _gelu(z):
    return 0.5 * z * (1.0 + erf(z / _SQRT_2))


def _d_gelu(z, _a):
    return 0.5 * (1.0 + erf(z / _SQRT_2)) + z * _INV_SQRT_2PI * np.exp(-0.5 * z * z)


def _hard_sigmoid(z):
    return np.clip(0.2 * z + 0.5, 0.0, 1.0)


def _d_hard_sigmoid(z, _a):
    return np.where(np.abs(z) < 2.5, 0.2, 0.0)  # noqa: PLR2004


def _selu(z):
    return SELU_SCALE * np.where(z > 0, z, SELU_ALPHA * np.expm1(np.minimum(z, 0.0)))


def _d_selu(z, _a):
    return SELU_SCALE * np.where(z > 0, 1.0, SELU_ALPHA * np.exp(np.minimum(z, 0.0)))


def _d_sigmoid(_z, a):
    return a * (1.0 - a)


def _softsign(z):
    return z / (1.0 + np.abs(z))


def _d_softsign(z, _a):
    return 1.0 / np.square(1.0 + np.abs(z))


def _swish(z):
    return z * expit(z)


def _d_swish(z, _a):
    s = expit(z)
    return s + z * s * (1.0 - s)


ACTIVATION_FUNCTIONS: dict[str, Activation] = {
    "elu": (_elu, _d_elu),
    "gelu": (_gelu, _d_gelu),
    "hard_sigmoid": (_hard_sigmoid, _d_hard_sigmoid),
    "linear": (lambda z: z, lambda z, _a: np.ones_like(z)),
    "relu": (lambda z: np.maximum(z, 0.0), lambda z, _a: (z > 0).astype(z.dtype)),
    "selu": (_selu, _d_selu),
    "sigmoid": (expit, _d_sigmoid),
    "softplus": (softplus, lambda z, _a: expit(z)),
    "softsign": (_softsign, _d_softsign),
    "swish": (_swish, _d_swish),
    "tanh": (np.tanh, lambda _z, a: 1.0 - np.square(a)),
}


def get_activation(name: str) -> Activation:
    """Look up an activation and its derivative by name."""
    if name not in ACTIVATION_FUNCTIONS:
        msg = f"Unknown activation {name}. Expected one of {sorted(ACTIVATION_FUNCTIONS)}."
        DeuqLogger.error(msg)
        raise GenomeError(msg)
    return ACTIVATION_FUNCTIONS[name]
