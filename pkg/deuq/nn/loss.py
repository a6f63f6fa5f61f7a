"""Gaussian negative log-likelihood and its gradients with respect to (mu, var)."""

import numpy as np

from ..errors import NonFiniteValueError, ShapeMismatchError
from ..logger import DeuqLogger
from ..params import HALF_LOG_2PI


def _as_2d(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    return a.reshape(-1, 1) if a.ndim <= 1 else a


def _check_inputs(mu: np.ndarray, var: np.ndarray, y: np.ndarray) -> None:
    if not (mu.shape == var.shape == y.shape):
        msg = f"Prediction shapes mu {mu.shape}, var {var.shape} do not match y {y.shape}."
        DeuqLogger.error(msg)
        raise ShapeMismatchError(msg)
    if not (np.isfinite(mu).all() and np.isfinite(var).all() and np.isfinite(y).all()):
        msg = "Non-finite value in Gaussian NLL inputs."
        DeuqLogger.error(msg)
        raise NonFiniteValueError(msg)


def gaussian_nll(mu, var, y) -> float:
    """Mean over all entries of ½·ln σ² + (y−μ)²/(2σ²) + ½·ln(2π).

    Args:
        mu: predicted means, shape (n,) or (n, m).
        var: predicted variances, same shape, strictly positive.
        y: targets, same shape.
    """
    mu, var, y = _as_2d(mu), _as_2d(var), _as_2d(y)
    _check_inputs(mu, var, y)
    if (var <= 0).any():
        msg = "Gaussian NLL requires strictly positive variances."
        DeuqLogger.error(msg)
        raise NonFiniteValueError(msg)
    return float(np.mean(0.5 * np.log(var) + np.square(y - mu) / (2.0 * var)) + HALF_LOG_2PI)


def gaussian_nll_grad(mu: np.ndarray, var: np.ndarray, y: np.ndarray):
    """Gradients of `gaussian_nll` with respect to mu and var, averaged like the loss."""
    count = mu.size
    residual = mu - y
    d_mu = residual / var / count
    d_var = 0.5 * (1.0 / var - np.square(residual) / np.square(var)) / count
    return d_mu, d_var
