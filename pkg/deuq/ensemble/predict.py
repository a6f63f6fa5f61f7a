"""Equal-weight mixture of member predictions with an aleatoric/epistemic split."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..errors import EnsembleError, ShapeMismatchError
from ..logger import DeuqLogger
from ..metrics import nll_score
from ..nn.forward import GaussianPrediction


@dataclass(frozen=True)
class EnsemblePrediction:
    """Moment-matched ensemble prediction, each array of shape (n, output_dim).

    Attributes:
        mu: mean of member means.
        var_aleatoric: mean of member variances.
        var_epistemic: sample variance of member means (1/(K-1) normalization), 0 for K=1.
        var_total: var_aleatoric + var_epistemic.
    """

    mu: np.ndarray
    var_aleatoric: np.ndarray
    var_epistemic: np.ndarray
    var_total: np.ndarray


def predict_ensemble(members: Sequence[GaussianPrediction]) -> EnsemblePrediction:
    """Combine member predictions.

    Members may repeat; a repeated member counts once per occurrence.

    Raises:
        EnsembleError: if there are no members.
        ShapeMismatchError: if members predict different shapes.
    """
    if not members:
        msg = "An ensemble needs at least one member."
        DeuqLogger.error(msg)
        raise EnsembleError(msg)
    if len({m.mu.shape for m in members} | {m.var.shape for m in members}) != 1:
        msg = "Ensemble members predict different shapes."
        DeuqLogger.error(msg)
        raise ShapeMismatchError(msg)
    mus = np.stack([m.mu for m in members])
    variances = np.stack([m.var for m in members])
    mu = mus.mean(axis=0)
    aleatoric = variances.mean(axis=0)
    if len(members) == 1:
        epistemic = np.zeros_like(mu)
    else:
        epistemic = mus.var(axis=0, ddof=1)
    return EnsemblePrediction(
        mu=mu,
        var_aleatoric=aleatoric,
        var_epistemic=epistemic,
        var_total=aleatoric + epistemic,
    )


def ensemble_nll(members: Sequence[GaussianPrediction], y: np.ndarray) -> float:
    """Gaussian NLL of the moment-matched ensemble prediction."""
    prediction = predict_ensemble(members)
    return nll_score(prediction.mu, prediction.var_total, np.reshape(y, prediction.mu.shape))
