"""Ensembles: member selection, mixture prediction and architecture diversity."""

from .diversity import diversity_score
from .predict import EnsemblePrediction, ensemble_nll, predict_ensemble
from .select import (
    Ensemble,
    greedy_select,
    greedy_select_predictions,
    top_k_ids,
    top_k_select,
)

__all__ = [
    "Ensemble",
    "EnsemblePrediction",
    "diversity_score",
    "ensemble_nll",
    "greedy_select",
    "greedy_select_predictions",
    "predict_ensemble",
    "top_k_ids",
    "top_k_select",
]
