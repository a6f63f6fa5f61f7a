"""Feed-forward mean/variance networks: forward pass, gradients, optimizers and training."""

from .forward import GaussianPrediction, forward, gradients, loss_and_gradients
from .graph import LayerNode, NetworkGraph, SkipEdge
from .loss import gaussian_nll, gaussian_nll_grad
from .optimizers import OptimizerState, optimizer_step
from .schedule import PlateauSchedule
from .train import TrainConfig, TrainedModel, fit, train
from .weights import DenseWeights, ModelWeights, init_weights, read_weights, write_weights

__all__ = [
    "DenseWeights",
    "GaussianPrediction",
    "LayerNode",
    "ModelWeights",
    "NetworkGraph",
    "OptimizerState",
    "PlateauSchedule",
    "SkipEdge",
    "TrainConfig",
    "TrainedModel",
    "fit",
    "forward",
    "gaussian_nll",
    "gaussian_nll_grad",
    "gradients",
    "init_weights",
    "loss_and_gradients",
    "optimizer_step",
    "read_weights",
    "write_weights",
]
