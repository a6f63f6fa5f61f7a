"""Forward pass producing Gaussian predictions and the exact reverse-mode gradient."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from ..errors import ShapeMismatchError
from ..logger import DeuqLogger
from ..params import VARIANCE_FLOOR
from .activations import get_activation, softplus
from .graph import NetworkGraph
from .loss import gaussian_nll, gaussian_nll_grad
from .weights import DenseWeights, ModelWeights


@dataclass(frozen=True)
class GaussianPrediction:
    """Per-row predictive mean and variance, each of shape (n, output_dim)."""

    mu: np.ndarray
    var: np.ndarray

    def __len__(self) -> int:
        """Number of rows."""
        return self.mu.shape[0]


@dataclass
class _Trace:
    """Intermediate values kept by the forward pass for backpropagation."""

    inputs: list[np.ndarray]  # u_k, merged input of node k (index 0 unused)
    pre: list[np.ndarray | None]  # z_k for dense nodes
    outputs: list[np.ndarray]  # h_k, h_0 = x
    raw_var: np.ndarray


def _check_input(graph: NetworkGraph, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = x.reshape(-1, graph.input_dim)
    if x.ndim != 2 or x.shape[1] != graph.input_dim:  # noqa: PLR2004
        msg = f"Input layer expects {graph.input_dim} columns, got array of shape {x.shape}."
        DeuqLogger.error(msg)
        raise ShapeMismatchError(msg)
    return x


def _dense(layer: DenseWeights, h: np.ndarray) -> np.ndarray:
    return h @ layer.w + layer.b


def _run(graph: NetworkGraph, weights: ModelWeights, x: np.ndarray):
    x = _check_input(graph, x)
    weights.check_shapes(graph)
    outputs = [x]
    inputs: list[np.ndarray] = [x]
    pre: list[np.ndarray | None] = [None]
    for k, (node, layer) in enumerate(zip(graph.layers, weights.layers, strict=True), start=1):
        u = outputs[k - 1]
        for i, edge in graph.skips_into(k):
            u = u + outputs[edge.source] @ weights.skips[i]
        inputs.append(u)
        if node.kind == "dense":
            z = _dense(layer, u)
            act, _ = get_activation(node.activation)
            pre.append(z)
            outputs.append(act(z))
        else:
            pre.append(None)
            outputs.append(u)
    mu = _dense(weights.mean_head, outputs[-1])
    raw_var = _dense(weights.var_head, outputs[-1])
    var = softplus(raw_var) + VARIANCE_FLOOR
    return GaussianPrediction(mu=mu, var=var), _Trace(inputs, pre, outputs, raw_var)


def forward(graph: NetworkGraph, weights: ModelWeights, x: np.ndarray) -> GaussianPrediction:
    """Predict (mu, var) for every row of `x`.

    The variance head output is mapped through softplus and floored by `VARIANCE_FLOOR`, so
    var > 0 for all finite inputs.

    Raises:
        ShapeMismatchError: if `x` or any weight array does not fit the graph; the message names
            the offending layer.
    """
    prediction, _ = _run(graph, weights, x)
    return prediction


def loss_and_gradients(
    graph: NetworkGraph, weights: ModelWeights, x: np.ndarray, y: np.ndarray
) -> tuple[float, ModelWeights]:
    """NLL of the batch and its exact gradient with respect to every parameter."""
    prediction, trace = _run(graph, weights, x)
    y = np.asarray(y, dtype=np.float64).reshape(prediction.mu.shape)
    loss = gaussian_nll(prediction.mu, prediction.var, y)

    d_mu, d_var = gaussian_nll_grad(prediction.mu, prediction.var, y)
    d_raw = d_var * expit(trace.raw_var)
    h_last = trace.outputs[-1]
    mean_grad = DenseWeights(w=h_last.T @ d_mu, b=d_mu.sum(axis=0))
    var_grad = DenseWeights(w=h_last.T @ d_raw, b=d_raw.sum(axis=0))

    d_out = [np.zeros_like(h) for h in trace.outputs]
    d_out[-1] = d_mu @ weights.mean_head.w.T + d_raw @ weights.var_head.w.T
    layer_grads: list[DenseWeights | None] = [None] * graph.num_layers
    skip_grads: list[np.ndarray | None] = [None] * len(graph.skip_edges)

    # sources always precede targets, so d_out[k] is complete when node k is reached
    for k in range(graph.num_layers, 0, -1):
        node = graph.layers[k - 1]
        if node.kind == "dense":
            _, d_act = get_activation(node.activation)
            d_z = d_out[k] * d_act(trace.pre[k], trace.outputs[k])
            layer_grads[k - 1] = DenseWeights(w=trace.inputs[k].T @ d_z, b=d_z.sum(axis=0))
            d_u = d_z @ weights.layers[k - 1].w.T
        else:
            d_u = d_out[k]
        d_out[k - 1] = d_out[k - 1] + d_u
        for i, edge in graph.skips_into(k):
            skip_grads[i] = trace.outputs[edge.source].T @ d_u
            d_out[edge.source] = d_out[edge.source] + d_u @ weights.skips[i].T

    grads = ModelWeights(
        layers=tuple(layer_grads),
        skips=tuple(skip_grads),
        mean_head=mean_grad,
        var_head=var_grad,
    )
    return loss, grads


def gradients(
    graph: NetworkGraph, weights: ModelWeights, x: np.ndarray, y: np.ndarray
) -> ModelWeights:
    """Exact gradient of the batch NLL with respect to every parameter."""
    _, grads = loss_and_gradients(graph, weights, x, y)
    return grads
