"""Model weights, their initialization and json serialization."""

from __future__ import annotations

import json
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import NonFiniteValueError, ShapeMismatchError
from ..logger import DeuqLogger
from .graph import NetworkGraph


@dataclass(frozen=True)
class DenseWeights:
    """Weight matrix `w` (fan_in x fan_out) and bias vector `b` (fan_out) of a dense layer."""

    w: np.ndarray
    b: np.ndarray

    def to_dict(self) -> dict:
        """Nested lists of python floats."""
        return {"w": self.w.tolist(), "b": self.b.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> DenseWeights:
        """Inverse of `to_dict`."""
        return cls(w=_matrix(data["w"]), b=np.asarray(data["b"], dtype=np.float64))


@dataclass(frozen=True)
class ModelWeights:
    """All trainable parameters of a `NetworkGraph`.

    Attributes:
        layers: one `DenseWeights` per dense node, None for identity nodes.
        skips: one projection matrix per skip edge, in the graph's edge order.
        mean_head: weights of the mean head.
        var_head: weights of the variance head (pre-softplus).
    """

    layers: tuple[DenseWeights | None, ...]
    skips: tuple[np.ndarray, ...]
    mean_head: DenseWeights
    var_head: DenseWeights

    def parameters(self) -> list[np.ndarray]:
        """Flat list of every parameter array in a fixed order."""
        params: list[np.ndarray] = []
        for layer in self.layers:
            if layer is not None:
                params.extend([layer.w, layer.b])
        params.extend(self.skips)
        params.extend([self.mean_head.w, self.mean_head.b, self.var_head.w, self.var_head.b])
        return params

    def with_parameters(self, params: list[np.ndarray]) -> ModelWeights:
        """New weights with the same structure holding `params` (order of `parameters()`)."""
        it = iter(params)
        layers = tuple(
            None if layer is None else DenseWeights(w=next(it), b=next(it))
            for layer in self.layers
        )
        skips = tuple(next(it) for _ in self.skips)
        mean_head = DenseWeights(w=next(it), b=next(it))
        var_head = DenseWeights(w=next(it), b=next(it))
        return ModelWeights(layers=layers, skips=skips, mean_head=mean_head, var_head=var_head)

    def map(self, fn: Callable[[np.ndarray], np.ndarray]) -> ModelWeights:
        """Apply `fn` to every parameter array."""
        return self.with_parameters([fn(p) for p in self.parameters()])

    def zeros_like(self) -> ModelWeights:
        """Weights of the same structure filled with zeros."""
        return self.map(np.zeros_like)

    @property
    def size(self) -> int:
        """Total number of scalar parameters."""
        return int(sum(p.size for p in self.parameters()))

    def is_finite(self) -> bool:
        """True when every parameter is finite."""
        return all(np.isfinite(p).all() for p in self.parameters())

    def check_shapes(self, graph: NetworkGraph) -> None:
        """Raise `ShapeMismatchError` naming the first layer whose arrays do not fit `graph`."""
        widths = graph.widths()
        if len(self.layers) != graph.num_layers or len(self.skips) != len(graph.skip_edges):
            msg = (
                f"Weights hold {len(self.layers)} layers and {len(self.skips)} skips; graph has "
                f"{graph.num_layers} layers and {len(graph.skip_edges)} skips."
            )
            DeuqLogger.error(msg)
            raise ShapeMismatchError(msg)
        for k, (node, layer) in enumerate(zip(graph.layers, self.layers, strict=True), start=1):
            if node.kind == "identity":
                if layer is not None:
                    msg = f"Layer {k} (identity) must not hold weights."
                    DeuqLogger.error(msg)
                    raise ShapeMismatchError(msg)
                continue
            _check_dense(f"layer {k} ({node})", layer, widths[k - 1], widths[k])
        for edge, proj in zip(graph.skip_edges, self.skips, strict=True):
            expected = (widths[edge.source], widths[edge.target - 1])
            if proj.shape != expected:
                msg = f"Skip {edge.source}->{edge.target} expects {expected}, got {proj.shape}."
                DeuqLogger.error(msg)
                raise ShapeMismatchError(msg)
        _check_dense("mean head", self.mean_head, widths[-1], graph.output_dim)
        _check_dense("variance head", self.var_head, widths[-1], graph.output_dim)

    def to_dict(self, graph: NetworkGraph | None = None) -> dict:
        """Serializable form `{"layers": [...], "skips": [...], "heads": {...}}`.

        Identity layers serialize as null. When `graph` is given each skip carries its
        source and target node indices.
        """
        skips = []
        for i, proj in enumerate(self.skips):
            entry: dict = {"w": proj.tolist()}
            if graph is not None:
                entry["source"] = graph.skip_edges[i].source
                entry["target"] = graph.skip_edges[i].target
            skips.append(entry)
        return {
            "layers": [None if layer is None else layer.to_dict() for layer in self.layers],
            "skips": skips,
            "heads": {"mean": self.mean_head.to_dict(), "var": self.var_head.to_dict()},
        }

    @classmethod
    def from_dict(cls, data: dict, graph: NetworkGraph | None = None) -> ModelWeights:
        """Inverse of `to_dict`; validates shapes when `graph` is given."""
        weights = cls(
            layers=tuple(
                None if layer is None else DenseWeights.from_dict(layer)
                for layer in data["layers"]
            ),
            skips=tuple(_matrix(s["w"]) for s in data["skips"]),
            mean_head=DenseWeights.from_dict(data["heads"]["mean"]),
            var_head=DenseWeights.from_dict(data["heads"]["var"]),
        )
        if graph is not None:
            weights.check_shapes(graph)
        if not weights.is_finite():
            msg = "Loaded weights contain non-finite values."
            DeuqLogger.error(msg)
            raise NonFiniteValueError(msg)
        return weights


def _matrix(rows: list) -> np.ndarray:
    return np.asarray(rows, dtype=np.float64).reshape(len(rows), -1)


def _check_dense(name: str, layer: DenseWeights | None, fan_in: int, fan_out: int) -> None:
    if layer is None or layer.w.shape != (fan_in, fan_out) or layer.b.shape != (fan_out,):
        got = None if layer is None else (layer.w.shape, layer.b.shape)
        msg = f"{name} expects weights {(fan_in, fan_out)} and bias {(fan_out,)}, got {got}."
        DeuqLogger.error(msg)
        raise ShapeMismatchError(msg)


def glorot_uniform(fan_in: int, fan_out: int, rng: np.random.Generator) -> np.ndarray:
    """Glorot/Xavier uniform matrix with limit sqrt(6 / (fan_in + fan_out))."""
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


def init_weights(graph: NetworkGraph, rng: np.random.Generator) -> ModelWeights:
    """Glorot-uniform matrices and zero biases for every layer, skip and head of `graph`."""

    def dense(fan_in: int, fan_out: int) -> DenseWeights:
        return DenseWeights(w=glorot_uniform(fan_in, fan_out, rng), b=np.zeros(fan_out))

    widths = graph.widths()
    layers = tuple(
        dense(widths[k - 1], widths[k]) if node.kind == "dense" else None
        for k, node in enumerate(graph.layers, start=1)
    )
    skips = tuple(
        glorot_uniform(widths[e.source], widths[e.target - 1], rng) for e in graph.skip_edges
    )
    return ModelWeights(
        layers=layers,
        skips=skips,
        mean_head=dense(widths[-1], graph.output_dim),
        var_head=dense(widths[-1], graph.output_dim),
    )


def write_weights(weights: ModelWeights, path: Path, graph: NetworkGraph | None = None) -> Path:
    """Write weights as json; python floats round-trip exactly through their repr."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        json.dump(weights.to_dict(graph), f, separators=(",", ":"))
    return path


def read_weights(path: Path, graph: NetworkGraph | None = None) -> ModelWeights:
    """Read weights written by `write_weights`."""
    path = Path(path)
    if not path.is_file():
        msg = f"Weights file {path} not found."
        raise FileNotFoundError(msg)
    with path.open(encoding="utf-8") as f:
        return ModelWeights.from_dict(json.load(f), graph)
