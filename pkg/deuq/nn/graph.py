"""Network graph types: a chain of variable nodes with optional skip edges and two heads.

Node 0 is the network input and nodes 1..N are the variable nodes. Node k receives the output
of node k-1 plus the linear projection of every skip edge that targets it:

    u_k = h_{k-1} + sum_j h_j @ P_{j->k}

A dense node outputs `act(u_k @ W_k + b_k)`; an identity node outputs `u_k` unchanged. The mean
and variance heads are dense layers of width `output_dim` on top of `h_N`.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, model_validator

from ..logger import DeuqLogger
from ..params import ACTIVATIONS

MIN_SKIP_DISTANCE = 2
MAX_SKIP_DISTANCE = 4


class LayerNode(BaseModel):
    """One variable node of a network.

    Attributes:
        kind: "dense" or "identity". Identity nodes have no parameters.
        units: width of a dense node; None for identity nodes.
        activation: activation name of a dense node; None for identity nodes.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["identity", "dense"]
    units: int | None = None
    activation: str | None = None

    @model_validator(mode="after")
    def check_kind_fields(self):
        """Dense nodes need units and an activation; identity nodes take neither."""
        if self.kind == "dense":
            if self.units is None or self.units < 1:
                msg = f"Dense layer needs a positive unit count, got {self.units}."
                raise ValueError(msg)
            if self.activation not in ACTIVATIONS:
                msg = f"Unknown activation {self.activation}."
                raise ValueError(msg)
        elif self.units is not None or self.activation is not None:
            msg = "Identity layer takes no units or activation."
            raise ValueError(msg)
        return self

    @classmethod
    def dense(cls, units: int, activation: str) -> LayerNode:
        """Dense node constructor."""
        return cls(kind="dense", units=units, activation=activation)

    @classmethod
    def identity(cls) -> LayerNode:
        """Identity node constructor."""
        return cls(kind="identity")

    def __str__(self) -> str:
        """Short description, e.g. `dense(32, relu)`."""
        if self.kind == "identity":
            return "identity"
        return f"dense({self.units}, {self.activation})"


class SkipEdge(BaseModel):
    """A skip connection from node `source` into the input of node `target`.

    Every skip carries a linear projection so widths match before the elementwise addition.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    source: int
    target: int
    projection: bool = True


class NetworkGraph(BaseModel):
    """Acyclic feed-forward network with a mean head and a variance head."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    input_dim: int
    output_dim: int = 1
    layers: tuple[LayerNode, ...]
    skip_edges: tuple[SkipEdge, ...] = ()

    @model_validator(mode="after")
    def check_edges(self):
        """Skip sources precede their targets by 2 to 4 nodes and stay inside the graph."""
        if self.input_dim < 1 or self.output_dim < 1:
            msg = "input_dim and output_dim must be positive."
            raise ValueError(msg)
        n = len(self.layers)
        seen = set()
        for edge in self.skip_edges:
            distance = edge.target - edge.source
            if not (1 <= edge.target <= n and 0 <= edge.source):
                msg = f"Skip edge {edge.source}->{edge.target} outside a {n}-node graph."
                raise ValueError(msg)
            if not MIN_SKIP_DISTANCE <= distance <= MAX_SKIP_DISTANCE:
                msg = f"Skip edge {edge.source}->{edge.target} spans {distance} nodes."
                raise ValueError(msg)
            if not edge.projection:
                msg = f"Skip edge {edge.source}->{edge.target} must carry a projection."
                raise ValueError(msg)
            if (edge.source, edge.target) in seen:
                msg = f"Duplicate skip edge {edge.source}->{edge.target}."
                raise ValueError(msg)
            seen.add((edge.source, edge.target))
        return self

    @property
    def num_layers(self) -> int:
        """Number of variable nodes."""
        return len(self.layers)

    def widths(self) -> list[int]:
        """Output width of node 0 (the input) through node N."""
        widths = [self.input_dim]
        for layer in self.layers:
            widths.append(layer.units if layer.kind == "dense" else widths[-1])
        return widths

    def skips_into(self, target: int) -> list[tuple[int, SkipEdge]]:
        """(edge index, edge) pairs for every skip edge targeting node `target`."""
        return [(i, e) for i, e in enumerate(self.skip_edges) if e.target == target]

    def describe(self) -> str:
        """One-line summary for logs."""
        layers = " -> ".join(str(layer) for layer in self.layers) or "(no layers)"
        skips = ", ".join(f"{e.source}->{e.target}" for e in self.skip_edges) or "none"
        return f"in({self.input_dim}) -> {layers} -> heads({self.output_dim}); skips: {skips}"

    def log(self) -> None:
        """Write the summary to the debug log."""
        DeuqLogger.debug(f"Network: {self.describe()}")
