"""Architecture search space encoded as a fixed-length integer genome.

Layout: for each variable node k = 1..N, one layer category followed by one skip bit per
non-consecutive predecessor node j with 1 <= j and 2 <= k - j <= max_skip_back + 1. The link
from node k-1 to node k is the fixed backbone and carries no bit. The network input is not a
skip source.

Layer categories use the order `activation_index * len(units_choices) + units_index`; the last
category, `identity_value`, is a pass-through node.
"""

from __future__ import annotations

from collections.abc import Sequence
from functools import cache

import numpy as np

from ..configs import ArchSpaceConfig
from ..errors import GenomeError
from ..logger import DeuqLogger
from ..nn.graph import LayerNode, NetworkGraph, SkipEdge

ArchGenome = tuple[int, ...]


def skip_sources(k: int, max_skip_back: int) -> list[int]:
    """Nodes that may feed node `k` through a skip edge, nearest first."""
    return [k - d for d in range(2, max_skip_back + 2) if k - d >= 1]


@cache
def _layout(num_nodes: int, max_skip_back: int, layer_cardinality: int) -> tuple:
    cardinalities: list[int] = []
    slots: list[tuple[int, int | None]] = []  # (node, skip source or None)
    for k in range(1, num_nodes + 1):
        cardinalities.append(layer_cardinality)
        slots.append((k, None))
        for j in skip_sources(k, max_skip_back):
            cardinalities.append(2)
            slots.append((k, j))
    return tuple(cardinalities), tuple(slots)


def cardinalities(cfg: ArchSpaceConfig) -> tuple[int, ...]:
    """Number of values of every genome position."""
    return _layout(cfg.num_variable_nodes, cfg.max_skip_back, cfg.layer_cardinality)[0]


def genome_length(cfg: ArchSpaceConfig) -> int:
    """Number of genome positions.

    Example:
        >>> genome_length(ArchSpaceConfig(num_variable_nodes=5))
        11
    """
    return len(cardinalities(cfg))


def check_genome(genome: Sequence[int], cfg: ArchSpaceConfig) -> ArchGenome:
    """Return the genome as a tuple of ints if every value is inside its cardinality.

    Raises:
        GenomeError: if the length or any value is out of range.
    """
    cards = cardinalities(cfg)
    values = tuple(int(v) for v in genome)
    if len(values) != len(cards):
        msg = f"Genome has {len(values)} values, expected {len(cards)}."
        DeuqLogger.error(msg)
        raise GenomeError(msg)
    bad = [i for i, (v, c) in enumerate(zip(values, cards, strict=True)) if not 0 <= v < c]
    if bad:
        msg = f"Genome values out of range at positions {bad}: {values}."
        DeuqLogger.error(msg)
        raise GenomeError(msg)
    return values


def random_genome(cfg: ArchSpaceConfig, rng: np.random.Generator) -> ArchGenome:
    """Draw every position uniformly over its cardinality."""
    return tuple(int(v) for v in rng.integers(0, cardinalities(cfg)))


def mutate(genome: Sequence[int], cfg: ArchSpaceConfig, rng: np.random.Generator) -> ArchGenome:
    """Replace one uniformly chosen position by a different uniformly chosen value.

    Positions with a single possible value are never chosen.

    Raises:
        GenomeError: if no position can change.
    """
    values = list(check_genome(genome, cfg))
    cards = cardinalities(cfg)
    mutable = [i for i, c in enumerate(cards) if c > 1]
    if not mutable:
        msg = "Genome has no position with more than one value."
        DeuqLogger.error(msg)
        raise GenomeError(msg)
    pos = mutable[int(rng.integers(len(mutable)))]
    # draw from the c-1 other values
    new = int(rng.integers(cards[pos] - 1))
    values[pos] = new if new < values[pos] else new + 1
    return tuple(values)


def decode_layer(value: int, cfg: ArchSpaceConfig) -> LayerNode:
    """Layer node of a layer category."""
    if value == cfg.identity_value:
        return LayerNode.identity()
    activation_index, units_index = divmod(value, len(cfg.units_choices))
    return LayerNode.dense(
        units=cfg.units_choices[units_index],
        activation=cfg.activation_choices[activation_index],
    )


def encode_layer(node: LayerNode, cfg: ArchSpaceConfig) -> int:
    """Layer category of a layer node.

    Raises:
        GenomeError: if the width or activation is not in the space.
    """
    if node.kind == "identity":
        return cfg.identity_value
    if node.units not in cfg.units_choices or node.activation not in cfg.activation_choices:
        msg = f"Layer {node} is not in the architecture space."
        DeuqLogger.error(msg)
        raise GenomeError(msg)
    return cfg.activation_choices.index(node.activation) * len(
        cfg.units_choices
    ) + cfg.units_choices.index(node.units)


def decode(
    genome: Sequence[int], cfg: ArchSpaceConfig, input_dim: int, output_dim: int = 1
) -> NetworkGraph:
    """Network graph of a genome. Every in-range genome decodes."""
    values = check_genome(genome, cfg)
    _, slots = _layout(cfg.num_variable_nodes, cfg.max_skip_back, cfg.layer_cardinality)
    layers: list[LayerNode] = []
    edges: list[SkipEdge] = []
    for value, (node, source) in zip(values, slots, strict=True):
        if source is None:
            layers.append(decode_layer(value, cfg))
        elif value == 1:
            edges.append(SkipEdge(source=source, target=node))
    return NetworkGraph(
        input_dim=input_dim,
        output_dim=output_dim,
        layers=tuple(layers),
        skip_edges=tuple(edges),
    )


def fixed_genome(
    cfg: ArchSpaceConfig, layers: Sequence[LayerNode], skips: Sequence[tuple[int, int]] = ()
) -> ArchGenome:
    """Genome of the given leading layers, identity elsewhere, with the given skip edges."""
    if len(layers) > cfg.num_variable_nodes:
        msg = f"{len(layers)} layers do not fit {cfg.num_variable_nodes} variable nodes."
        DeuqLogger.error(msg)
        raise GenomeError(msg)
    _, slots = _layout(cfg.num_variable_nodes, cfg.max_skip_back, cfg.layer_cardinality)
    values = []
    for node, source in slots:
        if source is None:
            values.append(
                encode_layer(layers[node - 1], cfg) if node <= len(layers) else cfg.identity_value
            )
        else:
            values.append(int((source, node) in set(skips)))
    return tuple(values)


def embed(genome: Sequence[int]) -> np.ndarray:
    """Integer vector embedding of a genome used for diversity; the genome values themselves."""
    return np.asarray(genome, dtype=np.int64)
