"""Catalog generation strategies: how architectures and hyperparameters are proposed.

A strategy pairs an architecture proposer with a hyperparameter proposer:

| strategy | architectures | hyperparameters |
| -------- | ------------- | --------------- |
| agebo    | aging evolution | Bayesian optimization |
| age      | aging evolution | fixed |
| bo       | fixed | Bayesian optimization |
| random   | random | random |
| baseline | fixed | fixed |
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..configs import SearchConfig
from ..logger import DeuqLogger
from ..models.records import HpConfig
from ..nn.graph import LayerNode
from ..space.arch import ArchGenome, check_genome, fixed_genome, mutate, random_genome
from ..space.hp import sample_hp_batch
from .population import Population, select_parent
from .surrogate import Surrogate, bo_ask, bo_tell

DEFAULT_FIXED_LAYERS: tuple[LayerNode, ...] = (
    LayerNode.dense(208, "relu"),
    LayerNode.dense(208, "relu"),
)
"""Hand-tuned architecture used when no `fixed_genome` is configured."""


@dataclass(frozen=True)
class Proposal:
    """A genome to train and the population member it was mutated from, if any."""

    genome: ArchGenome
    parent_id: int | None = None


class SearchStrategy:
    """Proposes (genome, hyperparameters) pairs for a search.

    Args:
        cfg: search settings.
        rng: the search's random generator, shared by every proposal.
    """

    evolve: bool = False
    random_arch: bool = False
    optimize_hp: bool = False
    random_hp: bool = False

    def __init__(self, cfg: SearchConfig, rng: np.random.Generator):
        """Strategy for `cfg`."""
        self.cfg = cfg
        self.rng = rng
        self.surrogate = Surrogate(cfg.hp, rng_seed=cfg.rng_seed) if self.optimize_hp else None
        self._fixed_genome = self._resolve_fixed_genome()

    @property
    def name(self) -> str:
        """Strategy name."""
        return next(k for k, v in STRATEGIES.items() if v is type(self))

    def _resolve_fixed_genome(self) -> ArchGenome:
        if self.cfg.fixed_genome is not None:
            return check_genome(self.cfg.fixed_genome, self.cfg.arch)
        if self.evolve or self.random_arch:
            return ()
        layers = DEFAULT_FIXED_LAYERS[: self.cfg.arch.num_variable_nodes]
        return fixed_genome(self.cfg.arch, layers)

    def initial_genomes(self, n: int) -> list[Proposal]:
        """Architectures of the first batch of submissions."""
        if self.evolve or self.random_arch:
            return [Proposal(random_genome(self.cfg.arch, self.rng)) for _ in range(n)]
        return [Proposal(self._fixed_genome) for _ in range(n)]

    def initial_hps(self, n: int) -> list[HpConfig]:
        """Hyperparameters of the first batch of submissions."""
        if self.optimize_hp or self.random_hp:
            return sample_hp_batch(self.cfg.hp, self.rng, n)
        return [self.cfg.fixed_hp] * n

    def child_genome(self, population: Population) -> Proposal:
        """Architecture of the next submission."""
        if self.evolve:
            if population.full:
                parent = select_parent(population, self.cfg.sample_size, self.rng)
                return Proposal(mutate(parent.genome, self.cfg.arch, self.rng), parent.model_id)
            return Proposal(random_genome(self.cfg.arch, self.rng))
        return self.initial_genomes(1)[0]

    def next_hps(self, n: int) -> list[HpConfig]:
        """Hyperparameters of the next `n` submissions."""
        if self.optimize_hp:
            return bo_ask(self.surrogate, self.cfg.hp, n, self.cfg.kappa, self.rng)
        return self.initial_hps(n)

    def tell(self, hp: HpConfig, score: float) -> None:
        """Feed a finished training back to the hyperparameter optimizer."""
        if self.surrogate is not None:
            bo_tell(self.surrogate, hp, score)


class AgEBOStrategy(SearchStrategy):
    """Aging evolution over architectures with Bayesian optimization of hyperparameters."""

    evolve = True
    optimize_hp = True


class AgEStrategy(SearchStrategy):
    """Aging evolution over architectures with fixed hyperparameters."""

    evolve = True


class BOStrategy(SearchStrategy):
    """Bayesian optimization of the hyperparameters of a fixed architecture."""

    optimize_hp = True


class RandomStrategy(SearchStrategy):
    """Uniform random sampling of both spaces."""

    random_arch = True
    random_hp = True


class BaselineStrategy(SearchStrategy):
    """One fixed architecture and hyperparameters; models differ only by their seed."""


STRATEGIES: dict[str, type[SearchStrategy]] = {
    "agebo": AgEBOStrategy,
    "age": AgEStrategy,
    "bo": BOStrategy,
    "random": RandomStrategy,
    "baseline": BaselineStrategy,
}


def make_strategy(cfg: SearchConfig, rng: np.random.Generator) -> SearchStrategy:
    """Strategy named by `cfg.strategy`."""
    strategy = STRATEGIES[cfg.strategy](cfg, rng)
    DeuqLogger.debug(f"Using search strategy {cfg.strategy}.")
    return strategy
