"""Aging population: a FIFO queue of evaluated architectures with tournament parent selection."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from ..errors import PopulationError
from ..logger import DeuqLogger
from .catalog import Catalog


@dataclass(frozen=True)
class Member:
    """An evaluated architecture in the population."""

    genome: tuple[int, ...]
    valid_nll: float
    model_id: int


class Population:
    """Holds at most `capacity` members; admitting a member into a full population evicts the
    oldest one.
    """

    def __init__(self, capacity: int):
        """Empty population."""
        if capacity < 1:
            msg = f"Population capacity must be positive, got {capacity}."
            DeuqLogger.error(msg)
            raise PopulationError(msg)
        self.capacity = capacity
        self._members: deque[Member] = deque(maxlen=capacity)

    def __len__(self) -> int:
        """Number of members."""
        return len(self._members)

    def __iter__(self) -> Iterator[Member]:
        """Members from oldest to newest."""
        return iter(self._members)

    def __getitem__(self, i: int) -> Member:
        """Member `i`, counting from the oldest."""
        return self._members[i]

    @property
    def full(self) -> bool:
        """True once the population holds `capacity` members."""
        return len(self._members) == self.capacity

    def push(self, genome, valid_nll: float, model_id: int) -> Member | None:
        """Admit a member; returns the evicted member, if any."""
        evicted = self._members[0] if self.full else None
        self._members.append(Member(tuple(int(v) for v in genome), float(valid_nll), model_id))
        return evicted

    def model_ids(self) -> list[int]:
        """Catalog ids of the members from oldest to newest."""
        return [m.model_id for m in self._members]


def select_parent(population: Population, sample_size: int, rng: np.random.Generator) -> Member:
    """Tournament: sample `sample_size` members without replacement and return the best.

    The best has the lowest validation NLL; ties go to the oldest.

    Raises:
        PopulationError: if `sample_size` exceeds the population size or is not positive.
    """
    if not 0 < sample_size <= len(population):
        msg = f"Cannot sample {sample_size} members from a population of {len(population)}."
        DeuqLogger.error(msg)
        raise PopulationError(msg)
    picked = np.sort(rng.choice(len(population), size=sample_size, replace=False))
    return min((population[int(i)] for i in picked), key=lambda m: m.valid_nll)


def replay_population(catalog: Catalog, capacity: int) -> Population:
    """Population at the end of a search, rebuilt from the catalog's completion order."""
    population = Population(capacity)
    for record in catalog:
        population.push(record.genome, record.valid_nll, record.id)
    return population
