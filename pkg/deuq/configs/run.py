"""Run configuration for deuq.

A run is described by a single configuration file (json, yaml or toml) with the sections below.
Any section can be omitted to use its defaults.

!!! Example "Toy run configuration"

    ```json
    {
        "dataset": {"source": "toy"},
        "search": {
            "total_budget": 16,
            "workers": 4,
            "epochs": 200,
            "arch": {"num_variable_nodes": 3},
            "hp": {"b_max": 32}
        },
        "k": 5,
        "output_dir": "out"
    }
    ```

Usage:

    ```python
    from deuq.configs import load_run_config

    config = load_run_config(Path("config.json"))
    config.search.population_size
    >> 10
    ```
"""

from __future__ import annotations

import math
from typing import Literal

from pydantic import Field, model_validator
from pydantic.dataclasses import dataclass

from ..models.records import HpConfig
from ..params import (
    ACTIVATIONS,
    DEFAULT_KAPPA,
    LR_LIMITS,
    MAX_SKIP_BACK,
    OPTIMIZERS,
    PATIENCE_EARLY_STOP_LIMITS,
    PATIENCE_REDUCE_LR_LIMITS,
    UNITS_CHOICES,
)
from .utils import ConfigItem

Strategy = Literal["agebo", "age", "bo", "random", "baseline"]


@dataclass
class ArchSpaceConfig(ConfigItem):
    """Architecture search space.

    Attributes:
        num_variable_nodes: number of variable nodes between input and heads (3 for the toy
            problem, 5 for benchmarks).
        units_choices: dense layer widths.
        activation_choices: dense layer activations.
        max_skip_back: number of non-consecutive predecessors a node may take a skip edge from.
    """

    num_variable_nodes: int = Field(default=3, ge=1)
    units_choices: list[int] = Field(default_factory=lambda: list(UNITS_CHOICES))
    activation_choices: list[str] = Field(default_factory=lambda: list(ACTIVATIONS))
    max_skip_back: int = Field(default=MAX_SKIP_BACK, ge=0, le=MAX_SKIP_BACK)

    @model_validator(mode="after")
    def check_choices(self):
        """Widths are positive and activations known."""
        if not self.units_choices or min(self.units_choices) < 1:
            msg = "units_choices must be a nonempty list of positive widths."
            raise ValueError(msg)
        unknown = set(self.activation_choices) - set(ACTIVATIONS)
        if not self.activation_choices or unknown:
            msg = f"activation_choices must be a nonempty subset of {ACTIVATIONS}."
            raise ValueError(msg)
        return self

    @property
    def identity_value(self) -> int:
        """Layer category that decodes to an identity node."""
        return len(self.units_choices) * len(self.activation_choices)

    @property
    def layer_cardinality(self) -> int:
        """Number of categories of a variable node, identity included."""
        return self.identity_value + 1


@dataclass
class HpSpace(ConfigItem):
    """Training hyperparameter search space.

    Attributes:
        lr_bounds: learning rate range, sampled log-uniformly.
        b_max: largest batch size (32 for the toy problem, 256 for benchmarks).
        optimizers: allowed update rules.
        patience_lr_bounds: range of `patience_reduce_lr`.
        patience_es_bounds: range of `patience_early_stop`.
    """

    lr_bounds: tuple[float, float] = LR_LIMITS
    b_max: int = Field(default=32, ge=1)
    optimizers: list[str] = Field(default_factory=lambda: list(OPTIMIZERS))
    patience_lr_bounds: tuple[int, int] = PATIENCE_REDUCE_LR_LIMITS
    patience_es_bounds: tuple[int, int] = PATIENCE_EARLY_STOP_LIMITS

    @model_validator(mode="after")
    def check_bounds(self):
        """Bounds are ordered, inside the trainable limits, and the optimizers known."""
        limits = {
            "lr_bounds": LR_LIMITS,
            "patience_lr_bounds": PATIENCE_REDUCE_LR_LIMITS,
            "patience_es_bounds": PATIENCE_EARLY_STOP_LIMITS,
        }
        for name, (limit_lo, limit_hi) in limits.items():
            lo, hi = getattr(self, name)
            if not limit_lo <= lo <= hi <= limit_hi:
                msg = f"{name} must be ordered and inside {(limit_lo, limit_hi)}, got {(lo, hi)}."
                raise ValueError(msg)
        unknown = set(self.optimizers) - set(OPTIMIZERS)
        if not self.optimizers or unknown:
            msg = f"optimizers must be a nonempty subset of {OPTIMIZERS}."
            raise ValueError(msg)
        return self

    @property
    def batch_bounds(self) -> tuple[int, int]:
        """Smallest and largest batch size."""
        return (1, self.b_max)


def _default_fixed_hp() -> HpConfig:
    return HpConfig(
        lr=1e-3,
        batch_size=16,
        optimizer="adam",
        patience_reduce_lr=20,
        patience_early_stop=30,
    )


@dataclass
class SearchConfig(ConfigItem):
    """Catalog generation settings.

    Attributes:
        population_size: aging population capacity P.
        sample_size: tournament size S.
        workers: number of trainings in flight W.
        kappa: UCB exploration weight; 0 is pure exploitation.
        total_budget: number of models to train.
        rng_seed: seed of the whole search.
        epochs: maximum training epochs per model.
        strategy: catalog generation method. `agebo` evolves architectures and optimizes
            hyperparameters jointly; `age` only evolves architectures (with `fixed_hp`); `bo` only
            optimizes hyperparameters (of `fixed_genome`); `random` samples both spaces;
            `baseline` trains `fixed_genome` with `fixed_hp` under different seeds.
        deterministic: run tasks one at a time in submission order so that a seed fully
            determines the catalog.
        fixed_hp: hyperparameters used by the `age` and `baseline` strategies.
        fixed_genome: architecture used by the `bo` and `baseline` strategies; when None, two
            dense relu layers of 208 units followed by identity nodes.
        arch: architecture search space.
        hp: hyperparameter search space.
    """

    population_size: int = Field(default=10, ge=1)
    sample_size: int = Field(default=3, ge=1)
    workers: int = Field(default=1, ge=1)
    kappa: float = Field(default=DEFAULT_KAPPA, ge=0)
    total_budget: int = Field(default=16, ge=1)
    rng_seed: int = 0
    epochs: int = Field(default=200, ge=1)
    strategy: Strategy = "agebo"
    deterministic: bool = False
    fixed_hp: HpConfig = Field(default_factory=_default_fixed_hp)
    fixed_genome: list[int] | None = None
    arch: ArchSpaceConfig = Field(default_factory=ArchSpaceConfig)
    hp: HpSpace = Field(default_factory=HpSpace)

    @model_validator(mode="after")
    def check_sizes(self):
        """S <= P, the budget covers the first round of workers and fixed_hp is trainable."""
        if self.sample_size > self.population_size:
            msg = f"sample_size {self.sample_size} exceeds population_size {self.population_size}."
            raise ValueError(msg)
        if self.total_budget < self.workers:
            msg = f"total_budget {self.total_budget} is smaller than workers {self.workers}."
            raise ValueError(msg)
        fixed = self.fixed_hp
        fixed_limits = {
            "lr": LR_LIMITS,
            "patience_reduce_lr": PATIENCE_REDUCE_LR_LIMITS,
            "patience_early_stop": PATIENCE_EARLY_STOP_LIMITS,
        }
        for name, (lo, hi) in fixed_limits.items():
            value = getattr(fixed, name)
            if not lo <= value <= hi:
                msg = f"fixed_hp.{name} must be inside {(lo, hi)}, got {value}."
                raise ValueError(msg)
        return self


@dataclass
class DatasetConfig(ConfigItem):
    """Where the data comes from.

    Attributes:
        source: `toy` for the generated sine problem, `csv` for a file.
        path: csv file, resolved relative to the config file.
        target: name of the target column of the csv file.
        name: dataset name used in reports; defaults to the file stem or `toy`.
    """

    source: Literal["toy", "csv"] = "toy"
    path: str | None = None
    target: str | None = None
    name: str | None = None

    @model_validator(mode="after")
    def check_csv_fields(self):
        """A csv dataset needs a path and a target column."""
        if self.source == "csv" and (not self.path or not self.target):
            msg = "A csv dataset needs both `path` and `target`."
            raise ValueError(msg)
        return self

    @property
    def label(self) -> str:
        """Name used in reports."""
        if self.name:
            return self.name
        if self.source == "csv" and self.path:
            return self.path.replace("\\", "/").rsplit("/", 1)[-1].rsplit(".", 1)[0]
        return "toy"


@dataclass
class SplitConfig(ConfigItem):
    """Train/valid/test fractions of a csv dataset.

    The toy problem has fixed splits and only uses `rng_seed`.
    """

    train: float = Field(default=0.8, gt=0)
    valid: float = Field(default=0.1, gt=0)
    test: float = Field(default=0.1, gt=0)
    rng_seed: int = 0

    @model_validator(mode="after")
    def check_sum(self):
        """Fractions sum to 1."""
        if not math.isclose(self.train + self.valid + self.test, 1.0, abs_tol=1e-9):
            msg = "Split fractions must sum to 1."
            raise ValueError(msg)
        return self


@dataclass
class RunConfig(ConfigItem):
    """Configuration of a complete run.

    Attributes:
        dataset: data source.
        split: data splitting.
        search: catalog generation.
        k: number of unique ensemble members targeted.
        selection: `greedy` or `topk`.
        output_dir: directory for the catalog, manifests, reports and logs.
    """

    dataset: DatasetConfig = Field(default_factory=DatasetConfig)
    split: SplitConfig = Field(default_factory=SplitConfig)
    search: SearchConfig = Field(default_factory=SearchConfig)
    k: int = Field(default=5, ge=1)
    selection: Literal["greedy", "topk"] = "greedy"
    output_dir: str = "out"
