"""Records shared across modules: hyperparameters, catalog rows, manifests and reports."""

from __future__ import annotations

import math
from typing import Literal

from pydantic import Field, field_serializer, field_validator

from ..params import OPTIMIZERS
from ._base.records import RecordModel, inf_to_none, nan_to_none, none_to_inf, none_to_nan

OptimizerName = Literal["sgd", "rmsprop", "adagrad", "adam", "adadelta", "adamax", "nadam"]
ModelStatus = Literal["ok", "failed"]
SelectionMethod = Literal["greedy", "topk"]


class HpConfig(RecordModel):
    """Training hyperparameters of one model.

    Attributes:
        lr: initial learning rate.
        batch_size: mini-batch size.
        optimizer: update rule name.
        patience_reduce_lr: epochs without improvement before the learning rate is halved.
        patience_early_stop: epochs without improvement before training stops.
    """

    lr: float = Field(gt=0)
    batch_size: int = Field(ge=1)
    optimizer: OptimizerName
    patience_reduce_lr: int = Field(ge=0)
    patience_early_stop: int = Field(ge=0)

    @property
    def optimizer_index(self) -> int:
        """Position of the optimizer in the fixed optimizer order."""
        return OPTIMIZERS.index(self.optimizer)

    def key(self) -> tuple:
        """Hashable identity of the configuration."""
        return (
            self.lr,
            self.batch_size,
            self.optimizer,
            self.patience_reduce_lr,
            self.patience_early_stop,
        )


class CatalogRecord(RecordModel):
    """One line of `catalog.jsonl`.

    `valid_nll` is +inf for failed trainings and is written as null.
    """

    id: int = Field(ge=0)
    status: ModelStatus
    genome: list[int]
    hp: HpConfig
    valid_nll: float
    weights_path: str | None = None
    wall_seconds: float = Field(ge=0)

    @field_validator("valid_nll", mode="before")
    @classmethod
    def _null_is_inf(cls, value):
        return none_to_inf(value)

    @field_serializer("valid_nll")
    def _inf_is_null(self, value: float):
        return inf_to_none(value)

    @property
    def ok(self) -> bool:
        """True when the model trained to a finite validation score."""
        return self.status == "ok" and math.isfinite(self.valid_nll)


class EnsembleManifest(RecordModel):
    """Contents of `ensemble.json`.

    `valid_nll` is NaN for ensembles that were not scored on validation data and is written as
    null.
    """

    member_ids: list[int] = Field(min_length=1)
    k: int = Field(ge=1)
    valid_nll: float
    diversity: float = Field(ge=0)
    method: SelectionMethod = "greedy"
    nll_trace: list[float] = Field(default_factory=list)

    @field_validator("valid_nll", mode="before")
    @classmethod
    def _null_is_nan(cls, value):
        return none_to_nan(value)

    @field_serializer("valid_nll")
    def _nan_is_null(self, value: float):
        return nan_to_none(value)

    @property
    def unique_ids(self) -> list[int]:
        """Member ids without repeats, in order of first appearance."""
        return list(dict.fromkeys(self.member_ids))


class ScoreReport(RecordModel):
    """Scores of a model or ensemble on one data split, in original target units."""

    nll: float
    rmse: float = Field(ge=0)
    n: int = Field(gt=0)
    dataset: str
    seed: int
    split: str = "test"
    model: str = "ensemble"

    @field_validator("nll", "rmse")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            msg = "Scores must be finite."
            raise ValueError(msg)
        return value


class SearchMeta(RecordModel):
    """Contents of `search_meta.json`."""

    seed: int
    budget: int
    strategy: str
    wall_seconds: float
    input_dim: int
    output_dim: int
    n_ok: int
    n_failed: int
    catalog_digest: str
    config: dict
