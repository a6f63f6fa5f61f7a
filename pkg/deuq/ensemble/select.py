"""Selecting ensemble members from a catalog: greedy forward selection and top-K."""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from ..errors import EmptyCatalogError, EnsembleError
from ..logger import DeuqLogger
from ..models.records import CatalogRecord, EnsembleManifest, SelectionMethod
from ..nn.forward import GaussianPrediction
from ..search.catalog import Catalog
from .predict import ensemble_nll


@dataclass(frozen=True)
class Ensemble:
    """Catalog ids of the members, in order of selection; ids may repeat.

    Attributes:
        members: member ids, repeats permitted.
        k: targeted number of unique members.
        valid_nll: validation NLL of the ensemble.
        method: how the members were chosen.
        nll_trace: ensemble validation NLL after each accepted member.
    """

    members: tuple[int, ...]
    k: int
    valid_nll: float
    method: SelectionMethod = "greedy"
    nll_trace: tuple[float, ...] = field(default_factory=tuple)

    @property
    def unique_ids(self) -> list[int]:
        """Member ids without repeats, in order of first selection."""
        return list(dict.fromkeys(self.members))

    def to_manifest(self, diversity: float) -> EnsembleManifest:
        """Manifest written to `ensemble.json`."""
        return EnsembleManifest(
            member_ids=list(self.members),
            k=self.k,
            valid_nll=self.valid_nll,
            diversity=diversity,
            method=self.method,
            nll_trace=list(self.nll_trace),
        )

    @classmethod
    def from_manifest(cls, manifest: EnsembleManifest) -> Ensemble:
        """Ensemble described by a manifest."""
        return cls(
            members=tuple(manifest.member_ids),
            k=manifest.k,
            valid_nll=manifest.valid_nll,
            method=manifest.method,
            nll_trace=tuple(manifest.nll_trace),
        )


def greedy_select_predictions(
    predictions: Mapping[int, GaussianPrediction], y: np.ndarray, k: int
) -> Ensemble:
    """Greedy forward selection with replacement over cached validation predictions.

    Every step scores adding each candidate to the incumbent ensemble and takes the one with the
    lowest ensemble NLL (lowest id on ties). Selection stops when that addition does not strictly
    lower the incumbent NLL or would bring the number of unique members above `k`.

    Args:
        predictions: validation predictions of every candidate model by id.
        y: validation targets.
        k: largest number of unique members.

    Raises:
        EmptyCatalogError: if there are no candidates.
        EnsembleError: if `k` < 1.
    """
    if not predictions:
        msg = "No candidate models to select from."
        DeuqLogger.error(msg)
        raise EmptyCatalogError(msg)
    if k < 1:
        msg = f"Ensemble size must be at least 1, got {k}."
        DeuqLogger.error(msg)
        raise EnsembleError(msg)
    ids = sorted(predictions)
    members: list[int] = []
    trace: list[float] = []
    min_loss = math.inf
    for _ in range(len(ids) * k):
        incumbent = [predictions[i] for i in members]
        losses = [ensemble_nll([*incumbent, predictions[c]], y) for c in ids]
        best = int(np.argmin(losses))
        pick, loss = ids[best], losses[best]
        if len(set(members) | {pick}) > k:
            DeuqLogger.debug(f"Stopping: adding model {pick} exceeds {k} unique members.")
            break
        if not loss < min_loss:
            DeuqLogger.debug(f"Stopping: adding model {pick} gives {loss:.5f} >= {min_loss:.5f}.")
            break
        members.append(pick)
        trace.append(loss)
        min_loss = loss
        DeuqLogger.info(f"Ensemble step {len(members)}: added model {pick}, NLL {loss:.5f}.")
    return Ensemble(
        members=tuple(members), k=k, valid_nll=min_loss, method="greedy", nll_trace=tuple(trace)
    )


def greedy_select(
    catalog: Catalog, predictions: Mapping[int, GaussianPrediction], y_valid: np.ndarray, k: int
) -> Ensemble:
    """Greedy selection over every successfully trained model of a catalog.

    Raises:
        EmptyCatalogError: if no model trained successfully.
        EnsembleError: if a successful model has no prediction.
    """
    ok_ids = [r.id for r in catalog.require_ok()]
    missing = [i for i in ok_ids if i not in predictions]
    if missing:
        msg = f"No validation predictions for models {missing}."
        DeuqLogger.error(msg)
        raise EnsembleError(msg)
    return greedy_select_predictions({i: predictions[i] for i in ok_ids}, y_valid, k)


def top_k_ids(records: Sequence[CatalogRecord], k: int) -> list[int]:
    """Ids of the `k` successful models with the lowest validation NLL, lower id first on ties.

    Raises:
        EmptyCatalogError: if no model trained successfully.
        EnsembleError: if fewer than `k` did.
    """
    ok = [r for r in records if r.ok]
    if not ok:
        msg = "Catalog has no successfully trained models."
        DeuqLogger.error(msg)
        raise EmptyCatalogError(msg)
    if len(ok) < k:
        msg = f"Top-{k} selection needs {k} successful models, catalog has {len(ok)}."
        DeuqLogger.error(msg)
        raise EnsembleError(msg)
    return [r.id for r in sorted(ok, key=lambda r: (r.valid_nll, r.id))[:k]]


def top_k_select(
    catalog: Catalog,
    k: int,
    predictions: Mapping[int, GaussianPrediction] | None = None,
    y_valid: np.ndarray | None = None,
) -> Ensemble:
    """The `k` best single models; scored on validation data when predictions are given."""
    ids = top_k_ids(catalog.records, k)
    valid_nll = math.nan
    if predictions is not None and y_valid is not None:
        valid_nll = ensemble_nll([predictions[i] for i in ids], y_valid)
    return Ensemble(members=tuple(ids), k=k, valid_nll=valid_nll, method="topk")
