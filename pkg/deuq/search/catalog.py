"""Append-only store of every trained model: `catalog.jsonl` plus one weights file per model.

Each line of `catalog.jsonl` is a `CatalogRecord`. The weights of model `i` live beside it in
`model_<i>.json`. Failed models have no weights file and a null `valid_nll`.
"""

from __future__ import annotations

import json
import math
from collections.abc import Iterator
from pathlib import Path

import numpy as np
import pandas as pd

from ..configs import ArchSpaceConfig
from ..errors import CatalogError, CatalogReferenceError, EmptyCatalogError
from ..logger import DeuqLogger
from ..models.records import CatalogRecord, HpConfig
from ..models.tables import CatalogTable
from ..nn.forward import GaussianPrediction, forward
from ..nn.graph import NetworkGraph
from ..nn.train import TrainedModel
from ..nn.weights import ModelWeights, read_weights, write_weights
from ..params import CATALOG_FILENAME
from ..space.arch import decode
from ..utils.io_dict import append_jsonl, read_jsonl
from ..utils.models import validate_df_to_model
from ..utils.utils import dict_to_hexkey


def weights_filename(model_id: int) -> str:
    """Name of the weights file of a model."""
    return f"model_{model_id}.json"


class Catalog:
    """All models produced by a search, in completion order.

    Records are never changed once appended. With a `directory` every append is written to
    disk immediately; without one the catalog lives in memory, weights included.

    Attributes:
        directory: folder holding `catalog.jsonl` and the weights files, or None.
        records: catalog records in id order.
    """

    def __init__(self, directory: Path | None = None):
        """Empty catalog; use `create` or `load` for one backed by files."""
        self.directory = Path(directory) if directory is not None else None
        self.records: list[CatalogRecord] = []
        self._weights: dict[int, ModelWeights] = {}

    @classmethod
    def from_records(cls, records: list[CatalogRecord]) -> Catalog:
        """In-memory catalog of existing records, e.g. to rank models without weights."""
        catalog = cls()
        for n, record in enumerate(records):
            if record.id != n:
                msg = f"Record {n} has id {record.id}; ids must count up from 0."
                DeuqLogger.error(msg)
                raise CatalogError(msg)
            catalog.records.append(record)
        return catalog

    @property
    def path(self) -> Path | None:
        """The jsonl file, when the catalog is backed by files."""
        return None if self.directory is None else self.directory / CATALOG_FILENAME

    @classmethod
    def create(cls, directory: Path, overwrite: bool = False) -> Catalog:
        """New empty catalog in `directory`.

        Raises:
            CatalogError: if a catalog already exists there and `overwrite` is False.
        """
        catalog = cls(directory)
        catalog.directory.mkdir(parents=True, exist_ok=True)
        if catalog.path.exists():
            if not overwrite:
                msg = f"A catalog already exists at {catalog.path}."
                DeuqLogger.error(msg)
                raise CatalogError(msg)
            DeuqLogger.info(f"Overwriting catalog at {catalog.path}.")
            for old in catalog.directory.glob("model_*.json"):
                old.unlink()
            catalog.path.unlink()
        catalog.path.touch()
        return catalog

    @classmethod
    def load(cls, directory: Path) -> Catalog:
        """Catalog previously written to `directory`.

        Raises:
            FileNotFoundError: if there is no catalog file.
            CatalogError: if a line is not a valid record or ids are out of order.
        """
        catalog = cls(directory)
        try:
            lines = read_jsonl(catalog.path)
        except json.JSONDecodeError as err:
            msg = f"Catalog file {catalog.path} is not valid jsonl: {err}"
            DeuqLogger.error(msg)
            raise CatalogError(msg) from err
        for n, data in enumerate(lines):
            try:
                record = CatalogRecord(**data)
            except ValueError as err:
                msg = f"Invalid record on line {n + 1} of {catalog.path}: {err}"
                DeuqLogger.error(msg)
                raise CatalogError(msg) from err
            if record.id != n:
                msg = f"Record on line {n + 1} of {catalog.path} has id {record.id}."
                DeuqLogger.error(msg)
                raise CatalogError(msg)
            catalog.records.append(record)
        DeuqLogger.info(f"Loaded {len(catalog)} catalog records from {catalog.path}.")
        return catalog

    def __len__(self) -> int:
        """Number of records."""
        return len(self.records)

    def __iter__(self) -> Iterator[CatalogRecord]:
        """Records in id order."""
        return iter(self.records)

    def append(self, model: TrainedModel) -> CatalogRecord:
        """Add a trained model, writing its weights when it trained successfully."""
        model_id = len(self.records)
        ok = model.ok and math.isfinite(model.valid_nll)
        weights_path = weights_filename(model_id) if ok else None
        record = CatalogRecord(
            id=model_id,
            status="ok" if ok else "failed",
            genome=list(model.genome),
            hp=model.hp,
            valid_nll=model.valid_nll if ok else math.inf,
            weights_path=weights_path,
            wall_seconds=model.wall_seconds,
        )
        if ok:
            if self.directory is None:
                self._weights[model_id] = model.weights
            else:
                write_weights(model.weights, self.directory / weights_path, model.graph)
        if self.path is not None:
            append_jsonl(record.asdict, self.path)
        self.records.append(record)
        return record

    def append_failed(self, genome, hp: HpConfig, wall_seconds: float = 0.0) -> CatalogRecord:
        """Add a failed evaluation that produced no model, e.g. after a worker crash."""
        record = CatalogRecord(
            id=len(self.records),
            status="failed",
            genome=[int(v) for v in genome],
            hp=hp,
            valid_nll=math.inf,
            weights_path=None,
            wall_seconds=wall_seconds,
        )
        if self.path is not None:
            append_jsonl(record.asdict, self.path)
        self.records.append(record)
        return record

    def get(self, model_id: int) -> CatalogRecord:
        """Record of a model id.

        Raises:
            CatalogReferenceError: if the id is not in the catalog.
        """
        if not 0 <= model_id < len(self.records):
            msg = f"Model id {model_id} is not in the catalog of {len(self.records)} models."
            DeuqLogger.error(msg)
            raise CatalogReferenceError(msg)
        return self.records[model_id]

    def ok_records(self) -> list[CatalogRecord]:
        """Records of successfully trained models."""
        return [r for r in self.records if r.ok]

    def require_ok(self) -> list[CatalogRecord]:
        """Like `ok_records` but raises `EmptyCatalogError` when there are none."""
        ok = self.ok_records()
        if not ok:
            msg = f"Catalog has no successfully trained models ({len(self.records)} records)."
            DeuqLogger.error(msg)
            raise EmptyCatalogError(msg)
        return ok

    def best(self) -> CatalogRecord:
        """Model with the lowest validation NLL, lowest id on ties."""
        return min(self.require_ok(), key=lambda r: (r.valid_nll, r.id))

    def load_model(
        self, model_id: int, arch_cfg: ArchSpaceConfig, input_dim: int, output_dim: int
    ) -> tuple[NetworkGraph, ModelWeights]:
        """Graph and checkpoint weights of a successfully trained model.

        Raises:
            CatalogReferenceError: if the id is unknown or the model has no weights.
        """
        record = self.get(model_id)
        if not record.ok:
            msg = f"Model {model_id} failed to train and has no weights."
            DeuqLogger.error(msg)
            raise CatalogReferenceError(msg)
        graph = decode(record.genome, arch_cfg, input_dim, output_dim)
        if model_id in self._weights:
            return graph, self._weights[model_id]
        return graph, read_weights(self.directory / record.weights_path, graph)

    def predict(
        self,
        model_ids: list[int],
        x: np.ndarray,
        arch_cfg: ArchSpaceConfig,
        output_dim: int,
    ) -> dict[int, GaussianPrediction]:
        """Predictions of each listed model on standardized inputs `x`."""
        x = np.asarray(x, dtype=np.float64).reshape(len(x), -1)
        predictions = {}
        for model_id in dict.fromkeys(model_ids):
            graph, weights = self.load_model(model_id, arch_cfg, x.shape[1], output_dim)
            predictions[model_id] = forward(graph, weights, x)
        return predictions

    def to_dataframe(self) -> pd.DataFrame:
        """Catalog as a validated table without genomes and hyperparameters."""
        df = pd.DataFrame(
            [
                {
                    "id": r.id,
                    "status": r.status,
                    "valid_nll": r.valid_nll,
                    "weights_path": r.weights_path,
                    "wall_seconds": r.wall_seconds,
                }
                for r in self.records
            ],
            columns=["id", "status", "valid_nll", "weights_path", "wall_seconds"],
        )
        return validate_df_to_model(df, CatalogTable)

    def digest(self) -> str:
        """Hash of the ordered records, ignoring training times."""
        return dict_to_hexkey(
            [{k: v for k, v in r.asdict.items() if k != "wall_seconds"} for r in self.records]
        )
