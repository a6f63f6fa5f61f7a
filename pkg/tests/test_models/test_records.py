"""Tests for the json records in deuq.models.records.

Run just these tests using `pytest tests/test_models/test_records.py`
"""

import math

import pytest
from pydantic import ValidationError

from deuq import DeuqLogger
from deuq.models.records import CatalogRecord, EnsembleManifest, HpConfig, ScoreReport

HP = {
    "lr": 0.01,
    "batch_size": 32,
    "optimizer": "adam",
    "patience_reduce_lr": 10,
    "patience_early_stop": 20,
}


def test_hp_config(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    hp = HpConfig(**HP)
    assert hp.optimizer_index == 3
    assert hp.key() == (0.01, 32, "adam", 10, 20)
    with pytest.raises(ValidationError):
        HpConfig(**{**HP, "optimizer": "lbfgs"})
    with pytest.raises(ValidationError):
        HpConfig(**{**HP, "lr": 0.0})
    with pytest.raises(ValidationError):
        HpConfig(**HP, momentum=0.9)
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_failed_record_writes_null(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    record = CatalogRecord(
        id=2, status="failed", genome=[0, 1], hp=HP, valid_nll=math.inf, wall_seconds=0.5
    )
    assert not record.ok
    assert record.asdict["valid_nll"] is None
    assert record.asdict["weights_path"] is None
    assert CatalogRecord(**record.asdict).valid_nll == math.inf
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_ok_record(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    record = CatalogRecord(
        id=0,
        status="ok",
        genome=[3, 0],
        hp=HP,
        valid_nll=-0.4,
        weights_path="model_0.json",
        wall_seconds=1.0,
    )
    assert record.ok
    assert record.hp.batch_size == 32
    assert record.fields == [
        "id",
        "status",
        "genome",
        "hp",
        "valid_nll",
        "weights_path",
        "wall_seconds",
    ]
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_ensemble_manifest(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    manifest = EnsembleManifest(member_ids=[4, 1, 4, 7], k=3, valid_nll=0.1, diversity=0.5)
    assert manifest.unique_ids == [4, 1, 7]
    assert manifest.method == "greedy"
    with pytest.raises(ValidationError):
        EnsembleManifest(member_ids=[], k=3, valid_nll=0.1, diversity=0.5)
    with pytest.raises(ValidationError):
        EnsembleManifest(member_ids=[1], k=1, valid_nll=0.1, diversity=0.5, method="bagging")
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_score_report_is_finite(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    report = ScoreReport(nll=-1.2, rmse=0.3, n=10, dataset="toy", seed=0)
    assert report.model == "ensemble"
    with pytest.raises(ValidationError):
        ScoreReport(nll=math.nan, rmse=0.3, n=10, dataset="toy", seed=0)
    with pytest.raises(ValidationError):
        ScoreReport(nll=0.0, rmse=math.inf, n=10, dataset="toy", seed=0)
    with pytest.raises(ValidationError):
        ScoreReport(nll=0.0, rmse=0.3, n=0, dataset="toy", seed=0)
    DeuqLogger.info(f"--Finished: {request.node.name}")
