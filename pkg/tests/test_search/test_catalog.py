"""Tests for deuq.search.catalog.

Run just these tests using `pytest tests/test_search/test_catalog.py`
"""

import json
import math

import numpy as np
import pytest

from deuq import DeuqLogger
from deuq.errors import CatalogError, CatalogReferenceError, EmptyCatalogError
from deuq.models.records import HpConfig
from deuq.nn.train import train
from deuq.params import CATALOG_FILENAME
from deuq.search import Catalog, replay_population
from deuq.space import random_genome

HP = HpConfig(
    lr=0.01, batch_size=16, optimizer="adam", patience_reduce_lr=10, patience_early_stop=20
)


@pytest.fixture(scope="module")
def trained_models(linear_splits, small_arch):
    rng = np.random.default_rng(0)
    return [
        train(random_genome(small_arch, rng), HP, linear_splits, seed, small_arch, epochs=3)
        for seed in range(3)
    ]


def test_file_catalog_round_trip(
    request, test_out_dir, trained_models, linear_splits, small_arch
):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    directory = test_out_dir / "catalog_round_trip"
    catalog = Catalog.create(directory, overwrite=True)
    for model in trained_models:
        catalog.append(model)
    catalog.append_failed(trained_models[0].genome, HP, wall_seconds=0.5)

    lines = (directory / CATALOG_FILENAME).read_text().splitlines()
    assert len(lines) == 4
    assert json.loads(lines[3])["valid_nll"] is None

    loaded = Catalog.load(directory)
    assert [r.id for r in loaded] == [0, 1, 2, 3]
    assert loaded.get(3).status == "failed"
    assert math.isinf(loaded.get(3).valid_nll)
    assert loaded.digest() == catalog.digest()
    assert len(loaded.ok_records()) == 3

    x = linear_splits.valid.x
    predictions = loaded.predict([2, 0, 2], x, small_arch, output_dim=1)
    assert sorted(predictions) == [0, 2]
    np.testing.assert_array_equal(predictions[0].mu, trained_models[0].predict(x).mu)
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_create_refuses_existing(request, test_out_dir):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    directory = test_out_dir / "catalog_exists"
    Catalog.create(directory, overwrite=True)
    with pytest.raises(CatalogError):
        Catalog.create(directory)
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_load_rejects_bad_lines(request, test_out_dir):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    directory = test_out_dir / "catalog_bad"
    directory.mkdir(parents=True, exist_ok=True)
    (directory / CATALOG_FILENAME).write_text('{"id": 0, "status": "maybe"}\n')
    with pytest.raises(CatalogError, match="line 1"):
        Catalog.load(directory)
    with pytest.raises(FileNotFoundError):
        Catalog.load(test_out_dir / "catalog_missing")
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_references(request, trained_models, small_arch):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    catalog = Catalog()
    with pytest.raises(EmptyCatalogError):
        catalog.best()
    for model in trained_models:
        catalog.append(model)
    catalog.append_failed(trained_models[1].genome, HP)
    with pytest.raises(CatalogReferenceError):
        catalog.get(7)
    with pytest.raises(CatalogReferenceError):
        catalog.load_model(3, small_arch, 1, 1)
    best = min(range(3), key=lambda i: trained_models[i].valid_nll)
    assert catalog.best().id == best
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_digest_ignores_wall_time(request, trained_models):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    first, second = Catalog(), Catalog()
    first.append_failed((0, 1, 2, 0), HP, wall_seconds=1.0)
    second.append_failed((0, 1, 2, 0), HP, wall_seconds=9.0)
    assert first.digest() == second.digest()
    second.append(trained_models[0])
    assert first.digest() != second.digest()
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_to_dataframe(request, trained_models):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    catalog = Catalog()
    for model in trained_models:
        catalog.append(model)
    catalog.append_failed(trained_models[0].genome, HP)
    df = catalog.to_dataframe()
    assert list(df["status"]) == ["ok", "ok", "ok", "failed"]
    assert df["weights_path"].isna().tolist() == [False, False, False, True]
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_replay_population(request, trained_models):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    catalog = Catalog()
    for model in trained_models:
        catalog.append(model)
    population = replay_population(catalog, capacity=2)
    assert population.model_ids() == [1, 2]
    DeuqLogger.info(f"--Finished: {request.node.name}")
