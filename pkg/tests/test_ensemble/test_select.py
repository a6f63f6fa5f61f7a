"""Tests for greedy and top-K ensemble selection in deuq.ensemble.select.

Run just these tests using `pytest tests/test_ensemble/test_select.py`
"""

import itertools
import json
import math

import numpy as np
import pytest

from deuq import DeuqLogger
from deuq.ensemble import (
    Ensemble,
    ensemble_nll,
    greedy_select,
    greedy_select_predictions,
    top_k_ids,
    top_k_select,
)
from deuq.errors import EmptyCatalogError, EnsembleError
from deuq.models.records import CatalogRecord, EnsembleManifest, HpConfig
from deuq.nn import GaussianPrediction
from deuq.search import Catalog

HP = HpConfig(
    lr=1e-3, batch_size=8, optimizer="adam", patience_reduce_lr=10, patience_early_stop=20
)


def _member(mu: float, var: float, n: int = 1) -> GaussianPrediction:
    return GaussianPrediction(mu=np.full((n, 1), mu), var=np.full((n, 1), var))


def _record(model_id: int, valid_nll: float) -> CatalogRecord:
    ok = math.isfinite(valid_nll)
    return CatalogRecord(
        id=model_id,
        status="ok" if ok else "failed",
        genome=[model_id, 0, 0, 0],
        hp=HP,
        valid_nll=valid_nll,
        weights_path=f"model_{model_id:05d}.json" if ok else None,
        wall_seconds=0.0,
    )


# A is the best single model, B complements it and C is far off.
ABC = {0: _member(1.0, 0.5), 1: _member(-1.05, 0.5), 2: _member(10.0, 0.5)}
Y = np.zeros(1)


def test_greedy_picks_complementary_pair(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    ensemble = greedy_select_predictions(ABC, Y, k=3)
    assert ensemble.members[0] == 0
    assert set(ensemble.unique_ids) == {0, 1}
    assert all(b < a for a, b in itertools.pairwise(ensemble.nll_trace))
    assert ensemble.valid_nll == ensemble.nll_trace[-1]
    assert ensemble.valid_nll == pytest.approx(
        ensemble_nll([ABC[i] for i in ensemble.members], Y), abs=0
    )
    singles = [ensemble_nll([m], Y) for m in ABC.values()]
    pairs_with_a = [ensemble_nll([ABC[0], ABC[j]], Y) for j in ABC]
    assert ensemble.valid_nll <= min(singles + pairs_with_a)
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_greedy_single_candidate(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    ensemble = greedy_select_predictions({4: _member(0.3, 1.0)}, Y, k=5)
    assert ensemble.members == (4,)
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_greedy_respects_k(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    rng = np.random.default_rng(8)
    y = rng.normal(size=30)
    predictions = {
        i: GaussianPrediction(
            mu=(y + rng.normal(0, 0.8, size=30)).reshape(-1, 1),
            var=rng.uniform(0.3, 1.5, size=(30, 1)),
        )
        for i in range(8)
    }
    best_single = min(predictions, key=lambda i: (ensemble_nll([predictions[i]], y), i))
    for k in (1, 2, 3):
        ensemble = greedy_select_predictions(predictions, y, k)
        assert len(ensemble.unique_ids) <= k
        assert ensemble.members[0] == best_single
    assert greedy_select_predictions(predictions, y, 1).members == (best_single,)
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_greedy_errors(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    with pytest.raises(EmptyCatalogError):
        greedy_select_predictions({}, Y, 3)
    with pytest.raises(EnsembleError):
        greedy_select_predictions(ABC, Y, 0)
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_greedy_select_skips_failed_models(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    catalog = Catalog.from_records([_record(0, 1.2), _record(1, math.inf), _record(2, 1.3)])
    predictions = {0: ABC[0], 2: ABC[1]}
    ensemble = greedy_select(catalog, predictions, Y, k=2)
    assert set(ensemble.unique_ids) == {0, 2}
    with pytest.raises(EnsembleError):
        greedy_select(catalog, {0: ABC[0]}, Y, k=2)
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_top_k(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    records = [_record(0, 3.0), _record(1, 1.0), _record(2, 2.0), _record(3, 1.0)]
    assert top_k_ids(records, 1) == [1]
    assert top_k_ids(records, 2) == [1, 3]
    assert top_k_ids(records[:3], 2) == [1, 2]
    with pytest.raises(EnsembleError):
        top_k_ids(records, 5)
    with pytest.raises(EmptyCatalogError):
        top_k_ids([_record(0, math.inf)], 1)
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_top_k_select(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    catalog = Catalog.from_records([_record(0, 3.0), _record(1, 1.0), _record(2, 2.0)])
    unscored = top_k_select(catalog, 2)
    assert unscored.members == (1, 2)
    assert math.isnan(unscored.valid_nll)
    manifest = unscored.to_manifest(diversity=0.0)
    assert manifest.asdict["valid_nll"] is None
    json.dumps(manifest.asdict, allow_nan=False)
    assert math.isnan(EnsembleManifest(**manifest.asdict).valid_nll)
    scored = top_k_select(catalog, 2, ABC, Y)
    assert scored.valid_nll == ensemble_nll([ABC[1], ABC[2]], Y)
    assert scored.method == "topk"
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_manifest_round_trip(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    ensemble = Ensemble(members=(3, 1, 3), k=2, valid_nll=0.5, nll_trace=(0.9, 0.6, 0.5))
    manifest = ensemble.to_manifest(diversity=0.7)
    assert manifest.unique_ids == [3, 1]
    assert Ensemble.from_manifest(manifest) == ensemble
    DeuqLogger.info(f"--Finished: {request.node.name}")


def _mixture_nll(members: list[GaussianPrediction], y: np.ndarray) -> float:
    mus = np.stack([m.mu[:, 0] for m in members])
    variances = np.stack([m.var[:, 0] for m in members])
    mu = mus.mean(axis=0)
    var = variances.mean(axis=0) + (mus.var(axis=0, ddof=1) if len(members) > 1 else 0.0)
    return float(np.mean(0.5 * np.log(2 * np.pi * var) + (y - mu) ** 2 / (2 * var)))


def _replay_greedy(predictions: dict, y: np.ndarray, k: int) -> list[int]:
    members: list[int] = []
    best_so_far = math.inf
    while True:
        scored = [
            (_mixture_nll([predictions[i] for i in [*members, c]], y), c)
            for c in sorted(predictions)
        ]
        loss, pick = min(scored)
        if len({*members, pick}) > k or not loss < best_so_far:
            return members
        members.append(pick)
        best_so_far = loss


def _synthetic_catalog(seed: int) -> tuple[dict, np.ndarray]:
    rng = np.random.default_rng(seed)
    n_models = (4, 6, 12, 20)[seed % 4]
    y = rng.normal(size=25)
    predictions = {
        i: GaussianPrediction(
            mu=(y + rng.normal(rng.normal(0, 0.5), rng.uniform(0.2, 1.5), size=25)).reshape(-1, 1),
            var=rng.uniform(0.1, 2.0, size=(25, 1)),
        )
        for i in range(n_models)
    }
    return predictions, y


@pytest.mark.parametrize("seed", range(20))
def test_greedy_matches_exhaustive_replay(request, seed):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    predictions, y = _synthetic_catalog(seed)
    k = 1 + seed % 4
    ensemble = greedy_select_predictions(predictions, y, k)
    assert list(ensemble.members) == _replay_greedy(predictions, y, k)
    assert ensemble.valid_nll == pytest.approx(
        _mixture_nll([predictions[i] for i in ensemble.members], y), rel=1e-10
    )
    assert all(b < a for a, b in itertools.pairwise(ensemble.nll_trace))
    assert len(ensemble.members) <= len(predictions) * k
    singles = [_mixture_nll([p], y) for p in predictions.values()]
    assert ensemble.valid_nll <= min(singles) + 1e-12
    if k > 1:
        first = predictions[ensemble.members[0]]
        pairs = [_mixture_nll([first, p], y) for p in predictions.values()]
        assert ensemble.valid_nll <= min(pairs) + 1e-12
    DeuqLogger.info(f"--Finished: {request.node.name}")
