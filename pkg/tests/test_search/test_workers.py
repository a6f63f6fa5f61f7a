"""Tests for the training worker pool in deuq.search.workers.

Run just these tests using `pytest tests/test_search/test_workers.py`
"""

import math

import pytest

from deuq import DeuqLogger
from deuq.errors import ConfigError
from deuq.models.records import HpConfig
from deuq.search.workers import (
    TrainContext,
    TrainTask,
    WorkerPool,
    max_parallel_workers,
    run_task,
)

HP = HpConfig(
    lr=0.01, batch_size=16, optimizer="adam", patience_reduce_lr=10, patience_early_stop=20
)


@pytest.fixture
def context(linear_splits, small_arch):
    return TrainContext(linear_splits, small_arch, epochs=2)


def test_run_task(request, context):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    result = run_task(TrainTask(0, (1, 2, 4, 1), HP, seed=3), context)
    assert result.model is not None
    assert result.error is None
    assert math.isfinite(result.valid_nll)
    assert result.wall_seconds >= 0
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_run_task_failure(request, context):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    result = run_task(TrainTask(5, (9, 9, 9, 9), HP, seed=3), context)
    assert result.model is None
    assert result.error
    assert result.valid_nll == math.inf
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_deterministic_pool_fifo(request, context):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    order = []
    with WorkerPool(context, workers=4, deterministic=True) as pool:
        assert pool.processes == 1
        for i in range(3):
            pool.submit(TrainTask(i, (1, 2, 4, i % 2), HP, seed=i))
        assert pool.in_flight == 3
        while pool.in_flight:
            results = pool.wait()
            assert len(results) == 1
            order.append(results[0].task.task_id)
        assert pool.wait() == []
    assert order == [0, 1, 2]
    DeuqLogger.info(f"--Finished: {request.node.name}")


@pytest.mark.skipci
def test_process_pool(request, context):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    results = []
    with WorkerPool(context, workers=2) as pool:
        for i in range(4):
            pool.submit(TrainTask(i, (1, 2, 4, i % 2), HP, seed=i))
        while pool.in_flight:
            batch = pool.wait()
            assert [r.task.task_id for r in batch] == sorted(r.task.task_id for r in batch)
            results.extend(batch)
    assert sorted(r.task.task_id for r in results) == [0, 1, 2, 3]
    assert all(r.model is not None for r in results)
    DeuqLogger.info(f"--Finished: {request.node.name}")


thread_cap_test_list = [("3", 3), ("1", 1), ("12", 12)]


@pytest.mark.parametrize(("value", "expected"), thread_cap_test_list)
def test_thread_cap(request, monkeypatch, value, expected):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    monkeypatch.setenv("DEUQ_THREADS", value)
    assert max_parallel_workers() == expected
    DeuqLogger.info(f"--Finished: {request.node.name}")


@pytest.mark.parametrize("value", ["zero", "0", "-2", "1.5"])
def test_thread_cap_invalid(request, monkeypatch, value):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    monkeypatch.setenv("DEUQ_THREADS", value)
    with pytest.raises(ConfigError):
        max_parallel_workers()
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_thread_cap_default(request, monkeypatch):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    monkeypatch.delenv("DEUQ_THREADS", raising=False)
    assert max_parallel_workers() >= 1
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_pool_caps_processes(request, monkeypatch, context):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    monkeypatch.setenv("DEUQ_THREADS", "2")
    pool = WorkerPool(context, workers=8)
    assert pool.processes == 2
    pool.shutdown()
    DeuqLogger.info(f"--Finished: {request.node.name}")
