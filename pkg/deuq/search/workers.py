"""Pool of training workers.

Tasks carry only (genome, hyperparameters, seed); the data splits, architecture space and epoch
count are sent to each worker process once when the pool starts. In deterministic mode tasks run
one at a time in the calling process, in submission order.
"""

from __future__ import annotations

import os
from collections import deque
from concurrent.futures import FIRST_COMPLETED, Future, ProcessPoolExecutor, wait
from concurrent.futures.process import BrokenProcessPool
from dataclasses import dataclass

import psutil

from ..configs import ArchSpaceConfig
from ..data.splits import DataSplits
from ..errors import ConfigError
from ..logger import DeuqLogger
from ..models.records import HpConfig
from ..nn.train import TrainedModel, train
from ..params import THREADS_ENV_VAR
from ..utils.time import Stopwatch


@dataclass(frozen=True)
class TrainContext:
    """What every training task of a search shares."""

    splits: DataSplits
    arch_cfg: ArchSpaceConfig
    epochs: int


@dataclass(frozen=True)
class TrainTask:
    """One model to train."""

    task_id: int
    genome: tuple[int, ...]
    hp: HpConfig
    seed: int


@dataclass(frozen=True)
class TaskResult:
    """Outcome of a task; `model` is None when the worker raised or died."""

    task: TrainTask
    model: TrainedModel | None
    error: str | None = None
    wall_seconds: float = 0.0

    @property
    def valid_nll(self) -> float:
        """Validation score; +inf unless training succeeded."""
        return self.model.valid_nll if self.model is not None else float("inf")


def run_task(task: TrainTask, context: TrainContext) -> TaskResult:
    """Train one model, turning any exception into a failed result."""
    watch = Stopwatch()
    try:
        model = train(
            task.genome, task.hp, context.splits, task.seed, context.arch_cfg, context.epochs
        )
    except Exception as err:  # noqa: BLE001
        DeuqLogger.warning(f"Task {task.task_id} raised {type(err).__name__}: {err}")
        return TaskResult(task, None, f"{type(err).__name__}: {err}", watch.seconds)
    return TaskResult(task, model, None, watch.seconds)


_WORKER_CONTEXT: dict[str, TrainContext] = {}


def _init_worker(context: TrainContext) -> None:
    _WORKER_CONTEXT["context"] = context


def _run_in_worker(task: TrainTask) -> TaskResult:
    return run_task(task, _WORKER_CONTEXT["context"])


def max_parallel_workers() -> int:
    """Process cap: `DEUQ_THREADS` when set, otherwise the number of physical cores.

    Raises:
        ConfigError: if `DEUQ_THREADS` is not a positive integer.
    """
    value = os.environ.get(THREADS_ENV_VAR)
    if value is None:
        return psutil.cpu_count(logical=False) or psutil.cpu_count() or 1
    try:
        cap = int(value)
    except ValueError:
        cap = 0
    if cap < 1:
        msg = f"{THREADS_ENV_VAR} must be a positive integer, got {value!r}."
        DeuqLogger.error(msg)
        raise ConfigError(msg)
    return cap


class WorkerPool:
    """Runs training tasks and hands back results as they complete.

    Usage:

    ```python
    with WorkerPool(context, workers=4) as pool:
        pool.submit(task)
        for result in pool.wait():
            ...
    ```
    """

    def __init__(self, context: TrainContext, workers: int, deterministic: bool = False):
        """Pool of at most `workers` processes, capped by `max_parallel_workers()`."""
        self.context = context
        self.deterministic = deterministic
        self.processes = 1 if deterministic else min(workers, max_parallel_workers())
        self._queue: deque[TrainTask] = deque()
        self._futures: dict[Future, TrainTask] = {}
        self._executor: ProcessPoolExecutor | None = None

    def __enter__(self) -> WorkerPool:
        """Start worker processes unless deterministic."""
        if not self.deterministic:
            self._start()
        return self

    def __exit__(self, *exc) -> None:
        """Stop worker processes."""
        self.shutdown()

    def _start(self) -> None:
        DeuqLogger.info(f"Starting {self.processes} worker processes.")
        self._executor = ProcessPoolExecutor(
            max_workers=self.processes,
            initializer=_init_worker,
            initargs=(self.context,),
        )

    def shutdown(self) -> None:
        """Stop worker processes, cancelling queued tasks."""
        if self._executor is not None:
            self._executor.shutdown(wait=True, cancel_futures=True)
            self._executor = None

    @property
    def in_flight(self) -> int:
        """Tasks submitted and not yet returned by `wait`."""
        return len(self._queue) + len(self._futures)

    def submit(self, task: TrainTask) -> None:
        """Queue a task."""
        if self.deterministic:
            self._queue.append(task)
            return
        if self._executor is None:
            self._start()
        self._futures[self._executor.submit(_run_in_worker, task)] = task

    def wait(self) -> list[TaskResult]:
        """Block until at least one task completes; results are ordered by task id.

        A worker that dies yields a failed result and the pool is restarted.
        """
        if self.deterministic:
            if not self._queue:
                return []
            return [run_task(self._queue.popleft(), self.context)]
        if not self._futures:
            return []
        done, _ = wait(list(self._futures), return_when=FIRST_COMPLETED)
        results, broken = [], False
        for future in done:
            task = self._futures.pop(future)
            try:
                results.append(future.result())
            except BrokenProcessPool as err:
                broken = True
                results.append(TaskResult(task, None, f"worker died: {err}"))
            except Exception as err:  # noqa: BLE001
                results.append(TaskResult(task, None, f"{type(err).__name__}: {err}"))
        if broken:
            DeuqLogger.warning("A worker process died; restarting the pool.")
            lost = list(self._futures.values())
            self._futures.clear()
            self.shutdown()
            results.extend(TaskResult(t, None, "worker pool restarted") for t in lost)
            self._start()
        return sorted(results, key=lambda r: r.task.task_id)
