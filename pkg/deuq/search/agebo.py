"""Search manager: keeps W trainings in flight, evolves the population and fills the catalog.

The first W submissions are proposed without feedback. Afterwards every batch of completed
results is appended to the catalog, pushed into the aging population and told to the
hyperparameter optimizer; then one new submission is made per completed result, pairing the
asked hyperparameters with child architectures in ask order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..configs import SearchConfig
from ..data.splits import DataSplits
from ..logger import DeuqLogger
from ..models.records import CatalogRecord, SearchMeta
from ..params import SEARCH_META_FILENAME
from ..utils.io_dict import write_json
from ..utils.time import Stopwatch
from ..utils.utils import derive_seed
from .catalog import Catalog
from .population import Population
from .strategies import Proposal, SearchStrategy, make_strategy
from .workers import TaskResult, TrainContext, TrainTask, WorkerPool


@dataclass(frozen=True)
class Submission:
    """A task as it was submitted, with the population at that moment."""

    task: TrainTask
    parent_id: int | None
    population_ids: tuple[int, ...]


@dataclass
class SearchState:
    """Everything the manager owns during a search."""

    catalog: Catalog
    population: Population
    strategy: SearchStrategy
    submissions: list[Submission] = field(default_factory=list)
    max_in_flight: int = 0


class AgingSearch:
    """Runs one catalog generation search.

    Args:
        cfg: search settings.
        splits: standardized data splits.
        catalog: catalog to fill; an in-memory one when None.
    """

    def __init__(self, cfg: SearchConfig, splits: DataSplits, catalog: Catalog | None = None):
        """Search ready to `run()`."""
        self.cfg = cfg
        self.splits = splits
        self.rng = np.random.default_rng(cfg.rng_seed)
        self.state = SearchState(
            catalog=catalog if catalog is not None else Catalog(),
            population=Population(cfg.population_size),
            strategy=make_strategy(cfg, self.rng),
        )

    @property
    def catalog(self) -> Catalog:
        """Catalog being filled."""
        return self.state.catalog

    def _submit(self, pool: WorkerPool, proposal: Proposal, hp) -> None:
        task_id = len(self.state.submissions)
        task = TrainTask(
            task_id=task_id,
            genome=proposal.genome,
            hp=hp,
            seed=derive_seed(self.cfg.rng_seed, task_id),
        )
        self.state.submissions.append(
            Submission(task, proposal.parent_id, tuple(self.state.population.model_ids()))
        )
        pool.submit(task)
        self.state.max_in_flight = max(self.state.max_in_flight, pool.in_flight)

    def _record(self, result: TaskResult) -> CatalogRecord:
        if result.model is not None:
            record = self.catalog.append(result.model)
        else:
            record = self.catalog.append_failed(
                result.task.genome, result.task.hp, result.wall_seconds
            )
        self.state.population.push(record.genome, record.valid_nll, record.id)
        self.state.strategy.tell(record.hp, record.valid_nll)
        DeuqLogger.info(
            f"Model {record.id} ({record.status}): valid NLL {record.valid_nll:.5f}, "
            f"{len(self.catalog)}/{self.cfg.total_budget} done."
        )
        return record

    def run(self) -> Catalog:
        """Train `total_budget` models and return the catalog."""
        cfg, strategy = self.cfg, self.state.strategy
        context = TrainContext(self.splits, cfg.arch, cfg.epochs)
        DeuqLogger.info(
            f"Starting {cfg.strategy} search: budget {cfg.total_budget}, {cfg.workers} workers, "
            f"population {cfg.population_size}, sample {cfg.sample_size}."
        )
        with WorkerPool(context, cfg.workers, cfg.deterministic) as pool:
            first = zip(
                strategy.initial_genomes(cfg.workers),
                strategy.initial_hps(cfg.workers),
                strict=True,
            )
            for proposal, hp in first:
                self._submit(pool, proposal, hp)
            while len(self.catalog) < cfg.total_budget:
                results = pool.wait()
                for result in results:
                    self._record(result)
                n_new = min(len(results), cfg.total_budget - len(self.state.submissions))
                if n_new > 0:
                    for hp in strategy.next_hps(n_new):
                        self._submit(pool, strategy.child_genome(self.state.population), hp)
        return self.catalog


def write_search_meta(
    directory: Path,
    catalog: Catalog,
    cfg: SearchConfig,
    splits: DataSplits,
    wall_seconds: float,
    config: dict | None = None,
) -> SearchMeta:
    """Write `search_meta.json` beside the catalog."""
    n_ok = len(catalog.ok_records())
    meta = SearchMeta(
        seed=cfg.rng_seed,
        budget=cfg.total_budget,
        strategy=cfg.strategy,
        wall_seconds=wall_seconds,
        input_dim=splits.input_dim,
        output_dim=splits.output_dim,
        n_ok=n_ok,
        n_failed=len(catalog) - n_ok,
        catalog_digest=catalog.digest(),
        config=config if config is not None else {"search": cfg.to_dict()},
    )
    write_json(meta.asdict, Path(directory) / SEARCH_META_FILENAME)
    return meta


def run_search(
    cfg: SearchConfig,
    splits: DataSplits,
    directory: Path | None = None,
    overwrite: bool = False,
    config: dict | None = None,
) -> Catalog:
    """Generate a catalog of `cfg.total_budget` trained models.

    Args:
        cfg: search settings.
        splits: standardized data splits.
        directory: where to write `catalog.jsonl`, the weights files and `search_meta.json`;
            in memory when None.
        overwrite: replace an existing catalog in `directory`.
        config: full run configuration recorded in `search_meta.json`.
    """
    watch = Stopwatch()
    catalog = Catalog.create(directory, overwrite) if directory is not None else Catalog()
    AgingSearch(cfg, splits, catalog).run()
    DeuqLogger.info(
        f"Search finished in {watch}: {len(catalog.ok_records())} of {len(catalog)} models ok."
    )
    if directory is not None:
        write_search_meta(directory, catalog, cfg, splits, watch.seconds, config)
    return catalog
