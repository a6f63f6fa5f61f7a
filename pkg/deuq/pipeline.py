"""Run-level operations behind the command line: search, select, eval, export-curves, sweep.

Each operation works on a run directory laid out as:

```
out/
    catalog.jsonl
    model_<id>.json
    search_meta.json
    ensemble.json
    report.jsonl
    report.txt
    curves.csv
    deuq.info.log
    deuq.debug.log
```

`search_meta.json` records the full run configuration so later operations rebuild exactly the
same data splits and standardization.

Usage:

```python
from deuq.pipeline import cmd_search, cmd_select, cmd_eval

config = load_run_config(Path("config.json"))
cmd_search(config)
cmd_select(Path(config.output_dir), k=5)
cmd_eval(Path(config.output_dir))
```
"""

from __future__ import annotations

import copy
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from .configs import RunConfig, load_run_config
from .data.io import load_splits
from .data.splits import DataSplits
from .data.standardize import Standardizer, destandardize_prediction, fit_standardizer
from .ensemble.diversity import diversity_score
from .ensemble.predict import EnsemblePrediction, predict_ensemble
from .ensemble.select import Ensemble, greedy_select, top_k_select
from .errors import ConfigError, UnsupportedOperationError
from .logger import DeuqLogger
from .metrics import mean_and_se, score_prediction, seed_sweep
from .models.records import EnsembleManifest, ScoreReport, SearchMeta
from .models.tables import CURVES_COLUMNS, CurvesTable, ScoreReportTable
from .nn.forward import GaussianPrediction
from .params import (
    CURVE_EXTENSION,
    CURVE_POINTS,
    CURVES_FILENAME,
    ENSEMBLE_FILENAME,
    REPORT_JSONL_FILENAME,
    REPORT_TXT_FILENAME,
    SEARCH_META_FILENAME,
    SWEEP_JSONL_FILENAME,
    SWEEP_TXT_FILENAME,
)
from .search.agebo import run_search
from .search.catalog import Catalog
from .utils.io_dict import load_dict, write_json
from .utils.io_table import format_table, write_table
from .utils.models import validate_df_to_model


@dataclass(frozen=True)
class RunData:
    """Data of a run: raw splits, the standardizer fitted on train and standardized splits."""

    raw: DataSplits
    standardizer: Standardizer
    splits: DataSplits

    @classmethod
    def from_config(cls, config: RunConfig) -> RunData:
        """Load, split and standardize the configured dataset."""
        raw = load_splits(config.dataset, config.split)
        standardizer = fit_standardizer(raw.train)
        return cls(raw=raw, standardizer=standardizer, splits=standardizer.apply_splits(raw))


@dataclass(frozen=True)
class Run:
    """A finished search loaded from its run directory."""

    directory: Path
    config: RunConfig
    meta: SearchMeta
    data: RunData
    catalog: Catalog

    @classmethod
    def load(cls, directory: Path) -> Run:
        """Read `search_meta.json` and the catalog, and rebuild the run's data.

        Raises:
            FileNotFoundError: if the directory holds no finished search.
        """
        directory = Path(directory)
        meta_path = directory / SEARCH_META_FILENAME
        if not meta_path.is_file():
            msg = f"No search found in {directory}: missing {meta_path.name}."
            DeuqLogger.error(msg)
            raise FileNotFoundError(msg)
        meta = SearchMeta(**load_dict(meta_path))
        config = load_run_config(meta.config)
        return cls(
            directory=directory,
            config=config,
            meta=meta,
            data=RunData.from_config(config),
            catalog=Catalog.load(directory),
        )

    def member_predictions(
        self, model_ids: list[int], x: np.ndarray
    ) -> dict[int, GaussianPrediction]:
        """Standardized-unit predictions of catalog models on standardized inputs."""
        return self.catalog.predict(
            model_ids, x, self.config.search.arch, self.data.splits.output_dim
        )

    def predict(self, model_ids: list[int], x_std: np.ndarray) -> EnsemblePrediction:
        """Ensemble prediction in original target units (members may repeat)."""
        predictions = self.member_predictions(model_ids, x_std)
        ensemble = predict_ensemble([predictions[i] for i in model_ids])
        s2 = np.square(self.data.standardizer.y_std)
        mu, _ = destandardize_prediction(ensemble.mu, ensemble.var_total, self.data.standardizer)
        return EnsemblePrediction(
            mu=mu,
            var_aleatoric=ensemble.var_aleatoric * s2,
            var_epistemic=ensemble.var_epistemic * s2,
            var_total=ensemble.var_aleatoric * s2 + ensemble.var_epistemic * s2,
        )

    def load_ensemble(self) -> EnsembleManifest:
        """Read `ensemble.json`."""
        path = self.directory / ENSEMBLE_FILENAME
        if not path.is_file():
            msg = f"No ensemble found in {self.directory}: run `deuq select` first."
            DeuqLogger.error(msg)
            raise FileNotFoundError(msg)
        return EnsembleManifest(**load_dict(path))


def cmd_search(config: RunConfig, overwrite: bool = False) -> Catalog:
    """Generate the catalog of a run in `config.output_dir`."""
    directory = Path(config.output_dir)
    data = RunData.from_config(config)
    return run_search(
        config.search, data.splits, directory, overwrite=overwrite, config=config.to_dict()
    )


def cmd_select(
    directory: Path, k: int | None = None, method: str | None = None
) -> EnsembleManifest:
    """Select an ensemble from a run's catalog and write `ensemble.json`.

    Args:
        directory: run directory.
        k: largest number of unique members; defaults to the run's `k`.
        method: `greedy` or `topk`; defaults to the run's `selection`.
    """
    run = Run.load(directory)
    k = k or run.config.k
    method = method or run.config.selection
    ok_ids = [r.id for r in run.catalog.require_ok()]
    valid = run.data.splits.valid
    predictions = run.member_predictions(ok_ids, valid.x)
    if method == "greedy":
        ensemble = greedy_select(run.catalog, predictions, valid.y, k)
    elif method == "topk":
        ensemble = top_k_select(run.catalog, k, predictions, valid.y)
    else:
        msg = f"Unknown selection method {method}."
        DeuqLogger.error(msg)
        raise ConfigError(msg)
    genomes = [run.catalog.get(i).genome for i in ensemble.unique_ids]
    diversity = diversity_score(genomes) if len(genomes) > 1 else 0.0
    manifest = ensemble.to_manifest(diversity)
    write_json(manifest.asdict, Path(directory) / ENSEMBLE_FILENAME)
    DeuqLogger.info(
        f"Selected {len(manifest.unique_ids)} unique models {manifest.unique_ids} ({method}): "
        f"valid NLL {manifest.valid_nll:.5f}, diversity {manifest.diversity:.4f}."
    )
    return manifest


def cmd_eval(directory: Path, split: str = "test") -> list[ScoreReport]:
    """Score the ensemble and the best single model in original units.

    Appends both rows to `report.jsonl` and writes them to `report.txt`.

    Raises:
        CatalogReferenceError: if the ensemble names a model that is not in the catalog.
    """
    run = Run.load(directory)
    ensemble = Ensemble.from_manifest(run.load_ensemble())
    for model_id in ensemble.unique_ids:
        run.catalog.get(model_id)
    data = run.data.splits.get(split)
    y = run.data.raw.get(split).y
    best = run.catalog.best().id
    reports = []
    for label, ids in (("ensemble", list(ensemble.members)), (f"best_single_{best}", [best])):
        prediction = run.predict(ids, data.x)
        reports.append(
            score_prediction(
                prediction.mu,
                prediction.var_total,
                y,
                dataset=run.config.dataset.label,
                seed=run.config.search.rng_seed,
                split=split,
                model=label,
            )
        )
    df = validate_df_to_model(pd.DataFrame([r.asdict for r in reports]), ScoreReportTable)
    write_table(df, Path(directory) / REPORT_JSONL_FILENAME, append=True)
    write_table(df, Path(directory) / REPORT_TXT_FILENAME)
    DeuqLogger.info(f"Scores on {split}:\n{format_table(df)}")
    return reports


def curve_grid(x: np.ndarray, points: int = CURVE_POINTS, extension: float = CURVE_EXTENSION):
    """`points` equally spaced values over the range of `x` widened by `extension` per side."""
    lo, hi = float(np.min(x)), float(np.max(x))
    # a single test input still gets a grid of increasing points around it
    width = hi - lo if hi > lo else max(abs(lo), 1.0)
    pad = width * extension
    return np.linspace(lo - pad, hi + pad, points)


def cmd_export_curves(directory: Path, points: int = CURVE_POINTS) -> Path:
    """Write ensemble mean and variances on a 1-D grid to `curves.csv`.

    The grid spans the test inputs extended by a quarter of their range on both sides.

    Raises:
        UnsupportedOperationError: if the dataset does not have exactly one feature and one
            target.
    """
    run = Run.load(directory)
    raw = run.data.raw
    if raw.input_dim != 1 or raw.output_dim != 1:
        msg = (
            f"Curves need one input and one output column; {run.config.dataset.label} has "
            f"{raw.input_dim} inputs and {raw.output_dim} outputs."
        )
        DeuqLogger.error(msg)
        raise UnsupportedOperationError(msg)
    ensemble = Ensemble.from_manifest(run.load_ensemble())
    grid = curve_grid(raw.test.x, points)
    prediction = run.predict(list(ensemble.members), run.data.standardizer.x.apply(grid[:, None]))
    df = pd.DataFrame(
        {
            "x": grid,
            "mu": prediction.mu[:, 0],
            "var_total": prediction.var_total[:, 0],
            "var_aleatoric": prediction.var_aleatoric[:, 0],
            "var_epistemic": prediction.var_epistemic[:, 0],
        },
        columns=CURVES_COLUMNS,
    )
    df = validate_df_to_model(df, CurvesTable)
    path = write_table(df, Path(directory) / CURVES_FILENAME, float_format="%.17g")
    DeuqLogger.info(f"Wrote {len(df)} curve points to {path}.")
    return path


def seed_config(config: RunConfig, offset: int) -> RunConfig:
    """Copy of `config` with search and split seeds shifted by `offset`, writing to
    `<output_dir>/seed_<offset>`.
    """
    data = copy.deepcopy(config.to_dict())
    data["search"]["rng_seed"] += offset
    data["split"]["rng_seed"] += offset
    data["output_dir"] = str(Path(config.output_dir) / f"seed_{offset}")
    return load_run_config(data)


def cmd_sweep(config: RunConfig, n_seeds: int, overwrite: bool = False) -> pd.DataFrame:
    """Search, select and evaluate the run for `n_seeds` seeds.

    Writes every seed's scores to `sweep.jsonl` and the mean and standard error of the ensemble
    scores to `sweep.txt` in `config.output_dir`.
    """
    rows: list[dict] = []

    def _run_seed(offset: int) -> float:
        seeded = seed_config(config, offset)
        DeuqLogger.info(f"Sweep seed {offset + 1}/{n_seeds} in {seeded.output_dir}.")
        cmd_search(seeded, overwrite=overwrite)
        cmd_select(Path(seeded.output_dir))
        reports = cmd_eval(Path(seeded.output_dir))
        rows.extend(r.asdict for r in reports)
        return reports[0].nll

    nll = seed_sweep(_run_seed, n_seeds)
    df = validate_df_to_model(pd.DataFrame(rows), ScoreReportTable)
    out = Path(config.output_dir)
    write_table(df, out / SWEEP_JSONL_FILENAME)
    rmse = mean_and_se(df.loc[df["model"] == "ensemble", "rmse"].to_numpy())
    summary = pd.DataFrame(
        [
            {"metric": "nll", "mean": nll.mean, "se": nll.se, "n": len(nll.scores)},
            {"metric": "rmse", "mean": rmse.mean, "se": rmse.se, "n": len(rmse.scores)},
        ]
    )
    write_table(summary, out / SWEEP_TXT_FILENAME)
    DeuqLogger.info(f"Sweep summary over {n_seeds} seeds:\n{format_table(summary)}")
    return summary
