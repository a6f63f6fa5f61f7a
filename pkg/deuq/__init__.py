"""deuq: automated construction of deep ensembles with uncertainty quantification."""

__version__ = "0.1.0"

# Configure pandas 3.0+ to use object dtype for strings instead of StringDtype.
# This maintains compatibility with pandera until it fully supports StringDtype.
# This must be set before any pandas operations.
import pandas as pd

if hasattr(pd.options, "future") and hasattr(pd.options.future, "infer_string"):
    pd.options.future.infer_string = False

from .configs import RunConfig, SearchConfig, load_run_config
from .data import DataSplits, Dataset, fit_standardizer, load_splits, toy_splits
from .ensemble import Ensemble, greedy_select, predict_ensemble, top_k_select
from .logger import DeuqLogger, setup_logging
from .metrics import mean_and_se, nll_score, rmse_score, score_prediction
from .search import Catalog, run_search

__all__ = [
    "Catalog",
    "DataSplits",
    "Dataset",
    "DeuqLogger",
    "Ensemble",
    "RunConfig",
    "SearchConfig",
    "fit_standardizer",
    "greedy_select",
    "load_run_config",
    "load_splits",
    "mean_and_se",
    "nll_score",
    "predict_ensemble",
    "rmse_score",
    "run_search",
    "score_prediction",
    "setup_logging",
    "toy_splits",
    "top_k_select",
]
