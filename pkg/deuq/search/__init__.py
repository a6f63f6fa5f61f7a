"""Catalog generation: aging evolution, Bayesian optimization and the worker pool."""

from .agebo import AgingSearch, run_search, write_search_meta
from .catalog import Catalog
from .population import Population, replay_population, select_parent
from .strategies import STRATEGIES, make_strategy
from .surrogate import Surrogate, bo_ask, bo_tell

__all__ = [
    "STRATEGIES",
    "AgingSearch",
    "Catalog",
    "Population",
    "Surrogate",
    "bo_ask",
    "bo_tell",
    "make_strategy",
    "replay_population",
    "run_search",
    "select_parent",
    "write_search_meta",
]
