from pathlib import Path

import numpy as np
import pandas as pd
import pytest

pd.set_option("display.max_rows", 500)
pd.set_option("display.max_columns", 500)
pd.set_option("display.width", 50000)


@pytest.fixture(scope="session", autouse=True)
def _test_logging(test_out_dir):
    from deuq import setup_logging

    setup_logging(
        info_log_filename=test_out_dir / "tests.info.log",
        debug_log_filename=test_out_dir / "tests.debug.log",
    )


@pytest.fixture(scope="session")
def base_dir():
    return Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def test_dir():
    return Path(__file__).resolve().parent


@pytest.fixture(scope="session")
def test_data_dir(test_dir):
    return test_dir / "data"


@pytest.fixture(scope="session")
def test_out_dir(test_dir):
    _test_out_dir = Path(test_dir) / "out"

    if not _test_out_dir.exists():
        _test_out_dir.mkdir()

    return _test_out_dir


@pytest.fixture(scope="session", autouse=True)
def _clear_out_dir(test_out_dir):
    import shutil

    for item in test_out_dir.iterdir():
        if item.is_dir():
            shutil.rmtree(item)
        else:
            item.unlink()


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture(scope="session")
def linear_splits():
    """Standardized splits of y = 3x + 1 without noise, 64 training rows."""
    from deuq.data import DataSplits, Dataset, fit_standardizer

    def _line(x: np.ndarray) -> Dataset:
        x = x.reshape(-1, 1)
        return Dataset(x, 3.0 * x + 1.0, "line")

    raw = DataSplits(
        train=_line(np.linspace(-1.0, 1.0, 64)),
        valid=_line(np.linspace(-0.95, 0.95, 16)),
        test=_line(np.linspace(-0.9, 0.9, 8)),
    )
    return fit_standardizer(raw.train).apply_splits(raw)


@pytest.fixture(scope="session")
def small_arch():
    from deuq.configs import ArchSpaceConfig

    return ArchSpaceConfig(
        num_variable_nodes=3, units_choices=[4, 8], activation_choices=["relu", "tanh"]
    )


@pytest.fixture(scope="session")
def small_run_config_dict():
    """Toy run that trains a handful of small networks for a few epochs."""
    return {
        "dataset": {"source": "toy"},
        "split": {"rng_seed": 0},
        "search": {
            "population_size": 3,
            "sample_size": 2,
            "workers": 2,
            "total_budget": 6,
            "rng_seed": 1,
            "epochs": 4,
            "deterministic": True,
            "arch": {
                "num_variable_nodes": 3,
                "units_choices": [8, 16],
                "activation_choices": ["relu", "tanh"],
            },
            "hp": {"b_max": 64},
        },
        "k": 3,
        "selection": "greedy",
    }


@pytest.fixture(scope="session")
def small_run_dir(test_out_dir, small_run_config_dict):
    """Run directory holding a finished search of the small toy run."""
    from deuq.configs import load_run_config
    from deuq.pipeline import cmd_search

    out_dir = test_out_dir / "small_run"
    config = load_run_config(small_run_config_dict, overrides={"output_dir": str(out_dir)})
    cmd_search(config, overwrite=True)
    return out_dir
