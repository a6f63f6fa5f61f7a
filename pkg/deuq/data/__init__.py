"""Datasets: toy generator, csv loading, splitting and standardization."""

from .io import BENCHMARK_SHAPES, load_csv, load_splits
from .splits import Dataset, DataSplits, make_splits
from .standardize import Standardizer, destandardize_prediction, fit_standardizer
from .toy import toy_sine_generate, toy_splits

__all__ = [
    "BENCHMARK_SHAPES",
    "DataSplits",
    "Dataset",
    "Standardizer",
    "destandardize_prediction",
    "fit_standardizer",
    "load_csv",
    "load_splits",
    "make_splits",
    "toy_sine_generate",
    "toy_splits",
]
