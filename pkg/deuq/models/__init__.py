"""Data models for records and tables."""

from .records import CatalogRecord, EnsembleManifest, HpConfig, ScoreReport, SearchMeta
from .tables import CURVES_COLUMNS, CatalogTable, CurvesTable, ScoreReportTable

__all__ = [
    "CURVES_COLUMNS",
    "CatalogRecord",
    "CatalogTable",
    "CurvesTable",
    "EnsembleManifest",
    "HpConfig",
    "ScoreReport",
    "ScoreReportTable",
    "SearchMeta",
]
