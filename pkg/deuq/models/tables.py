"""Datamodels for the tables deuq reads and writes.

Includes:

- CatalogTable
- CurvesTable
- ScoreReportTable
- numeric_dataset_schema
"""

from __future__ import annotations

from typing import ClassVar

import numpy as np
import pandas as pd
import pandera as pa
from pandera import DataFrameModel, Field
from pandera.typing import Series

CURVES_COLUMNS: list[str] = ["x", "mu", "var_total", "var_aleatoric", "var_epistemic"]


class CatalogTable(DataFrameModel):
    """Datamodel of the catalog as a table, one row per trained model.

    Attributes:
        id (int): model id, unique.
        status (str): "ok" or "failed".
        valid_nll (float): lowest validation NLL; +inf for failed models.
        weights_path (str | None): weights file relative to the catalog directory.
        wall_seconds (float): training time.
    """

    id: Series[int] = Field(coerce=True, unique=True, ge=0)
    status: Series[str] = Field(isin=["ok", "failed"])
    valid_nll: Series[float] = Field(coerce=True, nullable=False)
    weights_path: Series[str] = Field(nullable=True)
    wall_seconds: Series[float] = Field(coerce=True, ge=0)

    @pa.dataframe_check
    def ok_models_are_finite(cls, df: pd.DataFrame) -> Series[bool]:
        """Models with status ok have a finite validation NLL."""
        return (df["status"] != "ok") | np.isfinite(df["valid_nll"])


class CurvesTable(DataFrameModel):
    """Datamodel of `curves.csv`: ensemble predictions on a 1-D grid in original units.

    Attributes:
        x (float): grid point, strictly increasing.
        mu (float): ensemble mean.
        var_total (float): aleatoric plus epistemic variance.
        var_aleatoric (float): mean of member variances.
        var_epistemic (float): spread of member means.
    """

    x: Series[float] = Field(coerce=True)
    mu: Series[float] = Field(coerce=True)
    var_total: Series[float] = Field(coerce=True, ge=0)
    var_aleatoric: Series[float] = Field(coerce=True, ge=0)
    var_epistemic: Series[float] = Field(coerce=True, ge=0)

    class Config:
        """Config for CurvesTable."""

        strict = True
        ordered = True

    @pa.check("x")
    def strictly_increasing(cls, x: Series[float]) -> bool:
        """Grid points are strictly increasing."""
        return bool((np.diff(x.to_numpy()) > 0).all())

    @pa.dataframe_check
    def variances_add_up(cls, df: pd.DataFrame) -> Series[bool]:
        """var_total is the sum of its two parts."""
        parts = df["var_aleatoric"] + df["var_epistemic"]
        close = np.isclose(df["var_total"], parts, rtol=1e-12, atol=1e-12)
        return pd.Series(close, index=df.index)


class ScoreReportTable(DataFrameModel):
    """Datamodel of `report.jsonl` rows.

    Attributes:
        nll (float): mean Gaussian NLL in original units.
        rmse (float): root mean squared error in original units.
        n (int): number of scored points.
        dataset (str): dataset name.
        seed (int): run seed.
        split (str): scored split.
        model (str): "ensemble" or a single model label.
    """

    nll: Series[float] = Field(coerce=True)
    rmse: Series[float] = Field(coerce=True, ge=0)
    n: Series[int] = Field(coerce=True, gt=0)
    dataset: Series[str]
    seed: Series[int] = Field(coerce=True)
    split: Series[str]
    model: Series[str]

    class Config:
        """Config for ScoreReportTable."""

        coerce = True
        unique: ClassVar[list[str]] = ["dataset", "seed", "split", "model"]


def numeric_dataset_schema(columns: list[str], name: str = "dataset") -> pa.DataFrameSchema:
    """Schema of a regression dataset: every column a non-missing finite float."""
    return pa.DataFrameSchema(
        {
            col: pa.Column(
                float,
                nullable=False,
                coerce=True,
                checks=pa.Check(np.isfinite, error="finite"),
            )
            for col in columns
        },
        strict=True,
        name=name,
    )
