"""Helper functions for reading and writing tables to reduce boilerplate."""

from pathlib import Path

import pandas as pd

from ..logger import DeuqLogger


class FileReadError(Exception):
    """Raised when there is an error reading a file."""


def write_table(
    df: pd.DataFrame,
    filename: Path,
    overwrite: bool = True,
    append: bool = False,
    **kwargs,
) -> Path:
    """Write a dataframe to a csv, jsonl or aligned plain-text file.

    Args:
        df (pd.DataFrame): dataframe to write.
        filename (Path): filename to write to. Format is chosen from the suffix.
        overwrite (bool): whether to overwrite the file if it exists. Defaults to True.
        append (bool): append rows instead of replacing the file. Only for jsonl.
        kwargs: additional arguments to pass to the writer.
    """
    filename = Path(filename)
    if filename.exists() and not (overwrite or append):
        msg = f"File {filename} already exists and overwrite is False."
        raise FileExistsError(msg)

    filename.parent.mkdir(parents=True, exist_ok=True)
    DeuqLogger.debug(f"Writing {len(df)} rows to {filename}.")

    if filename.suffix == ".csv":
        df.to_csv(filename, index=False, **kwargs)
    elif filename.suffix == ".jsonl":
        mode = "a" if append else "w"
        with filename.open(mode, encoding="utf-8") as f:
            if len(df):
                text = df.to_json(orient="records", lines=True, double_precision=15, **kwargs)
                f.write(text.rstrip("\n") + "\n")
    elif filename.suffix == ".txt":
        with filename.open("w", encoding="utf-8") as f:
            f.write(format_table(df, **kwargs) + "\n")
    else:
        msg = f"Filetype {filename.suffix} not implemented."
        raise NotImplementedError(msg)
    return filename


def format_table(df: pd.DataFrame, float_format: str = "{:.4f}") -> str:
    """Render a dataframe as an aligned plain-text table."""
    return df.to_string(index=False, float_format=float_format.format)


def read_table(filename: Path, **kwargs) -> pd.DataFrame:
    """Read a csv or jsonl file into a dataframe."""
    filename = Path(filename)
    if not filename.exists():
        msg = f"Input file {filename} does not exist."
        raise FileNotFoundError(msg)
    if filename.stat().st_size == 0:
        msg = f"Input file {filename} is empty."
        raise FileReadError(msg)
    if filename.suffix == ".csv":
        return pd.read_csv(filename, **kwargs)
    if filename.suffix == ".jsonl":
        return pd.read_json(filename, lines=True, **kwargs)
    msg = f"Filetype {filename.suffix} not implemented."
    raise NotImplementedError(msg)
