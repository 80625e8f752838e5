"""
normalize.py

Reading and normalization of measure files.

Two formats are accepted:
- CSV with header `rate,mass` or `rate,count` (header case and surrounding
  spaces are ignored). With `count`, masses are count/n and n = Σ counts;
  with `mass`, n must be supplied by the caller.
- JSON `{"n": int, "atoms": [{"rate": float, "mass": float}]}`.

Errors name the offending line of the file.
"""

import io
import json
import re
from pathlib import Path
from typing import Optional

import pandas as pd
from pydantic import ValidationError

from analysis.errors import MeasureFileError
from analysis.rate_measure import from_atoms
from dependencies import logger
from schemas.measure import MeasureFile, RateMeasure

# Header aliases mapped to canonical column names
COLUMN_MAP = {
    "rate": "rate",
    "lambda": "rate",
    "mass": "mass",
    "count": "count",
    "multiplicity": "count",
}

# Lines before the data rows, counting from the first non-blank line
HEADER_LINES = 1

# Tokenizer errors name the offending file line as "line <k>"
PARSER_LINE = re.compile(r"line (\d+)")


def normalize_headers(df: pd.DataFrame) -> pd.DataFrame:
    """
    Normalize DataFrame column names for consistency.

    - Lowercases column names
    - Strips surrounding whitespace
    - Maps known aliases to canonical names using COLUMN_MAP
    """
    df.columns = [str(col).strip().lower() for col in df.columns]
    df.rename(columns=COLUMN_MAP, inplace=True)
    return df


def check_required_columns(df: pd.DataFrame, path) -> str:
    """
    Ensure a `rate` column and exactly one of `mass` / `count` are present.

    Returns:
        str: The weight column found, "mass" or "count".

    Raises:
        MeasureFileError: On a missing or ambiguous column (reported on line 1).
    """
    if "rate" not in df.columns:
        raise MeasureFileError(path, 1, "missing required column 'rate'")
    weights = [col for col in ("mass", "count") if col in df.columns]
    if len(weights) != 1:
        raise MeasureFileError(path, 1, "header needs exactly one of 'mass' or 'count'")
    return weights[0]


def is_blank(cell) -> bool:
    return not isinstance(cell, str) or not cell.strip()


def parse_cell(cell) -> Optional[float]:
    """Exact float value of a text cell; None for a missing or non-numeric cell."""
    if is_blank(cell):
        return None
    try:
        return float(cell.strip())
    except ValueError:
        return None


def normalize_numeric(df: pd.DataFrame, column: str, path) -> pd.Series:
    """
    Convert a column to floats, reporting the first unparsable or missing cell.

    The frame index must hold file line numbers.

    Raises:
        MeasureFileError: With the file line of the first bad cell.
    """
    values = df[column].map(parse_cell)
    bad = values.isna()
    if bad.any():
        line = int(values.index[bad.to_numpy()][0])
        cell = df[column].loc[line]
        if is_blank(cell):
            raise MeasureFileError(path, line, f"missing {column} value")
        raise MeasureFileError(path, line, f"{column} value {cell!r} is not a number")
    return values.astype(float)


def read_text(path) -> str:
    """
    Decode a file as UTF-8 (a leading byte order mark is dropped).

    Raises:
        MeasureFileError: On invalid UTF-8, naming the line of the first bad byte.
    """
    raw = Path(path).read_bytes()
    try:
        return raw.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        line = raw[: exc.start].count(b"\n") + 1
        raise MeasureFileError(path, line, "file is not valid UTF-8 text") from exc


def read_csv_lines(path) -> pd.DataFrame:
    """
    Read a CSV file as text cells indexed by file line number.

    The header becomes the column names and blank lines are dropped. A row
    with more fields than the header is an error; a row with fewer has
    missing cells.

    Raises:
        MeasureFileError: On an empty file, invalid UTF-8 or a row wider
            than the header.
    """
    text = read_text(path)
    try:
        cells = pd.read_csv(
            io.StringIO(text),
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
            skipinitialspace=True,
        )
    except pd.errors.EmptyDataError as exc:
        raise MeasureFileError(path, 1, "file is empty") from exc
    except pd.errors.ParserError as exc:
        match = PARSER_LINE.search(str(exc))
        line = int(match.group(1)) if match else 1
        raise MeasureFileError(path, line, "row has more fields than the header") from exc

    cells.index = cells.index + 1
    cells = cells[~cells.map(is_blank).all(axis=1)]
    if cells.empty:
        raise MeasureFileError(path, 1, "file is empty")
    header, data = cells.iloc[0], cells.iloc[HEADER_LINES:]
    return data.set_axis(["" if is_blank(name) else name for name in header], axis=1)


def read_measure_csv(path, n: Optional[int] = None) -> RateMeasure:
    """
    Read a `rate,mass` or `rate,count` CSV file into a measure.

    Args:
        path (str | Path): CSV file.
        n (int, optional): Tuple dimension for `rate,mass` files.

    Returns:
        RateMeasure: The canonical measure (duplicate rates merged).

    Raises:
        MeasureFileError: On malformed content, with the line number.
    """
    data = read_csv_lines(path)
    logger.debug(f"original measure columns: {list(data.columns)}")
    data = normalize_headers(data)
    weight_column = check_required_columns(data, path)
    if data.empty:
        raise MeasureFileError(path, 2, "no atoms")

    rates = normalize_numeric(data, "rate", path)
    weights = normalize_numeric(data, weight_column, path)
    for line, rate, weight in zip(data.index.tolist(), rates, weights):
        if not rate > 0 or rate == float("inf"):
            raise MeasureFileError(path, line, f"rate {rate!r} must be positive and finite")
        if weight_column == "count" and not (weight >= 1 and float(weight).is_integer()):
            raise MeasureFileError(path, line, f"count {weight!r} must be a positive integer")
        if weight_column == "mass" and not 0 < weight <= 1:
            raise MeasureFileError(path, line, f"mass {weight!r} must lie in (0, 1]")

    try:
        if weight_column == "count":
            counts = [int(w) for w in weights]
            total = sum(counts)
            if n is not None and n != total:
                logger.warning(f"ignoring n={n}: counts in {path} sum to {total}")
            return from_atoms(total, [(r, c / total) for r, c in zip(rates, counts)], counts)
        if n is None:
            raise MeasureFileError(path, 1, "a rate,mass file needs n from the caller")
        return from_atoms(n, zip(rates, weights))
    except ValidationError as exc:
        raise MeasureFileError(path, 1, str(exc.errors()[0]["msg"])) from exc


def read_measure_json(path) -> RateMeasure:
    """
    Read a JSON measure file.

    Raises:
        MeasureFileError: On invalid JSON (with its line) or invalid content.
    """
    text = read_text(path)
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MeasureFileError(path, exc.lineno, exc.msg) from exc
    try:
        parsed = MeasureFile.model_validate(payload)
        return from_atoms(parsed.n, [(a.rate, a.mass) for a in parsed.atoms])
    except ValidationError as exc:
        raise MeasureFileError(path, 1, str(exc.errors()[0]["msg"])) from exc


def read_measure_file(path, n: Optional[int] = None) -> RateMeasure:
    """Dispatch on the file suffix: `.json` is JSON, anything else is CSV."""
    path = Path(path)
    logger.info(f"reading measure from {path}")
    if path.suffix.lower() == ".json":
        return read_measure_json(path)
    return read_measure_csv(path, n)
