"""Loading, validation, imputation, and standardization of indicator tables.

The on-disk format is delimited text (UTF-8): a header row whose first
column titles the region labels and whose remaining columns name the
indicators, then one row per region. An empty cell or the literal token
"NA" marks a missing value. Decimal-comma files are supported via
ParseOptions(decimal=",") combined with a non-comma delimiter.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import ValidationError

MISSING_TOKEN = "NA"

_STANDARD_TOL = 1e-10


@dataclass(frozen=True)
class ParseOptions:
    """Delimiter and decimal-separator settings for reading/writing tables."""

    delimiter: str = ","
    decimal: str = "."

    def __post_init__(self) -> None:
        if self.delimiter not in (",", ";"):
            raise ValidationError(f"unsupported delimiter {self.delimiter!r} (use ',' or ';')")
        if self.decimal not in (".", ","):
            raise ValidationError(f"unsupported decimal separator {self.decimal!r}")
        if self.delimiter == self.decimal:
            raise ValidationError("delimiter and decimal separator must differ")


@dataclass(frozen=True, eq=False)
class IndicatorTable:
    """A regions x indicators table of real values, missing cells as NaN.

    Instances are immutable: the value grid is write-locked on
    construction and every operation returns a new table.
    """

    region_labels: tuple[str, ...]
    indicator_labels: tuple[str, ...]
    values: np.ndarray
    standardized: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "region_labels", tuple(self.region_labels))
        object.__setattr__(self, "indicator_labels", tuple(self.indicator_labels))
        grid = np.array(self.values, dtype=float)
        if grid.ndim != 2:
            raise ValidationError("values must be a 2-D grid")
        n, p = grid.shape
        if n != len(self.region_labels):
            raise ValidationError(
                f"{n} value rows but {len(self.region_labels)} region labels"
            )
        if p != len(self.indicator_labels):
            raise ValidationError(
                f"{p} value columns but {len(self.indicator_labels)} indicator labels"
            )
        dup = _first_duplicate(self.region_labels)
        if dup is not None:
            raise ValidationError(f"duplicate region label {dup!r}")
        dup = _first_duplicate(self.indicator_labels)
        if dup is not None:
            raise ValidationError(f"duplicate indicator label {dup!r}")
        if self.standardized:
            if np.isnan(grid).any():
                raise ValidationError("standardized table must not contain missing values")
            mean = grid.mean(axis=0)
            sd = grid.std(axis=0, ddof=1)
            if np.max(np.abs(mean)) > _STANDARD_TOL or np.max(np.abs(sd - 1.0)) > _STANDARD_TOL:
                raise ValidationError("standardized flag set but columns are not z-scored")
        grid.flags.writeable = False
        object.__setattr__(self, "values", grid)

    @property
    def n_regions(self) -> int:
        return self.values.shape[0]

    @property
    def n_indicators(self) -> int:
        return self.values.shape[1]

    def has_missing(self) -> bool:
        return bool(np.isnan(self.values).any())


def _first_duplicate(labels: tuple[str, ...]) -> str | None:
    seen: set[str] = set()
    for label in labels:
        if label in seen:
            return label
        seen.add(label)
    return None


def _parse_cell(text: str, decimal: str) -> float:
    stripped = text.strip()
    if stripped == "" or stripped == MISSING_TOKEN:
        return math.nan
    if decimal == ",":
        stripped = stripped.replace(",", ".")
    try:
        value = float(stripped)
    except ValueError:
        raise ValidationError(f"non-numeric cell {text!r}") from None
    if not math.isfinite(value):
        raise ValidationError(f"non-numeric cell {text!r}")
    return value


def load_table(path: str | Path, options: ParseOptions = ParseOptions()) -> IndicatorTable:
    """Read a delimited-text indicator table.

    The first header cell titles the region column and is discarded;
    remaining header cells become indicator labels. Missing cells stay
    missing (NaN), they are never zero-filled here.
    """
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as handle:
            rows = list(csv.reader(handle, delimiter=options.delimiter))
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    rows = [row for row in rows if row]
    if not rows:
        raise ValidationError(f"{path}: empty file")
    header = rows[0]
    if len(header) < 3:
        raise ValidationError(f"{path}: fewer than 2 indicator columns")
    indicator_labels = tuple(cell.strip() for cell in header[1:])
    data_rows = rows[1:]
    if len(data_rows) < 3:
        raise ValidationError(f"{path}: fewer than 3 region rows")
    region_labels = []
    grid = np.empty((len(data_rows), len(indicator_labels)))
    for i, row in enumerate(data_rows):
        if len(row) != len(header):
            raise ValidationError(
                f"{path}: row {i + 2} has {len(row)} fields, expected {len(header)}"
            )
        region_labels.append(row[0].strip())
        for j, cell in enumerate(row[1:]):
            try:
                grid[i, j] = _parse_cell(cell, options.decimal)
            except ValidationError as exc:
                raise ValidationError(f"{path}: row {i + 2}, column {j + 2}: {exc}") from None
    return IndicatorTable(tuple(region_labels), indicator_labels, grid)


def write_table(
    table: IndicatorTable,
    path: str | Path,
    options: ParseOptions = ParseOptions(),
    region_column: str = "region",
) -> None:
    """Write a table in the same delimited format load_table reads.

    Floats are serialized with repr (shortest round-trip form, at most
    17 significant digits), so write -> load reproduces values
    bit-exactly. Missing entries become empty cells.
    """
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, delimiter=options.delimiter, lineterminator="\n")
        writer.writerow([region_column, *table.indicator_labels])
        for label, row in zip(table.region_labels, table.values):
            cells = ["" if math.isnan(x) else _format_value(x, options.decimal) for x in row]
            writer.writerow([label, *cells])


def _format_value(x: float, decimal: str) -> str:
    text = repr(float(x))
    if decimal == ",":
        text = text.replace(".", ",")
    return text


def impute_means(table: IndicatorTable) -> IndicatorTable:
    """Replace each missing entry by the mean of its column's present values."""
    if table.standardized:
        raise ValidationError("impute_means expects an unstandardized table")
    grid = table.values.copy()
    missing = np.isnan(grid)
    if not missing.any():
        return replace(table, values=grid)
    for j in range(grid.shape[1]):
        col_missing = missing[:, j]
        if not col_missing.any():
            continue
        if col_missing.all():
            raise ValidationError(
                f"all-missing column: indicator {table.indicator_labels[j]!r}"
            )
        grid[col_missing, j] = grid[~col_missing, j].mean()
    return replace(table, values=grid)


def standardize(table: IndicatorTable) -> IndicatorTable:
    """Z-score every column: (x - mean) / sample sd, with the n-1 divisor."""
    if table.has_missing():
        raise ValidationError("standardize requires a table without missing values")
    grid = table.values
    mean = grid.mean(axis=0)
    sd = grid.std(axis=0, ddof=1)
    zero = np.flatnonzero(sd == 0.0)
    if zero.size:
        raise ValidationError(
            f"zero-variance indicator {table.indicator_labels[zero[0]]!r}"
        )
    return replace(table, values=(grid - mean) / sd, standardized=True)
