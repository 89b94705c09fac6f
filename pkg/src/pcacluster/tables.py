"""Shared delimited-text emission helpers.

Every numeric cell in emitted tables goes through format_float, which
uses repr: the shortest decimal form that round-trips to the same
float64 (never more than 17 significant digits). Files produced from
the same values are therefore byte-identical across runs.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Sequence


def format_float(x: float) -> str:
    return repr(float(x))


def write_rows(path: str | Path, header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(list(header))
        for row in rows:
            writer.writerow(list(row))


def write_labeled_matrix(
    path: str | Path,
    entries,
    row_header: str,
    row_labels: Sequence[str],
    col_labels: Sequence[str],
) -> None:
    """Matrix as delimited text: one label column plus one column per component."""
    rows = (
        [label, *(format_float(v) for v in row)]
        for label, row in zip(row_labels, entries)
    )
    write_rows(path, [row_header, *col_labels], rows)
