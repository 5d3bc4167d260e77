"""CSV ingestion for paired observations.

Real records are messy: missing markers, malformed numbers, short rows.
The loader keeps every row whose two selected fields both parse, counts
the rest, and never silently imputes.
"""

import csv
import math
from dataclasses import dataclass

from .errors import DataError, DomainError
from .ranks import PairedSample

DEFAULT_MISSING = ("", "NA", "-")


@dataclass(frozen=True)
class DatasetConfig:
    """Where to read and which columns form the (x, y) pair.

    Columns may be header names (str) or 0-based positions (int).
    """

    path: str
    column_x: str | int
    column_y: str | int
    missing_markers: tuple[str, ...] = DEFAULT_MISSING
    delimiter: str = ","

    def __post_init__(self):
        if self.column_x == self.column_y:
            raise DataError("missing-column", "x and y columns must be distinct")
        if len(self.delimiter) != 1:
            raise DataError("unreadable-file", f"delimiter must be a single character, got {self.delimiter!r}")
        object.__setattr__(self, "missing_markers", tuple(self.missing_markers))


@dataclass(frozen=True)
class LoadResult:
    sample: PairedSample
    dropped: int


def _column_index(header: list[str], column: str | int, path: str) -> int:
    if isinstance(column, bool) or not isinstance(column, (int, str)):
        raise DataError("missing-column", f"column selector must be str or int, got {column!r}")
    if isinstance(column, int):
        if column < 0 or (header and column >= len(header)):
            raise DataError("missing-column", f"{path}: no column at position {column}")
        return column
    try:
        return header.index(column)
    except ValueError:
        raise DataError("missing-column", f"{path}: no column named {column!r}") from None


def _parse_field(raw: str, markers: tuple[str, ...]) -> float | None:
    text = raw.strip()
    if text in markers:
        return None
    try:
        value = float(text)
    except ValueError:
        return None
    # "nan" and "inf" parse, but are not observations
    return value if math.isfinite(value) else None


def load_paired_csv(config: DatasetConfig) -> LoadResult:
    """Read (x, y) pairs from a delimited text file.

    The first row is treated as a header when either column is selected
    by name; with integer selectors a header row is still skipped if it
    does not parse as two numbers. Rows where either field is missing,
    unparseable, or absent are dropped and counted.
    """
    by_name = isinstance(config.column_x, str) or isinstance(config.column_y, str)
    try:
        with open(config.path, newline="") as handle:
            rows = list(csv.reader(handle, delimiter=config.delimiter))
    except OSError as exc:
        raise DataError("unreadable-file", f"{config.path}: {exc}") from exc

    if not rows:
        raise DataError("no-rows", f"{config.path}: file is empty")

    if by_name:
        header, body = [h.strip() for h in rows[0]], rows[1:]
    else:
        header, body = rows[0], rows
    ix = _column_index(header, config.column_x, config.path)
    iy = _column_index(header, config.column_y, config.path)

    xs, ys, dropped = [], [], 0
    for row in body:
        if len(row) <= max(ix, iy):
            dropped += 1
            continue
        x = _parse_field(row[ix], config.missing_markers)
        y = _parse_field(row[iy], config.missing_markers)
        if x is None or y is None:
            dropped += 1
            continue
        xs.append(x)
        ys.append(y)

    if not xs:
        raise DataError("no-rows", f"{config.path}: no usable rows after dropping {dropped}")
    try:
        sample = PairedSample(xs, ys)
    except DomainError as exc:
        raise DataError("invalid-values", f"{config.path}: {exc}") from exc
    return LoadResult(sample=sample, dropped=dropped)
