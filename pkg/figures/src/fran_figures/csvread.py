"""Reader for the versioned result-CSV schema.

Result files start with a ``# fran-tradeoff csv schema v<n>`` comment
followed by a fixed nine-column header.  This module validates both
before yielding rows, so renamed or reordered columns fail loudly with
the offending column names instead of producing silently wrong plots.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

__all__ = [
    "SCHEMA_VERSION",
    "COLUMNS",
    "SchemaError",
    "ResultRow",
    "read_rows",
]

SCHEMA_VERSION = 1
_VERSION_PREFIX = "# fran-tradeoff csv schema v"
COLUMNS = ("swept_name", "swept_value", "policy", "mode", "metric",
           "value", "std_error", "n", "error")


class SchemaError(ValueError):
    """The file does not carry the expected schema version or columns."""


@dataclass(frozen=True)
class ResultRow:
    """One (grid point, policy, mode, metric) result.

    ``value``/``std_error``/``n`` are None when the metric failed to
    evaluate, in which case ``error`` holds the reason; analytic rows
    leave ``std_error`` and ``n`` as None.
    """

    swept_name: str
    swept_value: float
    policy: str
    mode: str
    metric: str
    value: float | None = None
    std_error: float | None = None
    n: int | None = None
    error: str = ""


def _parse_float(text: str) -> float | None:
    return float(text) if text else None


def read_rows(path: str | Path) -> list[ResultRow]:
    """Read and validate a result CSV.

    Raises :class:`SchemaError` on a missing/mismatched version comment
    or a header that differs from the expected columns.
    """
    path = Path(path)
    with path.open(encoding="utf-8", newline="") as handle:
        first = handle.readline().rstrip("\n")
        if not first.startswith(_VERSION_PREFIX):
            raise SchemaError(
                f"{path} lacks the schema version comment "
                f"'{_VERSION_PREFIX}<n>'")
        version_text = first[len(_VERSION_PREFIX):]
        try:
            version = int(version_text)
        except ValueError:
            raise SchemaError(
                f"{path} has an unparsable schema version "
                f"{version_text!r}") from None
        if version != SCHEMA_VERSION:
            raise SchemaError(
                f"{path} uses schema v{version}; this reader supports "
                f"v{SCHEMA_VERSION}")
        reader = csv.reader(handle)
        try:
            header = tuple(next(reader))
        except StopIteration:
            raise SchemaError(f"{path} has no header row") from None
        if header != COLUMNS:
            missing = [c for c in COLUMNS if c not in header]
            extra = [c for c in header if c not in COLUMNS]
            parts = []
            if missing:
                parts.append(f"missing columns: {', '.join(missing)}")
            if extra:
                parts.append(f"unexpected columns: {', '.join(extra)}")
            if not parts:
                parts.append("columns out of order")
            raise SchemaError(f"{path} header invalid ({'; '.join(parts)})")
        rows = []
        for record in reader:
            if len(record) != len(COLUMNS):
                raise SchemaError(
                    f"{path}: row {reader.line_num} has {len(record)} "
                    f"fields, expected {len(COLUMNS)}")
            n_text = record[7]
            rows.append(ResultRow(
                swept_name=record[0],
                swept_value=float(record[1]),
                policy=record[2],
                mode=record[3],
                metric=record[4],
                value=_parse_float(record[5]),
                std_error=_parse_float(record[6]),
                n=int(n_text) if n_text else None,
                error=record[8],
            ))
    return rows
