"""Sweep orchestration, CSV serialization, and cross-validation."""

from .crosscheck import CheckRow, CrossCheckReport, cross_validate
from .csvio import (COLUMNS, SCHEMA_VERSION, ResultRow, SchemaError,
                    read_rows, write_rows)
from .sweeps import (DEFAULT_RATIO_GRID, FIGURES, SweepCase, SweepError,
                     SweepSpec, figure_spec, run_sweep)

__all__ = [
    "COLUMNS",
    "SCHEMA_VERSION",
    "CheckRow",
    "CrossCheckReport",
    "DEFAULT_RATIO_GRID",
    "FIGURES",
    "ResultRow",
    "SchemaError",
    "SweepCase",
    "SweepError",
    "SweepSpec",
    "cross_validate",
    "figure_spec",
    "read_rows",
    "run_sweep",
    "write_rows",
]
