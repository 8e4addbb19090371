"""Rendering for fran-tradeoff result CSVs.

The core package writes one versioned CSV per figure; this package turns
those CSVs into PNG + SVG plots.  It depends only on the documented CSV
schema (version comment plus a fixed nine-column header), not on the
core package itself, so the two install and run independently.
"""

from .csvread import COLUMNS, SCHEMA_VERSION, ResultRow, SchemaError, read_rows
from .render import RenderError, RenderReport, SeriesInfo, render_figure

__all__ = [
    "COLUMNS",
    "SCHEMA_VERSION",
    "ResultRow",
    "SchemaError",
    "read_rows",
    "RenderError",
    "RenderReport",
    "SeriesInfo",
    "render_figure",
]

__version__ = "0.1.0"
