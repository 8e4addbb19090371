"""Turn one result CSV into a PNG + SVG plot.

Conventions:

* analytic rows draw as lines, Monte Carlo rows as markers with +/-1
  standard-error bars;
* each (policy, mode) pair is one series with one legend entry; the
  mode is appended to the label only when a policy appears in both
  modes, so single-mode files keep plain policy labels;
* rows whose ``error`` column is filled are skipped point-wise, and a
  series whose every point failed is dropped;
* a file with no plottable rows raises :class:`RenderError` before any
  output file is created;
* rendering is byte-stable: re-rendering an unchanged CSV rewrites
  identical PNG and SVG files (fixed SVG hash salt, no embedded dates,
  text kept as text).

Files that carry several metrics are plotted for one headline metric,
preferring delivery latency, then success probability, then ergodic
rate.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .csvread import ResultRow, read_rows

__all__ = [
    "RenderError",
    "SeriesInfo",
    "RenderReport",
    "render_figure",
]

METRIC_PRIORITY = ("delivery_latency", "success_probability",
                   "ergodic_rate", "cache_hit_probability")
FORMATS = ("png", "svg")
_MARKERS = ("o", "s", "^", "D", "v", "P", "X", "*")


class RenderError(ValueError):
    """The CSV is structurally valid but has nothing to plot."""


@dataclass(frozen=True)
class SeriesInfo:
    """One rendered series: a (policy, mode) pair of the headline metric."""

    label: str
    policy: str
    mode: str
    kind: str  # "line" (analytic) or "markers" (Monte Carlo)
    n_points: int
    with_error_bars: bool


@dataclass(frozen=True)
class RenderReport:
    """What a render produced: series drawn, legend, files written."""

    figure: str
    metric: str
    swept_name: str
    series: tuple[SeriesInfo, ...]
    legend_labels: tuple[str, ...]
    outputs: tuple[Path, ...]
    skipped_rows: int


def _headline_metric(rows: list[ResultRow]) -> str:
    present = {row.metric for row in rows}
    for metric in METRIC_PRIORITY:
        if metric in present:
            return metric
    return sorted(present)[0]


def _axis_text(name: str) -> str:
    return name.replace("_", " ")


def render_figure(csv_path: str | Path, out_dir: str | Path,
                  formats: tuple[str, ...] = FORMATS) -> RenderReport:
    """Render ``csv_path`` into ``out_dir``/<figure>.{png,svg}.

    The figure name is the CSV file stem.  Raises
    :class:`~fran_figures.csvread.SchemaError` for an invalid file and
    :class:`RenderError` when there are no plottable rows; in both
    cases no output file is created.
    """
    csv_path = Path(csv_path)
    figure = csv_path.stem
    rows = read_rows(csv_path)
    if not rows:
        raise RenderError(f"{csv_path} has no data rows; nothing to render")
    plottable = [row for row in rows
                 if not row.error and row.value is not None]
    if not plottable:
        raise RenderError(
            f"{csv_path} contains only failed rows; nothing to render")
    metric = _headline_metric(plottable)
    selected = [row for row in plottable if row.metric == metric]
    skipped = len(rows) - len(selected)
    swept_name = selected[0].swept_name

    # Group into series, keeping first-appearance order for the legend.
    points: dict[tuple[str, str], list[ResultRow]] = {}
    for row in selected:
        points.setdefault((row.policy, row.mode), []).append(row)
    modes_of: dict[str, set[str]] = {}
    for policy, mode in points:
        modes_of.setdefault(policy, set()).add(mode)

    policy_order = list(dict.fromkeys(policy for policy, _ in points))
    with plt.rc_context({"svg.hashsalt": figure, "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(6.4, 4.4))
        try:
            colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
            series_info: list[SeriesInfo] = []
            handles = []
            for (policy, mode), series_rows in points.items():
                series_rows = sorted(series_rows, key=lambda r: r.swept_value)
                x = [row.swept_value for row in series_rows]
                y = [row.value for row in series_rows]
                label = (f"{policy} [{mode}]"
                         if len(modes_of[policy]) > 1 else policy)
                index = policy_order.index(policy)
                color = colors[index % len(colors)]
                if mode == "mc":
                    yerr = [row.std_error or 0.0 for row in series_rows]
                    handle = ax.errorbar(
                        x, y, yerr=yerr, linestyle="none",
                        marker=_MARKERS[index % len(_MARKERS)],
                        capsize=3, color=color, label=label)
                    kind = "markers"
                    with_bars = True
                else:
                    handle, = ax.plot(x, y, linestyle="-", color=color,
                                      label=label)
                    kind = "line"
                    with_bars = False
                handles.append(handle)
                series_info.append(SeriesInfo(
                    label=label, policy=policy, mode=mode, kind=kind,
                    n_points=len(x), with_error_bars=with_bars))
            ax.set_xlabel(_axis_text(swept_name))
            ax.set_ylabel(_axis_text(metric))
            ax.set_title(figure)
            ax.grid(True, alpha=0.3)
            # Auto-legends group by artist type; pass handles so the
            # legend keeps series order.
            legend = ax.legend(handles, [s.label for s in series_info])
            legend_labels = tuple(text.get_text()
                                  for text in legend.get_texts())
            out_dir = Path(out_dir)
            out_dir.mkdir(parents=True, exist_ok=True)
            outputs = []
            for fmt in formats:
                path = out_dir / f"{figure}.{fmt}"
                metadata = {"Date": None} if fmt == "svg" else None
                fig.savefig(path, dpi=150, metadata=metadata)
                outputs.append(path)
        finally:
            plt.close(fig)
    return RenderReport(figure=figure, metric=metric, swept_name=swept_name,
                        series=tuple(series_info),
                        legend_labels=legend_labels,
                        outputs=tuple(outputs), skipped_rows=skipped)
