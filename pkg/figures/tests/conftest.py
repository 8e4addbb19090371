"""Builders for handcrafted result CSVs used across the test modules."""

from __future__ import annotations

import csv
from pathlib import Path

import pytest

VERSION_LINE = "# fran-tradeoff csv schema v1"
COLUMNS = ("swept_name", "swept_value", "policy", "mode", "metric",
           "value", "std_error", "n", "error")

RATIO_GRID = (5.0, 8.0, 10.0, 12.0)
XI_LABELS = ("maxrsrp(xi=0.005)", "maxrsrp(xi=0.007)", "maxrsrp(xi=0.009)")
FIG7_POLICIES = ("maxrsrp", "mindelay", "cluster(rc=30)", "cluster(rc=125)")


def write_csv(path: Path, records: list[tuple], *,
              version_line: str = VERSION_LINE,
              header: tuple = COLUMNS) -> Path:
    with path.open("w", encoding="utf-8", newline="") as handle:
        handle.write(version_line + "\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(records)
    return path


def analytic_record(x: float, policy: str, value: float, *,
                    swept_name: str = "density_ratio",
                    metric: str = "delivery_latency") -> tuple:
    return (swept_name, repr(float(x)), policy, "analytic", metric,
            repr(float(value)), "", "", "")


def mc_record(x: float, policy: str, value: float, std_error: float,
              n: int = 200, *, swept_name: str = "density_ratio",
              metric: str = "delivery_latency") -> tuple:
    return (swept_name, repr(float(x)), policy, "mc", metric,
            repr(float(value)), repr(float(std_error)), str(n), "")


def error_record(x: float, policy: str, mode: str, message: str, *,
                 swept_name: str = "density_ratio",
                 metric: str = "delivery_latency") -> tuple:
    return (swept_name, repr(float(x)), policy, mode, metric,
            "", "", "", message)


def _latency(ratio: float, case_index: int) -> float:
    return 40.0 + 12.0 * ratio + 25.0 * case_index


def fig2_both_records() -> list[tuple]:
    """Three request-rate cases in both modes over the ratio grid."""
    records = []
    for ratio in RATIO_GRID:
        for index, policy in enumerate(XI_LABELS):
            value = _latency(ratio, index)
            records.append(analytic_record(ratio, policy, value))
            records.append(mc_record(ratio, policy, 1.02 * value, 0.8))
    return records


def fig7_records() -> list[tuple]:
    """Four analytic policy curves over the ratio grid."""
    return [analytic_record(ratio, policy, _latency(ratio, index))
            for ratio in RATIO_GRID
            for index, policy in enumerate(FIG7_POLICIES)]


@pytest.fixture
def fig2_csv(tmp_path: Path) -> Path:
    return write_csv(tmp_path / "fig2.csv", fig2_both_records())


@pytest.fixture
def fig7_csv(tmp_path: Path) -> Path:
    return write_csv(tmp_path / "fig7.csv", fig7_records())
