"""Schema validation of the result-CSV reader."""

from __future__ import annotations

import pytest
from conftest import COLUMNS, analytic_record, error_record, mc_record, \
    write_csv

from fran_figures.csvread import ResultRow, SchemaError, read_rows


class TestReadRows:
    def test_reads_all_row_shapes(self, tmp_path):
        path = write_csv(tmp_path / "fig4.csv", [
            analytic_record(5.0, "maxrsrp", 0.42,
                            metric="success_probability"),
            mc_record(5.0, "maxrsrp", 0.43, 0.01, n=150,
                      metric="success_probability"),
            error_record(40.0, "maxrsrp", "analytic",
                         "queue unstable at this load"),
        ])
        rows = read_rows(path)
        assert len(rows) == 3
        analytic, mc, failed = rows
        assert analytic == ResultRow("density_ratio", 5.0, "maxrsrp",
                                     "analytic", "success_probability",
                                     value=0.42)
        assert mc.std_error == 0.01 and mc.n == 150 and mc.error == ""
        assert failed.value is None and failed.std_error is None
        assert failed.n is None
        assert failed.error == "queue unstable at this load"

    def test_header_only_file_yields_no_rows(self, tmp_path):
        path = write_csv(tmp_path / "fig4.csv", [])
        assert read_rows(path) == []

    def test_missing_version_comment(self, tmp_path):
        path = tmp_path / "fig4.csv"
        path.write_text(",".join(COLUMNS) + "\n")
        with pytest.raises(SchemaError, match="schema version comment"):
            read_rows(path)

    def test_newer_schema_version_rejected(self, tmp_path):
        path = write_csv(tmp_path / "fig4.csv", [],
                         version_line="# fran-tradeoff csv schema v2")
        with pytest.raises(SchemaError,
                           match="uses schema v2; this reader supports v1"):
            read_rows(path)

    def test_renamed_column_names_the_missing_one(self, tmp_path):
        header = tuple(c if c != "metric" else "measure" for c in COLUMNS)
        path = write_csv(tmp_path / "fig4.csv", [], header=header)
        with pytest.raises(SchemaError) as info:
            read_rows(path)
        assert "missing columns: metric" in str(info.value)
        assert "unexpected columns: measure" in str(info.value)

    def test_reordered_columns_rejected(self, tmp_path):
        header = COLUMNS[1:] + COLUMNS[:1]
        path = write_csv(tmp_path / "fig4.csv", [], header=header)
        with pytest.raises(SchemaError, match="columns out of order"):
            read_rows(path)

    def test_short_row_rejected_with_position(self, tmp_path):
        path = write_csv(tmp_path / "fig4.csv",
                         [analytic_record(5.0, "maxrsrp", 1.0)])
        with path.open("a", newline="") as handle:
            handle.write("density_ratio,8.0,maxrsrp\n")
        with pytest.raises(SchemaError, match="has 3 fields, expected 9"):
            read_rows(path)
