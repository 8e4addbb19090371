"""Result CSVs, figure sweeps, and analytic-vs-MC cross-validation."""

from __future__ import annotations

import dataclasses

import pytest

from fran_tradeoff.analytic.caching import cache_hit_probability
from fran_tradeoff.experiments import crosscheck
from fran_tradeoff.experiments.crosscheck import cross_validate
from fran_tradeoff.experiments.csvio import (COLUMNS, ResultRow, SchemaError,
                                             read_rows, write_rows)
from fran_tradeoff.experiments.sweeps import (FIGURES, SweepCase, SweepError,
                                              figure_spec, run_sweep)
from fran_tradeoff.mc.engine import AssociationPolicy, PolicyVariant

MAXRSRP = AssociationPolicy(PolicyVariant.MAX_RSRP)
MINDELAY = AssociationPolicy(PolicyVariant.MIN_DELAY)


@pytest.fixture
def mc_scenario(fast_scenario):
    """Small scenes with the reference per-station load (stable queues)."""
    return fast_scenario.replace(traffic=dataclasses.replace(
        fast_scenario.traffic, lambda_u=1e-3))


SAMPLE_ROWS = [
    ResultRow("density_ratio", 5.0, "maxrsrp", "analytic",
              "success_probability", value=0.5529),
    ResultRow("density_ratio", 5.0, "maxrsrp", "mc", "success_probability",
              value=0.55, std_error=0.011, n=2000),
    ResultRow("density_ratio", 40.0, "maxrsrp(xi=0.009)", "analytic",
              "delivery_latency",
              error="fap queue unstable: offered load 2.4 >= service rate 2"),
]


class TestCsvSchema:
    def test_roundtrip(self, tmp_path):
        path = write_rows(tmp_path / "out.csv", SAMPLE_ROWS)
        assert read_rows(path) == SAMPLE_ROWS

    def test_byte_determinism_and_line_endings(self, tmp_path):
        a = write_rows(tmp_path / "a.csv", SAMPLE_ROWS).read_bytes()
        b = write_rows(tmp_path / "b.csv", SAMPLE_ROWS).read_bytes()
        assert a == b
        assert b"\r" not in a
        assert a.startswith(b"# fran-tradeoff csv schema v1\n")

    def test_header_only_file_is_empty(self, tmp_path):
        path = write_rows(tmp_path / "empty.csv", [])
        assert read_rows(path) == []

    def test_version_mismatch_rejected(self, tmp_path):
        path = write_rows(tmp_path / "v.csv", SAMPLE_ROWS)
        text = path.read_text()
        path.write_text(text.replace("schema v1", "schema v2", 1))
        with pytest.raises(SchemaError, match="uses schema v2"):
            read_rows(path)

    def test_missing_version_comment_rejected(self, tmp_path):
        path = write_rows(tmp_path / "v.csv", SAMPLE_ROWS)
        lines = path.read_text().splitlines(keepends=True)
        path.write_text("".join(lines[1:]))
        with pytest.raises(SchemaError, match="schema version comment"):
            read_rows(path)

    def test_header_mismatch_names_columns(self, tmp_path):
        path = write_rows(tmp_path / "h.csv", SAMPLE_ROWS)
        text = path.read_text().replace("metric", "measure", 1)
        path.write_text(text)
        with pytest.raises(SchemaError, match="missing columns: metric"):
            read_rows(path)
        with pytest.raises(SchemaError, match="unexpected columns: measure"):
            read_rows(path)

    def test_short_row_rejected(self, tmp_path):
        path = write_rows(tmp_path / "r.csv", SAMPLE_ROWS)
        with path.open("a") as handle:
            handle.write("density_ratio,5.0,maxrsrp\n")
        with pytest.raises(SchemaError,
                           match=f"expected {len(COLUMNS)}"):
            read_rows(path)


class TestSweepSpec:
    def test_every_figure_has_a_spec(self):
        for figure in FIGURES:
            spec = figure_spec(figure)
            spec.validate()
            assert spec.figure == figure

    def test_unknown_figure_rejected(self):
        with pytest.raises(SweepError, match="unknown figure"):
            figure_spec("fig9")

    @pytest.mark.parametrize("patch,message", [
        (dict(grid=()), "grid must not be empty"),
        (dict(grid=(5.0, 5.0)), "strictly increasing"),
        (dict(grid=(10.0, 5.0)), "strictly increasing"),
        (dict(cases=()), "cases must not be empty"),
        (dict(mode="fast"), "mode must be"),
        (dict(swept_name="radius"), "unknown swept variable"),
        (dict(n_realizations=0), "n_realizations"),
        (dict(metrics=("latency",)), "unknown metrics: latency"),
    ])
    def test_validation_messages(self, patch, message):
        spec = dataclasses.replace(figure_spec("fig4"), **patch)
        with pytest.raises(SweepError, match=message):
            spec.validate()


class TestRunSweep:
    def test_summary_and_layout(self, defaults, tmp_path):
        spec = figure_spec("fig4")
        path, summary = run_sweep(defaults, spec, tmp_path)
        assert summary == ("fig4: 14 rows (7 grid points x 2 cases, "
                           "mode=analytic), 0 failed")
        rows = read_rows(path)
        assert len(rows) == 14
        assert [r.swept_value for r in rows[:4]] == [5.0, 5.0, 8.0, 8.0]
        assert {r.policy for r in rows} == {"maxrsrp", "mindelay"}
        assert all(r.metric == "success_probability" for r in rows)
        assert all(r.std_error is None and r.n is None for r in rows)

    def test_analytic_rerun_is_byte_identical(self, defaults, tmp_path):
        spec = dataclasses.replace(figure_spec("fig4"), grid=(5.0, 10.0))
        path, _ = run_sweep(defaults, spec, tmp_path / "one")
        again, _ = run_sweep(defaults, spec, tmp_path / "two")
        assert path.read_bytes() == again.read_bytes()

    def test_mc_rows_invariant_to_workers(self, mc_scenario, tmp_path):
        spec = dataclasses.replace(figure_spec("fig4", mode="mc",
                                               n_realizations=150, seed=7),
                                   grid=(5.0, 10.0))
        serial, _ = run_sweep(mc_scenario, spec, tmp_path / "w1")
        parallel, _ = run_sweep(mc_scenario,
                                dataclasses.replace(spec, workers=2),
                                tmp_path / "w2")
        assert serial.read_bytes() == parallel.read_bytes()
        rows = read_rows(serial)
        assert all(r.mode == "mc" and r.n == 150 and r.std_error is not None
                   for r in rows)

    def test_unstable_points_become_error_rows(self, defaults, tmp_path):
        """Stretching the latency-vs-ratio sweep into the unstable tail
        fills the error column instead of aborting."""
        spec = dataclasses.replace(figure_spec("fig2"), grid=(5.0, 40.0))
        path, summary = run_sweep(defaults, spec, tmp_path)
        rows = read_rows(path)
        failed = [r for r in rows if r.error]
        assert summary.endswith(f"{len(failed)} failed")
        assert len(failed) == 2
        assert all(r.swept_value == 40.0 for r in failed)
        assert {r.policy for r in failed} == {"maxrsrp(xi=0.007)",
                                              "maxrsrp(xi=0.009)"}
        assert all("unstable" in r.error and r.value is None for r in failed)
        stable = [r for r in rows if not r.error]
        assert all(r.value > 0.0 for r in stable)

    def test_cache_sweep_reports_hit_probability(self, defaults, tmp_path):
        path, _ = run_sweep(defaults, figure_spec("fig3"), tmp_path)
        rows = read_rows(path)
        common = [r for r in rows if r.policy == "common"]
        assert [r.swept_value for r in common] == [15.0, 20.0, 25.0, 30.0,
                                                   35.0]
        for row in common:
            assert row.metric == "cache_hit_probability"
            expected = cache_hit_probability(
                defaults.cache.catalog_size, int(row.swept_value),
                defaults.cache.zipf_tau)
            assert row.value == pytest.approx(expected, rel=1e-12)

    def test_unknown_override_becomes_error_rows(self, defaults, tmp_path):
        spec = figure_spec("fig4")
        bad_case = SweepCase(label="maxrsrp(bad)", policy=MAXRSRP,
                             overrides=(("antenna.gain", 1.0),))
        spec = dataclasses.replace(spec, grid=(5.0,), cases=(bad_case,))
        path, summary = run_sweep(defaults, spec, tmp_path)
        rows = read_rows(path)
        assert summary.endswith("1 failed")
        assert "override path" in rows[0].error

    def test_invalid_spec_rejected_before_running(self, defaults, tmp_path):
        spec = dataclasses.replace(figure_spec("fig4"), grid=())
        with pytest.raises(SweepError):
            run_sweep(defaults, spec, tmp_path)


class TestCrossValidation:
    def test_max_rsrp_report_passes(self, mc_scenario):
        report = cross_validate(mc_scenario, MAXRSRP, 1200, seed=3)
        assert report.passed
        metrics = [row.metric for row in report.rows]
        assert "association_fraction(fap)" in metrics
        assert "delivery_latency" in metrics
        assert sum(m.startswith("success_probability") for m in metrics) == 3
        text = "\n".join(report.lines())
        assert text.startswith("cross-check: policy=maxrsrp n=1200 seed=3")
        assert "overall: PASS" in text

    def test_min_delay_report_passes(self, mc_scenario):
        report = cross_validate(mc_scenario, MINDELAY, 1200, seed=3)
        assert report.passed
        metrics = [row.metric for row in report.rows]
        assert sum(m.startswith("success_term") for m in metrics) == 3
        assert sum(m.startswith("association_fraction") for m in metrics) == 3

    def test_tiny_sample_flags_low_power(self, defaults):
        report = cross_validate(defaults, MAXRSRP, 10, seed=3)
        assert report.low_power
        assert report.passed  # undecidable rows do not fail the report
        assert "low statistical power" in report.lines()[-1]

    def test_cluster_policy_rejected(self, defaults):
        cluster = AssociationPolicy(PolicyVariant.CLUSTER_MAX_CACHE_HIT,
                                    cluster_radius=30.0)
        with pytest.raises(ValueError, match="primary policies"):
            cross_validate(defaults, cluster, 100, seed=1)

    def test_detects_corrupted_association_constant(self, defaults,
                                                    monkeypatch):
        """A deliberately wrong association formula (bias k instead of
        k^2) must fail the association row and the report."""
        def corrupted(scenario):
            net = scenario.network
            a_fap = net.lambda_f / (net.lambda_f + scenario.k * net.lambda_r)
            return a_fap, 1.0 - a_fap

        monkeypatch.setattr(crosscheck, "assoc_prob_max_rsrp", corrupted)
        report = cross_validate(defaults, MAXRSRP, 400, seed=3)
        assert not report.passed
        failing = {row.metric for row in report.rows if not row.passed}
        assert "association_fraction(fap)" in failing
