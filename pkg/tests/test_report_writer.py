"""Tests for summary and CSV output."""

import csv
import json

from classes.report_writer import ReportWriter, RunSummary


def summary(elapsed=12.5):
    return RunSummary(
        command="t2-count",
        params={"m": 2, "resolution": [32, 32]},
        results={"products": [{"m": 1, "total": 4}]},
        converged=True,
        elapsed_ms=elapsed,
    )


class TestRender:
    def test_keys_are_sorted(self):
        data = json.loads(ReportWriter().render(summary()))
        assert list(data) == sorted(data)
        assert data["elapsed_ms"] == 12.5

    def test_timing_can_be_omitted(self):
        assert "elapsed_ms" not in json.loads(ReportWriter(omit_timing=True).render(summary()))
        assert "elapsed_ms" not in json.loads(ReportWriter().render(summary(elapsed=None)))

    def test_render_is_stable(self):
        writer = ReportWriter(omit_timing=True)
        assert writer.render(summary(1.0)) == writer.render(summary(2.0))


class TestWrite:
    def test_summary_to_stdout(self, capsys):
        ReportWriter().write_summary(summary())
        assert json.loads(capsys.readouterr().out)["command"] == "t2-count"

    def test_summary_to_file(self, tmp_path):
        path = tmp_path / "summary.json"
        ReportWriter(path).write_summary(summary())
        assert path.read_text().endswith("}\n")
        assert json.loads(path.read_text())["converged"] is True

    def test_csv_has_a_header(self, tmp_path):
        path = tmp_path / "points.csv"
        rows = [{"face": "side", "x": 0.5, "sign": 1}, {"face": "top", "x": -0.2, "sign": -1}]
        ReportWriter.write_csv(path, rows, ["face", "x", "sign"])
        with open(path, newline="") as f:
            read = list(csv.DictReader(f))
        assert read[0] == {"face": "side", "x": "0.5", "sign": "1"}
        assert len(read) == 2
