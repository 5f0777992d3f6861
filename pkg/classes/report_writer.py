"""Report writer for run summaries and nodal-point CSV files."""

import csv
import json
import sys
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel


class RunSummary(BaseModel):
    """JSON summary of one command run.

    :ivar command: Subcommand name.
    :ivar params: Effective parameters.
    :ivar results: Command-specific results.
    :ivar converged: Whether every check of the run passed.
    :ivar elapsed_ms: Wall time in milliseconds, None when omitted.
    """

    command: str
    params: dict[str, Any]
    results: dict[str, Any]
    converged: bool
    elapsed_ms: Optional[float] = None


class ReportWriter:
    """Write summaries as sorted, indented JSON and nodal points as CSV.

    :ivar out: Summary path; stdout when None.
    :ivar omit_timing: Drop elapsed_ms so that runs compare byte for byte.
    """

    def __init__(self, out: Optional[Path] = None, omit_timing: bool = False) -> None:
        """Initialize the writer.

        :param out: Summary path; stdout when None.
        :type out: Optional[Path]
        :param omit_timing: Drop elapsed_ms from the summary.
        :type omit_timing: bool
        """
        self.out = out
        self.omit_timing = omit_timing

    def render(self, summary: RunSummary) -> str:
        """Serialize a summary.

        :param summary: The summary.
        :type summary: RunSummary
        :return: JSON text with sorted keys.
        :rtype: str
        """
        data = summary.model_dump(mode="json")
        if self.omit_timing or summary.elapsed_ms is None:
            data.pop("elapsed_ms")
        return json.dumps(data, indent=2, sort_keys=True)

    def write_summary(self, summary: RunSummary) -> None:
        """Write a summary to the output path or stdout.

        :param summary: The summary.
        :type summary: RunSummary
        """
        text = self.render(summary)
        if self.out is None:
            sys.stdout.write(text + "\n")
            return
        with open(self.out, "w") as f:
            f.write(text + "\n")

    @staticmethod
    def write_csv(path: Path, rows: list[dict[str, Any]], fieldnames: list[str]) -> None:
        """Write rows to a CSV file with a header line.

        :param path: CSV path.
        :type path: Path
        :param rows: Rows keyed by field name.
        :type rows: list[dict[str, Any]]
        :param fieldnames: Column order.
        :type fieldnames: list[str]
        """
        with open(path, "w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=fieldnames)
            writer.writeheader()
            writer.writerows(rows)
