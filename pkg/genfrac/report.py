"""Rendering of command results as a table, JSON or CSV.

Every command produces a ``CommandOutput``; the renderers below turn it into the
text printed on the standard output. The JSON document is fully determined by the
output: keys are sorted, floats are printed with ``repr`` (the shortest string which
reads back to the same double) and non-finite floats become the strings ``"inf"``,
``"-inf"`` and ``"nan"``.
"""
import csv
import io
import json
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any, Optional

from genfrac.constants import ExitCode


class OutputFormat:
    TABLE = "table"
    JSON = "json"
    CSV = "csv"


FORMATS: tuple[str, ...] = (OutputFormat.TABLE, OutputFormat.JSON, OutputFormat.CSV)


@dataclass
class CommandOutput:
    command: str

    # The inputs of the run, as given on the command line plus the configuration.
    spec: dict[str, Any]

    # One mapping per result, nested for the reports of `verify`.
    results: list[dict[str, Any]]

    summary: dict[str, Any] = field(default_factory=dict)

    # Flat rows for the table and CSV renderers when the results are nested.
    rows: Optional[list[dict[str, Any]]] = None

    # Lines printed after the table, e.g. the per theorem summary of ``verify``.
    summary_lines: list[str] = field(default_factory=list)

    exit_code: ExitCode = ExitCode.SUCCESS

    @property
    def flat_rows(self) -> list[dict[str, Any]]:
        return self.rows if self.rows is not None else self.results


def jsonable(value: Any) -> Any:
    """Return *value* with every non-finite float replaced by its string name."""
    if isinstance(value, float):
        return value if math.isfinite(value) else str(value)
    if isinstance(value, Mapping):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    return value


def format_cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, (list, tuple)):
        return "; ".join(format_cell(item) for item in value)
    return str(value)


def _columns(rows: Sequence[Mapping[str, Any]]) -> list[str]:
    columns: list[str] = []
    for row in rows:
        columns.extend(key for key in row if key not in columns)
    return columns


def render_json(output: CommandOutput) -> str:
    document = {
        "command": output.command,
        "spec": output.spec,
        "results": output.results,
        "summary": output.summary,
    }
    return json.dumps(jsonable(document), indent=2, sort_keys=True) + "\n"


def render_csv(output: CommandOutput) -> str:
    rows = output.flat_rows
    columns = _columns(rows)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(
            {
                key: repr(value) if isinstance(value, float) else format_cell(value)
                for key, value in row.items()
            }
        )
    return buffer.getvalue()


def render_table(output: CommandOutput) -> str:
    rows = output.flat_rows
    columns = _columns(rows)
    cells = [[format_cell(row.get(column)) for column in columns] for row in rows]
    widths = [
        max([len(column)] + [len(line[index]) for line in cells])
        for index, column in enumerate(columns)
    ]
    lines = []
    if columns:
        lines.append("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip())
        lines.append("  ".join("-" * w for w in widths))
        lines.extend(
            "  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip()
            for line in cells
        )
    if output.summary_lines:
        if lines:
            lines.append("")
        lines.extend(output.summary_lines)
    return "\n".join(lines) + "\n"


RENDERERS = {
    OutputFormat.TABLE: render_table,
    OutputFormat.JSON: render_json,
    OutputFormat.CSV: render_csv,
}


def render(output: CommandOutput, output_format: str) -> str:
    return RENDERERS[output_format](output)
