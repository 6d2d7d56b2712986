"""Render report rows as CSV, JSON lines, markdown or a rich table.

Rows are dicts whose insertion order is the column order. Machine formats are
plain text with no styling so the same rows always give the same bytes.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from rich.console import Console
from rich.table import Table

from contrapunctus.enums import OutputFormat
from contrapunctus.errors import ConfigError

logger = logging.getLogger(__name__)

Row = dict[str, Any]


def _columns(rows: Sequence[Row], columns: Sequence[str] | None) -> list[str]:
    if columns is not None:
        return list(columns)
    return list(rows[0]) if rows else []


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return ";".join(str(v) for v in value)
    return str(value)


def to_csv(rows: Sequence[Row], columns: Sequence[str] | None = None) -> str:
    """CSV with a fixed header line."""
    cols = _columns(rows, columns)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(cols)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in cols])
    return buffer.getvalue()


def to_json_lines(rows: Sequence[Row], columns: Sequence[str] | None = None) -> str:
    """One JSON object per line, keys in column order."""
    cols = _columns(rows, columns)
    return "".join(json.dumps({c: row.get(c) for c in cols}) + "\n" for row in rows)


def to_markdown(rows: Sequence[Row], columns: Sequence[str] | None = None) -> str:
    """A pipe table padded to the widest cell of each column."""
    cols = _columns(rows, columns)
    if not cols:
        return ""
    widths = {c: len(c) for c in cols}
    for row in rows:
        for c in cols:
            widths[c] = max(widths[c], len(_cell(row.get(c))))

    header = "| " + " | ".join(c.ljust(widths[c]) for c in cols) + " |"
    sep = "| " + " | ".join("-" * widths[c] for c in cols) + " |"
    lines = [header, sep]
    for row in rows:
        lines.append("| " + " | ".join(_cell(row.get(c)).ljust(widths[c]) for c in cols) + " |")
    return "\n".join(lines) + "\n"


def render(
    rows: Sequence[Row],
    fmt: OutputFormat = OutputFormat.CSV,
    columns: Sequence[str] | None = None,
) -> str:
    """Render rows in a machine format.

    Raises:
        ConfigError: For the console-only ``table`` format.
    """
    if fmt is OutputFormat.CSV:
        return to_csv(rows, columns)
    if fmt is OutputFormat.JSON:
        return to_json_lines(rows, columns)
    if fmt is OutputFormat.MARKDOWN:
        return to_markdown(rows, columns)
    raise ConfigError(f"format {fmt.value} renders to the console only")


def render_rich(
    rows: Sequence[Row],
    console: Console,
    title: str | None = None,
    columns: Sequence[str] | None = None,
) -> None:
    """Print rows as a rich table."""
    cols = _columns(rows, columns)
    table = Table(title=title)
    for c in cols:
        table.add_column(c, style="cyan" if c in ("k", "verdict", "kind") else None)
    for row in rows:
        table.add_row(*(_cell(row.get(c)) for c in cols))
    console.print(table)


def read_json_rows(text: str) -> list[Row]:
    """Parse rows emitted as JSON lines.

    Raises:
        ConfigError: If a line is not a JSON object.
    """
    rows = []
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            row = json.loads(line)
        except json.JSONDecodeError as e:
            raise ConfigError(f"line {number} is not valid JSON: {e}") from e
        if not isinstance(row, dict):
            raise ConfigError(f"line {number} is not a JSON object")
        rows.append(row)
    return rows


def write_output(text: str, out: Path | None) -> None:
    """Write to a file, or to stdout when ``out`` is None."""
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    logger.info(f"Wrote {len(text)} characters to {out}")
