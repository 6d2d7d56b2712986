"""Report rendering and golden-file comparison."""

from contrapunctus.reporting.golden import GoldenDiff, GoldenStore
from contrapunctus.reporting.tables import read_json_rows, render, render_rich, write_output

__all__ = [
    "GoldenDiff",
    "GoldenStore",
    "read_json_rows",
    "render",
    "render_rich",
    "write_output",
]
