"""
Console output using the Rich library: logging, JSON reports and tables.

Machine-readable output goes to stdout; everything meant for people goes to
stderr so pipelines stay clean.
"""

import json
import logging
import sys
from typing import IO, Any, Dict, List, Optional, Sequence

from rich import box
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


def setup_logging(level: str = "WARNING", console: Optional[Console] = None) -> None:
    """Route every library logger through one RichHandler on stderr."""
    level = level.upper()
    if level not in LOG_LEVELS:
        raise ValueError(f"unknown log level {level!r}; expected one of {', '.join(LOG_LEVELS)}")
    handler = RichHandler(console=console or Console(stderr=True), show_path=False,
                          rich_tracebacks=False)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    root = logging.getLogger()
    for existing in list(root.handlers):
        if isinstance(existing, RichHandler):
            root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(level)


def dump_json(report: Any, indent: Optional[int] = 2) -> str:
    """Sorted keys, so identical reports give identical bytes."""
    return json.dumps(report, sort_keys=True, indent=indent, default=str)


class UIManager:
    """Renders reports: JSON on stdout, rich tables and panels on stderr."""

    def __init__(self, pretty: bool = False, indent: int = 2,
                 stdout: Optional[IO[str]] = None, console: Optional[Console] = None):
        self.pretty = pretty
        self.indent = indent
        self.stdout = stdout
        self.console = console or Console(stderr=True)

    def emit_json(self, report: Dict[str, Any]) -> None:
        out = self.stdout or sys.stdout
        out.write(dump_json(report, self.indent or None))
        out.write("\n")

    def show_rows(self, title: str, columns: Sequence[str], rows: List[Sequence[Any]],
                  highlight: Optional[str] = None) -> None:
        """A rich table; rows whose last cell equals `highlight` are shown in bold."""
        if not self.pretty:
            return
        table = Table(title=title, box=box.ROUNDED)
        for column in columns:
            table.add_column(column, style="cyan" if column == columns[0] else "white")
        for row in rows:
            style = "bold green" if highlight is not None and row and str(row[-1]) == highlight else None
            table.add_row(*(str(cell) for cell in row), style=style)
        self.console.print(table)

    def show_design(self, title: str, summary: Dict[str, Any]) -> None:
        """Parameter summary of a constructed or checked design."""
        if not self.pretty:
            return
        table = Table(box=box.SIMPLE, show_header=False)
        table.add_column("key", style="bold")
        table.add_column("value")
        for key, value in summary.items():
            table.add_row(str(key), json.dumps(value, sort_keys=True, default=str))
        self.console.print(Panel(table, title=title, box=box.ROUNDED, title_align="left"))

    def show_error(self, error_message: str) -> None:
        """Errors always reach stderr, pretty or not."""
        if self.pretty:
            self.console.print(Panel(f"[red]Error: {error_message}[/red]", box=box.ROUNDED, style="red"))
        else:
            self.console.print(f"Error: {error_message}", markup=False, highlight=False)
