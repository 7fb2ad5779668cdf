"""
Shared Rich TUI components for the qspace tools.

Everything prints to stderr; stdout carries the JSON reports.
"""

import sys

# Rich imports with graceful fallback
try:
    from rich.console import Console
    from rich.panel import Panel
    from rich.table import Table
    from rich.text import Text
    from rich import box
    from rich.align import Align
    RICH_AVAILABLE = True
except ImportError:
    RICH_AVAILABLE = False

# Initialize console
if RICH_AVAILABLE:
    console = Console(stderr=True)
else:
    console = None


def _plain(text=""):
    print(text, file=sys.stderr)


def rich_print(text, style=None, fallback_prefix=""):
    """Print with Rich styling or fallback to plain text"""
    if RICH_AVAILABLE and console:
        if style:
            console.print(text, style=style)
        else:
            console.print(text)
    else:
        _plain(f"{fallback_prefix}{text}")


def show_tool_header(title, description):
    """Display a header panel for one command"""
    if RICH_AVAILABLE and console:
        heading = Text(f"qspace - {title}", style="bold blue")
        subtitle = Text(description, style="dim")

        panel = Panel(
            Align.center(Text.assemble(heading, "\n", subtitle)),
            box=box.DOUBLE,
            style="blue",
            padding=(1, 2)
        )
        console.print()
        console.print(panel)
        console.print()
    else:
        _plain(f"qspace - {title}")
        _plain("=" * 40)
        _plain(description)


def show_success_panel(title, message):
    """Display success completion panel"""
    if RICH_AVAILABLE and console:
        panel = Panel(
            f"[green]✓ {message}[/green]",
            title=title,
            box=box.ROUNDED,
            style="green"
        )
        console.print(panel)
    else:
        _plain(f"\n✓ {message}")


def show_failure_panel(title, message, details=None):
    """Display failure panel with the first few failing items"""
    if RICH_AVAILABLE and console:
        content = f"[red]✗ {message}[/red]"
        if details:
            content += "\n\n" + "\n".join(f"• {d}" for d in details)
        console.print(Panel(content, title=title, box=box.ROUNDED, style="red"))
    else:
        _plain(f"\n✗ {message}")
        for d in details or ():
            _plain(f"  - {d}")


def create_results_table(rows, columns, title="Results"):
    """Create Rich table from rows of strings; plain-text fallback"""
    if RICH_AVAILABLE and console:
        table = Table(title=title, box=box.ROUNDED)
        styles = ("cyan", "magenta", "green", "yellow")
        for i, column in enumerate(columns):
            table.add_column(column, style=styles[i % len(styles)])
        for row in rows:
            table.add_row(*(str(cell) for cell in row))

        console.print()
        console.print(table)
        console.print()
        return table
    else:
        # Fallback
        _plain(f"\n{title}:")
        _plain(" | ".join(columns))
        for row in rows:
            _plain(" | ".join(str(cell) for cell in row))
        return None
