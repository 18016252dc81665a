import logging

from rich.console import Console
from rich.logging import RichHandler


def configure_logging(level: str = "WARNING") -> None:
    """Route all log records to stderr; stdout is reserved for results."""
    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        show_time=False,
    )
    logging.basicConfig(
        level=level.upper(),
        format="[%(name)s] %(message)s",
        handlers=[handler],
        force=True,
    )
