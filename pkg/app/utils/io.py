import sys
from pathlib import Path
from typing import Callable, Tuple, Union

import typer
from pydantic import BaseModel, ValidationError
from rich.console import Console
from rich.markup import escape

from app.core.exceptions import CfvsError
from app.schemas.schemas import CfvsResult, OutputMode, RunConfig, SteinerResult, TdReport

Document = Union[BaseModel, str]
Runner = Callable[[RunConfig], Tuple[int, Document]]

stderr = Console(stderr=True)


def read_text(path: Path) -> str:
    """`-` reads standard input."""
    if str(path) == "-":
        return sys.stdin.read()
    try:
        return path.read_text()
    except OSError as exc:
        raise CfvsError(f"cannot read {path}: {exc.strerror}")


def _plain(document: BaseModel) -> str:
    if isinstance(document, (CfvsResult, SteinerResult)):
        lines = [document.status]
        if isinstance(document, CfvsResult) and document.size is not None:
            lines.append(f"size {document.size}")
        if document.vertices is not None and document.status == "yes":
            lines.append(" ".join(str(v) for v in document.vertices))
        return "\n".join(lines) + "\n"
    if isinstance(document, TdReport):
        return f"{'valid' if document.valid else 'invalid'} width {document.width} bags {document.bags}\n"
    return document.model_dump_json() + "\n"


def emit(document: Document, output: OutputMode) -> None:
    if isinstance(document, str):
        text = document
    elif output == OutputMode.PLAIN:
        text = _plain(document)
    else:
        text = document.model_dump_json(indent=2) + "\n"
    sys.stdout.write(text)
    sys.stdout.flush()


def run_command(runner: Runner, **fields) -> None:
    """Build the RunConfig, run, print the document and exit with the runner's code.

    Invalid configurations and every CfvsError end with exit code 2 and a
    diagnostic on stderr.
    """
    try:
        cfg = RunConfig(**fields)
        code, document = runner(cfg)
    except ValidationError as exc:
        for error in exc.errors():
            stderr.print(f"[red]error:[/red] {escape(error['msg'])}")
        raise typer.Exit(2)
    except CfvsError as exc:
        stderr.print(f"[red]error:[/red] {escape(exc.detail)}")
        raise typer.Exit(exc.exit_code)
    emit(document, cfg.output)
    raise typer.Exit(code)
