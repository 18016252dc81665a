from pathlib import Path
from typing import Optional, Tuple, Union

import typer

from app.core.exceptions import SolutionInvariantError
from app.schemas.schemas import EnumResult, GraphFormat, OutputMode, RunConfig, Subcommand
from app.services.fvs_enum_service import enumerate_compact_representations, serialize_representations, verify_compact_rep
from app.services.graph_service import parse_graph
from app.utils.io import read_text, run_command

router = typer.Typer()


def run_enum(cfg: RunConfig) -> Tuple[int, Union[EnumResult, str]]:
    g = parse_graph(read_text(cfg.inputs[0]), cfg.format)
    reps = enumerate_compact_representations(g, cfg.k)
    verified = None
    if cfg.verify:
        for index, rep in enumerate(reps, start=1):
            if not verify_compact_rep(g, rep, cfg.k):
                raise SolutionInvariantError(f"representation {index} has a choice that is not a feedback vertex set")
        verified = True
    code = 0 if reps else 1
    if cfg.output == OutputMode.PLAIN:
        return code, serialize_representations(reps)
    return code, EnumResult(
        k=cfg.k,
        count=len(reps),
        verified=verified,
        representations=[[[v + 1 for v in options] for options in rep.sets] for rep in reps],
    )


@router.command("enum")
def cmd_enum(
    graph: Path = typer.Argument(..., help="Graph file"),
    k: int = typer.Option(..., "--k", "-k", help="Maximum number of sets per representation"),
    format: Optional[GraphFormat] = typer.Option(None, "--format"),
    verify: bool = typer.Option(False, "--verify", help="Check every choice of every representation"),
    output: OutputMode = typer.Option(OutputMode.PLAIN, "--output", "-o"),
):
    """List k-compact representations of the minimal feedback vertex sets."""
    run_command(run_enum, subcommand=Subcommand.ENUM, inputs=[graph], k=k, format=format, verify=verify, output=output)
