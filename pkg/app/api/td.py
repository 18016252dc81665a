import logging
from pathlib import Path
from typing import Optional, Tuple, Union

import typer

from app.schemas.schemas import GraphFormat, OutputMode, RunConfig, Subcommand, TdReport
from app.services.graph_service import parse_graph
from app.services.treewidth_service import greedy_td, nicify, parse_td, serialize_nice_td, validate_nice, validate_td
from app.utils.io import read_text, run_command

logger = logging.getLogger(__name__)

router = typer.Typer()


def run_td_validate(cfg: RunConfig) -> Tuple[int, TdReport]:
    g = parse_graph(read_text(cfg.inputs[0]), cfg.format)
    td = parse_td(read_text(cfg.inputs[1]))
    valid = validate_td(g, td)
    return (0 if valid else 1), TdReport(valid=valid, width=td.width, bags=len(td.bags))


def run_td_nicify(cfg: RunConfig) -> Tuple[int, Union[TdReport, str]]:
    g = parse_graph(read_text(cfg.inputs[0]), cfg.format)
    td = parse_td(read_text(cfg.td_path)) if cfg.td_path else greedy_td(g)
    valid = validate_td(g, td)
    if not valid:
        logger.warning("input decomposition does not fit the graph")
    ntd = nicify(td)
    logger.info(f"nice decomposition: {len(ntd)} nodes, width {ntd.width}, kinds {ntd.kind_counts()}")
    if cfg.output == OutputMode.PLAIN:
        return 0, serialize_nice_td(ntd, g.n)
    return 0, TdReport(
        valid=valid and validate_nice(ntd),
        width=ntd.width,
        bags=len(td.bags),
        nice_nodes=len(ntd),
        kinds=ntd.kind_counts(),
    )


@router.command("td-validate")
def cmd_td_validate(
    graph: Path = typer.Argument(..., help="Graph file"),
    td: Path = typer.Argument(..., help="PACE .td file"),
    format: Optional[GraphFormat] = typer.Option(None, "--format"),
    output: OutputMode = typer.Option(OutputMode.JSON, "--output", "-o"),
):
    """Check the three tree decomposition axioms."""
    run_command(run_td_validate, subcommand=Subcommand.TD_VALIDATE, inputs=[graph, td], format=format, output=output)


@router.command("td-nicify")
def cmd_td_nicify(
    graph: Path = typer.Argument(..., help="Graph file"),
    td: Optional[Path] = typer.Option(None, "--td", help="PACE .td file; greedy min-fill-in otherwise"),
    format: Optional[GraphFormat] = typer.Option(None, "--format"),
    output: OutputMode = typer.Option(OutputMode.PLAIN, "--output", "-o"),
):
    """Turn a decomposition into a nice one (leaf, introduce, forget and join nodes)."""
    run_command(run_td_nicify, subcommand=Subcommand.TD_NICIFY, inputs=[graph], td_path=td, format=format, output=output)
