from pathlib import Path
from typing import Optional, Tuple

import typer

from app.api.solve import modulus_for
from app.core.config import settings
from app.models.cfvs import SolverStats
from app.models.steiner import DsotInstance, GstInstance
from app.schemas.schemas import CountingMode, GraphFormat, OutputMode, RunConfig, StatsDocument, SteinerResult, Subcommand
from app.services.graph_service import parse_digraph, parse_graph, parse_groups
from app.services.steiner_service import dsot_decide, gst_decide, gst_extract_tree
from app.utils.io import read_text, run_command

router = typer.Typer()


def _counting(modulus: Optional[int]) -> CountingMode:
    return CountingMode.MODULAR if modulus else CountingMode.EXACT


def run_gst(cfg: RunConfig) -> Tuple[int, SteinerResult]:
    g = parse_graph(read_text(cfg.inputs[0]), cfg.format)
    inst = GstInstance(g, parse_groups(read_text(cfg.inputs[1]), g.n), cfg.p)
    modulus = modulus_for(cfg)
    stats = SolverStats()
    if cfg.witness:
        tree = gst_extract_tree(inst, modulus, stats)
        found = tree is not None
        vertices = sorted(v + 1 for v in tree) if found else None
    else:
        found, vertices = gst_decide(inst, modulus, stats), None
    document = SteinerResult(
        status="yes" if found else "no",
        problem="gst",
        p=cfg.p,
        vertices=vertices,
        counting=_counting(modulus),
        stats=StatsDocument.model_validate(stats),
    )
    return (0 if found else 1), document


def run_dsot(cfg: RunConfig) -> Tuple[int, SteinerResult]:
    d = parse_digraph(read_text(cfg.inputs[0]))
    terminals = frozenset().union(*parse_groups(read_text(cfg.inputs[1]), d.n))
    modulus = modulus_for(cfg)
    stats = SolverStats()
    found = dsot_decide(DsotInstance(d, cfg.root - 1, terminals, cfg.p), modulus, stats)
    document = SteinerResult(
        status="yes" if found else "no",
        problem="dsot",
        p=cfg.p,
        counting=_counting(modulus),
        stats=StatsDocument.model_validate(stats),
    )
    return (0 if found else 1), document


@router.command("gst")
def cmd_gst(
    graph: Path = typer.Argument(..., help="Graph file"),
    groups: Path = typer.Argument(..., help="One group per line, 1-indexed vertices"),
    p: int = typer.Option(..., "--p", "-p", help="Vertex budget of the tree"),
    format: Optional[GraphFormat] = typer.Option(None, "--format"),
    witness: bool = typer.Option(True, "--witness/--no-witness", help="Extract the tree vertices"),
    modular: bool = typer.Option(settings.counting_mode == "modular", "--modular/--exact"),
    seed: int = typer.Option(settings.seed, "--seed"),
    output: OutputMode = typer.Option(OutputMode.JSON, "--output", "-o"),
):
    """Group Steiner tree on at most p vertices."""
    run_command(
        run_gst,
        subcommand=Subcommand.GST,
        inputs=[graph, groups],
        p=p,
        format=format,
        witness=witness,
        counting=CountingMode.MODULAR if modular else CountingMode.EXACT,
        seed=seed,
        output=output,
    )


@router.command("dsot")
def cmd_dsot(
    digraph: Path = typer.Argument(..., help="Digraph file ('p arc n m' header)"),
    terminals: Path = typer.Argument(..., help="Terminal vertices, 1-indexed"),
    root: int = typer.Option(..., "--root", help="Root vertex, 1-indexed"),
    p: int = typer.Option(..., "--p", "-p", help="Vertex budget of the out-tree"),
    modular: bool = typer.Option(settings.counting_mode == "modular", "--modular/--exact"),
    seed: int = typer.Option(settings.seed, "--seed"),
    output: OutputMode = typer.Option(OutputMode.JSON, "--output", "-o"),
):
    """Directed Steiner out-tree on at most p vertices."""
    run_command(
        run_dsot,
        subcommand=Subcommand.DSOT,
        inputs=[digraph, terminals],
        root=root,
        p=p,
        counting=CountingMode.MODULAR if modular else CountingMode.EXACT,
        seed=seed,
        output=output,
    )
