import logging
from pathlib import Path
from typing import Optional, Tuple

import typer

from app.core.config import settings
from app.schemas.schemas import CfvsResult, CountingMode, GraphFormat, Method, OutputMode, RunConfig, StatsDocument, Subcommand
from app.services.cfvs_service import cfvs_optimize, cfvs_solve
from app.services.graph_service import parse_graph
from app.services.steiner_service import random_prime
from app.services.treewidth_service import parse_td
from app.utils.io import read_text, run_command

logger = logging.getLogger(__name__)

router = typer.Typer()


def modulus_for(cfg: RunConfig) -> Optional[int]:
    if cfg.counting != CountingMode.MODULAR:
        return None
    prime = random_prime(settings.modulus_bits, cfg.seed)
    logger.info(f"modular counting with prime {prime}; 'no' answers may be false negatives")
    return prime


def run_solve(cfg: RunConfig) -> Tuple[int, CfvsResult]:
    g = parse_graph(read_text(cfg.inputs[0]), cfg.format)
    td = parse_td(read_text(cfg.td_path)) if cfg.td_path else None
    method = cfg.method
    if td is not None and method == Method.AUTO:
        method = Method.TREEWIDTH_DP
    modulus = modulus_for(cfg)

    if cfg.optimize:
        outcome = cfvs_optimize(g, method, td, modulus, cfg.threads, cfg.max_width)
    else:
        outcome = cfvs_solve(g, cfg.k, method, td, modulus, cfg.threads, cfg.max_width)

    solution = outcome.solution
    counting = CountingMode.MODULAR if modulus and outcome.method == Method.COMPACT_GST else CountingMode.EXACT
    stats = StatsDocument.model_validate(outcome.stats)
    if solution is None:
        return 1, CfvsResult(status="no", method=outcome.method, counting=counting, width=outcome.width, stats=stats)
    return 0, CfvsResult(
        status="yes",
        size=solution.size,
        vertices=sorted(v + 1 for v in solution.vertices),
        method=outcome.method,
        counting=counting,
        width=outcome.width,
        stats=stats,
    )


@router.command("solve")
def cmd_solve(
    graph: Path = typer.Argument(..., help="Graph file (.gr, DIMACS or edge list); '-' for stdin"),
    k: Optional[int] = typer.Option(None, "--k", "-k", help="Budget"),
    method: str = typer.Option("auto", "--method", help="auto, compact-gst, treewidth-dp or brute-force"),
    format: Optional[GraphFormat] = typer.Option(None, "--format", help="Override format detection"),
    td: Optional[Path] = typer.Option(None, "--td", help="PACE .td decomposition for the DP"),
    max_width: Optional[int] = typer.Option(settings.max_width, "--max-width", help="Refuse decompositions wider than this"),
    optimize: bool = typer.Option(False, "--optimize", help="Report the minimum instead of deciding k"),
    modular: bool = typer.Option(settings.counting_mode == "modular", "--modular/--exact", help="Count modulo a random prime"),
    threads: int = typer.Option(settings.threads, "--threads", help="Worker processes for the GST route"),
    seed: int = typer.Option(settings.seed, "--seed"),
    output: OutputMode = typer.Option(OutputMode.JSON, "--output", "-o"),
):
    """Decide (or optimize) connected feedback vertex set."""
    run_command(
        run_solve,
        subcommand=Subcommand.SOLVE,
        inputs=[graph],
        k=k,
        method=method,
        format=format,
        td_path=td,
        max_width=max_width,
        optimize=optimize,
        counting=CountingMode.MODULAR if modular else CountingMode.EXACT,
        threads=threads,
        seed=seed,
        output=output,
    )
