from typing import List, Optional, Tuple

import typer

from app.core.config import settings
from app.schemas.schemas import GeneratorFamily, RunConfig, Subcommand
from app.services.generator_service import generate
from app.services.graph_service import serialize_graph
from app.utils.io import run_command

router = typer.Typer()


def run_gen(cfg: RunConfig) -> Tuple[int, str]:
    g = generate(cfg.family, cfg.sizes, cfg.n, cfg.m, cfg.width, cfg.seed)
    return 0, serialize_graph(g)


@router.command("gen")
def cmd_gen(
    family: GeneratorFamily = typer.Argument(..., help="Instance family"),
    sizes: Optional[List[int]] = typer.Argument(None, help="Family sizes, e.g. 'r L' or 'w h'"),
    n: Optional[int] = typer.Option(None, "--n", help="Vertices (random families, partial-ktree)"),
    m: Optional[int] = typer.Option(None, "--m", help="Edges (random families, cvc-gadget)"),
    width: Optional[int] = typer.Option(None, "--width", help="Treewidth of a partial k-tree"),
    seed: int = typer.Option(settings.seed, "--seed"),
):
    """Write a generated instance as PACE .gr to stdout."""
    run_command(
        run_gen,
        subcommand=Subcommand.GEN,
        family=family,
        sizes=sizes or [],
        n=n,
        m=m,
        width=width,
        seed=seed,
    )
