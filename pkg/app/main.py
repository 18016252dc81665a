from typing import Optional

import typer

from app.api import bench, gen, representations, schema, solve, steiner, td
from app.core.config import settings
from app.core.logging import configure_logging

cli = typer.Typer(
    name="cfvs",
    help="Connected feedback vertex set toolkit: solvers, Steiner trees, decompositions and benchmarks.",
    no_args_is_help=True,
    add_completion=False,
)


@cli.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log at INFO level"),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Override CFVS_LOG_LEVEL"),
):
    configure_logging(log_level or ("INFO" if verbose else settings.log_level))


# Include routers
for router in (solve.router, steiner.router, representations.router, gen.router, td.router, bench.router, schema.router):
    cli.registered_commands.extend(router.registered_commands)


if __name__ == "__main__":
    cli()
