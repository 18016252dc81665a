from pathlib import Path
from typing import List, Optional, Tuple

import typer
from rich.table import Table

from app.api.solve import modulus_for
from app.core.config import settings
from app.db.database import engine, get_db, init_db, make_engine
from app.schemas.schemas import BenchRow, CountingMode, RunConfig, ScalingKind, ScalingRow, Subcommand
from app.services.bench_service import (
    DEFAULT_METHODS,
    corpus_files,
    dp_scaling,
    gst_scaling,
    run_corpus,
    store_run,
    to_csv,
)
from app.utils.io import run_command, stderr

router = typer.Typer()


def _table(title: str, columns: List[str], rows) -> Table:
    table = Table(title=title)
    for column in columns:
        table.add_column(column)
    for row in rows:
        values = row.model_dump(mode="json")
        table.add_row(*("" if values[c] is None else str(values[c]) for c in columns))
    return table


def _store(cfg: RunConfig, kind: str, rows=(), scaling=()) -> None:
    bind = make_engine(cfg.database_url) if cfg.database_url else engine
    init_db(bind)
    source = str(cfg.inputs[0]) if cfg.inputs else None
    with get_db(bind) as session:
        store_run(session, kind, rows, scaling, source, cfg.seed, cfg.counting)


def run_bench(cfg: RunConfig) -> Tuple[int, str]:
    if cfg.scaling is not None:
        if cfg.scaling == ScalingKind.GST:
            scaling = gst_scaling(seed=cfg.seed)
        else:
            scaling = dp_scaling(seed=cfg.seed)
        columns = list(ScalingRow.model_fields)
        stderr.print(_table(f"{cfg.scaling.value} scaling", columns, scaling))
        if cfg.store:
            _store(cfg, f"scaling-{cfg.scaling.value}", scaling=scaling)
        return 0, to_csv(scaling, columns)

    paths = [p for source in cfg.inputs for p in corpus_files(source)]
    rows = run_corpus(paths, cfg.methods or DEFAULT_METHODS, cfg.k, modulus_for(cfg), cfg.max_width, cfg.threads)
    columns = list(BenchRow.model_fields)
    stderr.print(_table("bench", columns, rows))
    if cfg.store:
        _store(cfg, "corpus", rows=rows)
    return 0, to_csv(rows, columns)


@router.command("bench")
def cmd_bench(
    corpus: Optional[Path] = typer.Argument(None, help="Directory (or single file) of graph instances"),
    method: Optional[List[str]] = typer.Option(None, "--method", help="Repeatable; all three methods by default"),
    k: Optional[int] = typer.Option(None, "--k", "-k", help="Decide at k instead of optimizing"),
    scaling: Optional[ScalingKind] = typer.Option(None, "--scaling", help="Run a scaling series instead of a corpus"),
    max_width: Optional[int] = typer.Option(settings.max_width, "--max-width"),
    modular: bool = typer.Option(settings.counting_mode == "modular", "--modular/--exact"),
    threads: int = typer.Option(settings.threads, "--threads", help="Worker processes for the GST route"),
    store: bool = typer.Option(False, "--store", help="Persist rows to the bench database"),
    db: Optional[str] = typer.Option(None, "--db", help="SQLAlchemy URL; CFVS_DATABASE_URL otherwise"),
    seed: int = typer.Option(settings.seed, "--seed"),
):
    """CSV of (instance, method, size, time, counters) on stdout; a table on stderr."""
    run_command(
        run_bench,
        subcommand=Subcommand.BENCH,
        inputs=[corpus] if corpus else [],
        methods=method or [],
        k=k,
        scaling=scaling,
        max_width=max_width,
        counting=CountingMode.MODULAR if modular else CountingMode.EXACT,
        threads=threads,
        store=store,
        database_url=db,
        seed=seed,
    )
