import logging
import random
import time
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd
from sqlalchemy.orm import Session

from app.core.exceptions import CfvsError, GraphFormatError
from app.models.cfvs import SolverStats
from app.models.models import BenchResult, BenchRun, ScalingResult
from app.models.steiner import DsotInstance, GstInstance
from app.schemas.schemas import BenchRow, CountingMode, Method, ScalingKind, ScalingRow, StatsDocument
from app.services.cfvs_service import cfvs_optimize, cfvs_solve
from app.services.dp_service import dp_solve, row_bound
from app.services.generator_service import partial_ktree, random_gnm
from app.services.graph_service import parse_graph
from app.services.steiner_service import dsot_decide, reduce_gst_to_dsot
from app.services.treewidth_service import nice_from_graph

logger = logging.getLogger(__name__)

CORPUS_SUFFIXES = (".gr", ".dimacs", ".col", ".edges", ".txt")
DEFAULT_METHODS = (Method.COMPACT_GST, Method.TREEWIDTH_DP, Method.BRUTE_FORCE)


# CORPUS

def corpus_files(directory: Path) -> List[Path]:
    if not directory.exists():
        raise CfvsError(f"corpus {directory} does not exist")
    if directory.is_file():
        return [directory]
    return sorted(p for p in directory.iterdir() if p.is_file() and p.suffix in CORPUS_SUFFIXES)


def run_corpus(
    paths: Iterable[Path],
    methods: Sequence[Method] = DEFAULT_METHODS,
    k: Optional[int] = None,
    modulus: Optional[int] = None,
    max_width: Optional[int] = None,
    threads: int = 1,
) -> List[BenchRow]:
    """One row per (instance, method); the optimum when k is None.

    A solver error is recorded as status "error" and the run moves on.
    """
    rows = []
    for path in paths:
        try:
            g = parse_graph(path.read_text())
        except GraphFormatError as exc:
            logger.warning(f"skipping {path.name}: {exc.detail}")
            continue
        for method in methods:
            started = time.perf_counter()
            try:
                if k is None:
                    outcome = cfvs_optimize(g, method, modulus=modulus, threads=threads, max_width=max_width)
                else:
                    outcome = cfvs_solve(g, k, method, modulus=modulus, threads=threads, max_width=max_width)
            except CfvsError as exc:
                logger.warning(f"{path.name} / {method.value}: {exc.detail}")
                rows.append(BenchRow(
                    instance=path.name, method=method, k=k, status="error",
                    elapsed_ms=(time.perf_counter() - started) * 1000,
                ))
                continue
            elapsed = (time.perf_counter() - started) * 1000
            solution = outcome.solution
            counters = StatsDocument.model_validate(outcome.stats)
            rows.append(BenchRow(
                instance=path.name,
                method=outcome.method,
                k=k,
                status="yes" if solution else "no",
                size=solution.size if solution else None,
                width=outcome.width,
                elapsed_ms=elapsed,
                **counters.model_dump(exclude={"elapsed_ms"}),
            ))
    return rows


# SCALING

def _random_groups(n: int, l: int, size: int, seed: int):
    rng = random.Random(seed)
    pool = list(range(n))
    rng.shuffle(pool)
    return tuple(frozenset(pool[i * size:(i + 1) * size]) for i in range(l))


def gst_scaling(
    levels: Sequence[int] = range(4, 10),
    n: int = 40,
    m: int = 80,
    p: int = 12,
    group_size: int = 2,
    repeats: int = 3,
    seed: int = 0,
) -> List[ScalingRow]:
    """Time one inclusion-exclusion pass per group count on a fixed graph.

    `ratio` is the median time at l over the median time at l - 1. Every level
    counts walks up to the same length, so levels differ only in the 2^l
    terminal subsets.
    """
    g = random_gnm(n, m, seed)
    budget = p + max(levels)
    rows: List[ScalingRow] = []
    previous = None
    for l in levels:
        reduction = reduce_gst_to_dsot(GstInstance(g, _random_groups(n, l, group_size, seed), p))
        root = min(reduction.root_candidates)
        inst = DsotInstance(reduction.digraph, root, reduction.terminals, budget)
        samples = []
        for _ in range(repeats):
            started = time.perf_counter()
            dsot_decide(inst)
            samples.append((time.perf_counter() - started) * 1000)
        median = float(np.median(samples))
        ratio = median / previous if previous else None
        rows.append(ScalingRow(kind=ScalingKind.GST, parameter=l, elapsed_ms=median, ratio=ratio))
        logger.info(f"gst scaling l={l}: {median:.1f} ms" + (f", ratio {ratio:.2f}" if ratio else ""))
        previous = median
    return rows


def dp_scaling(
    widths: Sequence[int] = range(1, 5),
    n: int = 12,
    repeats: int = 3,
    seed: int = 0,
) -> List[ScalingRow]:
    """DP time, peak table size and candidate rows per width on fixed partial k-trees.

    The last row carries the log-log slope of time against candidate rows;
    a slope near 1 means time follows the table work.
    """
    rows: List[ScalingRow] = []
    for width in widths:
        g = partial_ktree(n, width, seed)
        ntd = nice_from_graph(g)
        samples = []
        stats = SolverStats()
        for _ in range(repeats):
            stats = SolverStats()
            started = time.perf_counter()
            dp_solve(g, ntd, stats=stats)
            samples.append((time.perf_counter() - started) * 1000)
        rows.append(ScalingRow(
            kind=ScalingKind.DP,
            parameter=ntd.width,
            elapsed_ms=float(np.median(samples)),
            rows=stats.max_table_rows,
            candidates=stats.dp_candidates,
            bound=row_bound(ntd.width),
        ))
    if len(rows) >= 2:
        x = np.log([max(row.candidates, 1) for row in rows])
        y = np.log([max(row.elapsed_ms, 1e-6) for row in rows])
        if np.ptp(x) > 0:
            rows[-1].slope = float(np.polyfit(x, y, 1)[0])
    return rows


# OUTPUT

def to_csv(rows: Sequence, columns: Sequence[str]) -> str:
    frame = pd.DataFrame([row.model_dump(mode="json") for row in rows], columns=list(columns))
    return frame.to_csv(index=False)


def store_run(
    db: Session,
    kind: str,
    rows: Sequence[BenchRow] = (),
    scaling: Sequence[ScalingRow] = (),
    source: Optional[str] = None,
    seed: int = 0,
    counting: CountingMode = CountingMode.EXACT,
) -> BenchRun:
    run = BenchRun(kind=kind, source=source, seed=seed, counting=counting.value)
    run.results = [BenchResult(**row.model_dump(mode="json")) for row in rows]
    run.scaling = [ScalingResult(**row.model_dump(mode="json")) for row in scaling]
    db.add(run)
    db.commit()
    db.refresh(run)
    logger.info(f"stored bench run {run.id} with {len(rows) + len(scaling)} rows")
    return run
