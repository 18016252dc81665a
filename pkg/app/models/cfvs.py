from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from app.core.exceptions import InvalidInstanceError
from app.models.graph import Graph, VertexSet
from app.schemas.schemas import Method


@dataclass
class SolverStats:
    """Counters filled in while solving."""

    reps_tried: int = 0
    subsets_evaluated: int = 0
    dp_rows: int = 0
    max_table_rows: int = 0
    # rows offered to DP tables, the DP work measure
    dp_candidates: int = 0
    elapsed_ms: float = 0.0

    def absorb(self, other: "SolverStats") -> None:
        self.reps_tried += other.reps_tried
        self.subsets_evaluated += other.subsets_evaluated
        self.dp_rows += other.dp_rows
        self.dp_candidates += other.dp_candidates
        self.max_table_rows = max(self.max_table_rows, other.max_table_rows)
        self.elapsed_ms += other.elapsed_ms


@dataclass(frozen=True)
class CfvsInstance:
    g: Graph
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise InvalidInstanceError("k must be non-negative")


@dataclass(frozen=True)
class CfvsSolution:
    vertices: VertexSet
    method: Method
    stats: SolverStats = field(default_factory=SolverStats, compare=False)

    @property
    def size(self) -> int:
        return len(self.vertices)


class CfvsOutcome(NamedTuple):
    """A dispatched solve: the solution (None for "no"), the method that ran and its counters."""

    solution: Optional[CfvsSolution]
    method: Method
    stats: SolverStats
    width: Optional[int] = None
