from dataclasses import dataclass, field
from typing import Dict, NamedTuple, Optional, Tuple

from app.models.graph import Partition, VertexSet


@dataclass(frozen=True)
class DpRow:
    """The (S, P, Y) part of a table row; `val` lives in DpEntry."""

    s: VertexSet
    p: Partition = Partition()
    y: Partition = Partition()

    @property
    def sort_key(self):
        return (tuple(sorted(self.s)), self.p.pieces, self.y.pieces)


class DpEntry(NamedTuple):
    val: int
    # child rows this value was derived from (one for unary nodes, two for joins)
    back: Tuple[DpRow, ...] = ()

    @property
    def back_key(self):
        return tuple(row.sort_key for row in self.back)


@dataclass
class DpTable:
    node: int
    bag: VertexSet
    rows: Dict[DpRow, DpEntry] = field(default_factory=dict)
    # candidate rows offered to relax(), kept or not
    offered: int = 0

    def __len__(self) -> int:
        return len(self.rows)

    def relax(self, row: DpRow, val: int, back: Tuple[DpRow, ...] = ()) -> None:
        """Keep the smaller value; ties go to the lexicographically smallest predecessor."""
        self.offered += 1
        current: Optional[DpEntry] = self.rows.get(row)
        candidate = DpEntry(val, back)
        if current is None or val < current.val or (
            val == current.val and candidate.back_key < current.back_key
        ):
            self.rows[row] = candidate
