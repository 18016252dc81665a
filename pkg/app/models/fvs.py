from dataclasses import dataclass
from typing import Iterable, Tuple

from app.models.graph import VertexSet


@dataclass(frozen=True, order=True)
class CompactRepresentation:
    """Pairwise disjoint vertex sets; one vertex per set yields a feedback vertex set.

    Stored canonically (each set sorted, sets ordered) so equal families
    compare equal. Ordering is fewest-sets-first, then lexicographic.
    """

    sets: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        canonical = sorted(tuple(sorted(s)) for s in self.sets)
        object.__setattr__(self, "sets", tuple(canonical))

    @classmethod
    def of(cls, sets: Iterable[Iterable[int]]) -> "CompactRepresentation":
        return cls(tuple(tuple(s) for s in sets))

    @property
    def sort_key(self):
        return (len(self.sets), self.sets)

    @property
    def vertex_sets(self) -> Tuple[VertexSet, ...]:
        return tuple(frozenset(s) for s in self.sets)

    def is_disjoint(self) -> bool:
        seen = set()
        for s in self.sets:
            if seen.intersection(s):
                return False
            seen.update(s)
        return True

    def __len__(self) -> int:
        return len(self.sets)
