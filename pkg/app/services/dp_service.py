"""Connected feedback vertex set over a nice tree decomposition.

A row (S, P, Y) at node i with bag X stands for the cheapest F inside the
subtree graph G_i such that F meets X exactly in S, G_i - F is a forest whose
components split X - S exactly as Y, and either S is non-empty, every
component of F meets S and P is the split of S, or S is empty and F is
connected (possibly empty).
"""
import logging
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Tuple

from networkx.utils import UnionFind

from app.core.exceptions import DpInvariantError, WidthLimitExceededError
from app.models.cfvs import SolverStats
from app.models.decomposition import NiceTreeDecomposition, NodeKind
from app.models.dp import DpRow, DpTable
from app.models.graph import Graph, Partition, VertexSet
from app.services.graph_service import connected_components, induced_is_forest, is_connected_subset, is_fvs

logger = logging.getLogger(__name__)

Rows = Iterable[Tuple[DpRow, int]]


def row_bound(width: int) -> int:
    w = max(width, 0)
    return (2 * w + 2) ** (2 * w + 2)


def _within(val: int, k: Optional[int]) -> bool:
    # val never decreases towards the root, so rows above k are dead
    return k is None or val <= k


def _union_closure(ground: Iterable[int], *partitions: Partition) -> Partition:
    members = sorted(ground)
    forest = UnionFind(members)
    for partition in partitions:
        for piece in partition:
            forest.union(*piece)
    return Partition.of(forest.to_sets())


# TRANSITIONS

def dp_leaf(bag: VertexSet, g: Graph, k: Optional[int] = None, node: int = -1) -> DpTable:
    table = DpTable(node, bag)
    ordered = sorted(bag)
    for size in range(len(ordered) + 1):
        if not _within(size, k):
            break
        for chosen in combinations(ordered, size):
            s = frozenset(chosen)
            rest = bag - s
            if not induced_is_forest(g, rest):
                continue
            table.relax(DpRow(s, connected_components(g, s), connected_components(g, rest)), size)
    return table


def dp_introduce(child: DpTable, x: int, bag: VertexSet, g: Graph, k: Optional[int] = None, node: int = -1) -> DpTable:
    table = DpTable(node, bag)
    edges_to = g.multiplicity[x]
    for row, entry in child.rows.items():
        # x inside the solution
        if _within(entry.val + 1, k) and (row.s or entry.val == 0):
            touched = [piece for piece in row.p if any(v in edges_to for v in piece)]
            table.relax(DpRow(row.s | {x}, row.p.merged_with(x, touched), row.y), entry.val + 1, (row,))

        # x inside the forest
        if g.has_loop(x):
            continue
        touched = []
        closes_cycle = False
        for piece in row.y:
            hits = sum(edges_to[v] for v in piece)
            if hits > 1:
                closes_cycle = True
                break
            if hits == 1:
                touched.append(piece)
        if not closes_cycle:
            table.relax(DpRow(row.s, row.p, row.y.merged_with(x, touched)), entry.val, (row,))
    return table


def dp_forget(child: DpTable, x: int, bag: VertexSet, g: Graph, k: Optional[int] = None, node: int = -1) -> DpTable:
    table = DpTable(node, bag)
    for row, entry in child.rows.items():
        if x not in row.s:
            table.relax(DpRow(row.s, row.p, row.y.without(x)), entry.val, (row,))
        elif len(row.s) == 1:
            # the solution is complete below this node
            table.relax(DpRow(frozenset(), Partition(), row.y), entry.val, (row,))
        elif len(row.p.piece_of(x)) >= 2:
            table.relax(DpRow(row.s - {x}, row.p.without(x), row.y), entry.val, (row,))
    return table


def _forest_merge(rest: VertexSet, representative: Dict[int, int], left: Partition, right: Partition) -> Optional[Partition]:
    """Union of two forests glued along g[rest]; None when the union has a cycle.

    `representative` maps each vertex of rest to its component of g[rest].
    """
    forest = UnionFind()
    for side, partition in (("l", left), ("r", right)):
        for index, piece in enumerate(partition):
            star = (side, index)
            for rep in sorted({representative[v] for v in piece}):
                if forest[star] == forest[rep]:
                    return None
                forest.union(star, rep)
    return _union_closure(rest, left, right)


def dp_join(left: DpTable, right: DpTable, bag: VertexSet, g: Graph, k: Optional[int] = None, node: int = -1) -> DpTable:
    table = DpTable(node, bag)
    by_s: Dict[VertexSet, List[Tuple[DpRow, int]]] = {}
    for row, entry in right.rows.items():
        by_s.setdefault(row.s, []).append((row, entry.val))

    merged_y: Dict[Tuple[Partition, Partition], Optional[Partition]] = {}
    shared: Dict[VertexSet, Dict[int, int]] = {}
    for row_l, entry_l in left.rows.items():
        s = row_l.s
        rest = bag - s
        if rest not in shared:
            shared[rest] = {v: piece[0] for piece in connected_components(g, rest) for v in piece}
        for row_r, val_r in by_s.get(s, ()):
            if s:
                val = entry_l.val + val_r - len(s)
            elif entry_l.val and val_r:
                # two non-empty solutions on either side of an empty separator
                continue
            else:
                val = max(entry_l.val, val_r)
            if not _within(val, k):
                continue
            key = (row_l.y, row_r.y)
            if key not in merged_y:
                merged_y[key] = _forest_merge(rest, shared[rest], row_l.y, row_r.y)
            y = merged_y[key]
            if y is None:
                continue
            p = _union_closure(s, row_l.p, row_r.p) if s else Partition()
            table.relax(DpRow(s, p, y), val, (row_l, row_r))
    return table


# DRIVER

def _reconstruct(ntd: NiceTreeDecomposition, tables: Dict[int, DpTable], row: DpRow) -> VertexSet:
    chosen = set()
    stack = [(ntd.root, row)]
    while stack:
        node_id, current = stack.pop()
        chosen |= current.s
        entry = tables[node_id].rows[current]
        for child, back in zip(ntd.node(node_id).children, entry.back):
            stack.append((child, back))
    return frozenset(chosen)


def dp_solve(
    g: Graph,
    ntd: NiceTreeDecomposition,
    k: Optional[int] = None,
    stats: Optional[SolverStats] = None,
    max_width: Optional[int] = None,
    keep_tables: Optional[Dict[int, DpTable]] = None,
) -> Tuple[Optional[int], Optional[VertexSet]]:
    """Minimum connected feedback vertex set, or (None, None) above k.

    `keep_tables`, when given, receives every node table.
    """
    width = ntd.width
    if max_width is not None and width > max_width:
        raise WidthLimitExceededError(width, max_width)
    bound = row_bound(width)
    stats = stats if stats is not None else SolverStats()

    tables: Dict[int, DpTable] = {}
    for node in ntd.postorder():
        if node.kind == NodeKind.LEAF:
            table = dp_leaf(node.bag, g, k, node.id)
        elif node.kind == NodeKind.INTRODUCE:
            table = dp_introduce(tables[node.children[0]], node.vertex, node.bag, g, k, node.id)
        elif node.kind == NodeKind.FORGET:
            table = dp_forget(tables[node.children[0]], node.vertex, node.bag, g, k, node.id)
        else:
            table = dp_join(tables[node.children[0]], tables[node.children[1]], node.bag, g, k, node.id)
        if len(table) > bound:
            raise DpInvariantError(f"node {node.id} holds {len(table)} rows, bound is {bound}")
        stats.dp_rows += len(table)
        stats.dp_candidates += table.offered
        stats.max_table_rows = max(stats.max_table_rows, len(table))
        tables[node.id] = table

    if keep_tables is not None:
        keep_tables.update(tables)

    root = tables[ntd.root]
    candidates = [(entry.val, row.sort_key, row) for row, entry in root.rows.items() if len(row.p) <= 1]
    if not candidates:
        logger.debug(f"no root row within k={k}")
        return None, None
    val, _, best = min(candidates)
    if k is not None and val > k:
        return None, None

    witness = _reconstruct(ntd, tables, best)
    if len(witness) != val or not is_fvs(g, witness) or not is_connected_subset(g, witness):
        raise DpInvariantError(f"reconstructed set {sorted(witness)} does not realize value {val}")
    logger.debug(f"DP optimum {val} over {len(ntd)} nodes, width {width}, peak {stats.max_table_rows} rows")
    return val, witness
