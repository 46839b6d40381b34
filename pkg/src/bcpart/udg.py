"""Unit-disk engine: grid cells, the two reduction rules with explicit
witness construction, the restricted distance-ball kernel, and the driver.

A disk instance derives its graph from point coordinates: two vertices are
adjacent iff their Euclidean distance is at most the threshold.  All
distance comparisons run on exact rationals (coordinates are parsed as
decimals), so adjacency never flips on floating-point ties.  The grid
partitions the plane into half-threshold squares; any two points in one
cell are adjacent because the cell diagonal is threshold * sqrt(2)/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple

from .graph import (
    Graph,
    GraphError,
    VertexWitness,
    check_n1_vertex,
    connected_components,
    contract_outside,
    Contraction,
    is_connected,
    verify_bcp2,
)
from .dp import _b_order, _extract_witness, compute_tables, _record_stats, Structure
from .treedecomp import make_nice, min_fill_decomposition

Point = Tuple[Fraction, Fraction]
Cell = Tuple[int, int]

DENSE_CELL_MARGIN = 24  # cells this far over the target size force a YES


@dataclass
class DiskInstance:
    points: List[Point]
    threshold: Fraction
    graph: Graph
    cells: Dict[Cell, List[int]]
    cell_of: List[Cell]

    @property
    def n(self) -> int:
        return len(self.points)


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise GraphError(f"non-finite coordinate {x!r}")
        return Fraction(str(x))
    return Fraction(str(x))


def build_disk_graph(points, threshold=Fraction(1)) -> DiskInstance:
    """Derive the unit-disk graph and grid from a point list.

    Edge ids follow sorted endpoint pairs.  Grid cells are half-threshold
    squares anchored at the origin; points exactly on a cell line fall
    into the floor cell.
    """
    thr = _to_fraction(threshold)
    if thr <= 0:
        raise GraphError("threshold must be positive")
    pts = [(_to_fraction(x), _to_fraction(y)) for x, y in points]
    thr2 = thr * thr
    n = len(pts)
    edges = []
    for u in range(n):
        xu, yu = pts[u]
        for v in range(u + 1, n):
            dx = xu - pts[v][0]
            dy = yu - pts[v][1]
            if dx * dx + dy * dy <= thr2:
                edges.append((u, v))
    g = Graph(n, sorted(edges))
    cells: Dict[Cell, List[int]] = {}
    cell_of: List[Cell] = []
    for i, (x, y) in enumerate(pts):
        cell = (math.floor(2 * x / thr), math.floor(2 * y / thr))
        cell_of.append(cell)
        cells.setdefault(cell, []).append(i)
    for members in cells.values():
        members.sort()
        # a cell is a clique: its diagonal cannot exceed the threshold
        for i, u in enumerate(members):
            for v in members[i + 1 :]:
                assert g.has_edge(u, v), "cell clique invariant violated"
    return DiskInstance(pts, thr, g, cells, cell_of)


def rule_components(
    di: DiskInstance, n1: int
) -> Optional[Tuple[bool, Optional[VertexWitness]]]:
    """First reduction: decide by component structure, or None if connected.

    Three or more components: NO.  Exactly two: YES with the size-n1
    component as the witness iff one side matches, else NO.
    """
    comps = connected_components(di.graph)
    if len(comps) <= 1:
        return None
    if len(comps) > 2:
        return (False, None)
    for comp in comps:
        if len(comp) == n1:
            return (True, comp)
    return (False, None)


def rule_dense_cell(di: DiskInstance, k: int) -> Optional[VertexWitness]:
    """Second reduction: a cell with >= k + 24 centers forces a YES.

    Only the 24 other cells of the 5x5 neighborhood around a cell can see
    it; marking one contact vertex per such cell (the lowest-id vertex of
    the cell reachable from the neighbor) keeps the complement connected,
    so any k unmarked vertices of the cell form side one.
    """
    if not is_connected(di.graph):
        raise GraphError("dense-cell rule requires a connected instance")
    g = di.graph
    for cell in sorted(di.cells):
        members = di.cells[cell]
        if len(members) < k + DENSE_CELL_MARGIN:
            continue
        member_set = set(members)
        cx, cy = cell
        marked = set()
        for dx in range(-2, 3):
            for dy in range(-2, 3):
                if dx == 0 and dy == 0:
                    continue
                other = di.cells.get((cx + dx, cy + dy))
                if not other:
                    continue
                contacts = {
                    w for u in other for w in g.adj[u] if w in member_set
                }
                if contacts:
                    marked.add(min(contacts))
        unmarked = [v for v in members if v not in marked]
        witness = frozenset(unmarked[:k])
        assert verify_bcp2(g, witness, k), "dense-cell witness failed verification"
        return witness
    return None


def kernelize_restricted_udg(di: DiskInstance, k: int, v: int) -> Contraction:
    """Kernel for the 'v on side one' restriction: keep the Euclidean ball
    of radius k*threshold around v, contract the rest into terminals.

    With no dense cell, each cell holds at most k + 23 centers and the
    ball meets O(k^2) cells, so the kept set is O(k^3)."""
    if not 0 <= v < di.n:
        raise GraphError(f"vertex {v} out of range")
    radius2 = (k * di.threshold) ** 2
    xv, yv = di.points[v]
    keep = frozenset(
        u
        for u, (x, y) in enumerate(di.points)
        if (x - xv) ** 2 + (y - yv) ** 2 <= radius2
    )
    return contract_outside(di.graph, keep)


def solve_bcp2_udg(
    di: DiskInstance, n1: int, stats: Optional[dict] = None
) -> Optional[VertexWitness]:
    """Reduction rules first, then one kernelized DP run per vertex."""
    g = di.graph
    check_n1_vertex(g, n1)
    decided = rule_components(di, n1)
    if decided is not None:
        answer, witness = decided
        if stats is not None:
            stats["rule"] = "components"
        if not answer:
            return None
        assert verify_bcp2(g, witness, n1)
        return witness
    k = min(n1, g.n - n1)
    dense = rule_dense_cell(di, k)
    if dense is not None:
        if stats is not None:
            stats["rule"] = "dense_cell"
        side = dense if n1 == k else frozenset(range(g.n)) - dense
        assert verify_bcp2(g, side, n1)
        return side
    if stats is not None:
        stats["rule"] = "kernel_dp"
        stats["cell_histogram"] = {
            f"{cx},{cy}": len(members)
            for (cx, cy), members in sorted(di.cells.items())
        }
    for v in range(g.n):
        con = kernelize_restricted_udg(di, k, v)
        gp = con.graph
        a = con.new_of[v]
        td = min_fill_decomposition(gp)
        for b in _b_order(gp, a, (x for x in range(gp.n) if x != a)):
            ntd = make_nice(td, gp, a, b)
            dp = compute_tables(ntd, gp, [k], forbidden_U=con.terminals)
            _record_stats(stats, dp)
            key: Structure = (((a,),), ((b,),))
            if dp.tables[ntd.root].get(key, 0) >> k & 1:
                inner = _extract_witness(dp, gp, k)
                assert not inner & con.terminals
                witness = frozenset(con.orig_of[x] for x in inner)
                side = witness if n1 == k else frozenset(range(g.n)) - witness
                assert verify_bcp2(g, side, n1)
                return side
    return None
