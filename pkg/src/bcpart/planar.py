"""Balanced-partition engine for bounded-reach instances: restrict to a BFS
ball around a designated side-one vertex, contract everything outside into
terminal vertices pinned to the complement side, and run the treewidth DP
on the contracted graph.

The engine is correct on any graph; on planar inputs the contracted graph
has bounded diameter, which is what keeps its width (and the DP) small.
Planarity itself is never verified here: no embedding is needed, and the
achieved decomposition width is reported in stats instead of assumed.
"""

from __future__ import annotations

from typing import FrozenSet, Optional

from .graph import (
    Graph,
    GraphError,
    VertexWitness,
    bfs_ball,
    check_n1_vertex,
    component_precheck,
    contract_outside,
    verify_bcp2,
)
from .dp import Structure, _b_order, _extract_witness, compute_tables, _record_stats
from .treedecomp import make_nice, min_fill_decomposition


def solve_restricted_planar(
    g: Graph, k: int, v: int, stats: Optional[dict] = None
) -> Optional[VertexWitness]:
    """Find X with v in X, |X| = k, g[X] and g - X connected, or None.

    Any such X lies inside the radius-k BFS ball of v, so components
    outside the ball collapse to terminals that the DP keeps on the
    complement side; cross-connectivity survives contraction in both
    directions.
    """
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    if not 1 <= k <= g.n - 1:
        raise GraphError(f"k={k} out of range")
    ball = bfs_ball(g, v, k)
    con = contract_outside(g, ball)
    gp = con.graph
    if stats is not None:
        stats.setdefault("ball_sizes", []).append(len(ball))
        stats.setdefault("terminal_counts", []).append(len(con.terminals))
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
            assert witness <= ball and v in witness
            assert verify_bcp2(g, witness, k)
            return witness
    return None


def solve_bcp2_planar(
    g: Graph, n1: int, stats: Optional[dict] = None
) -> Optional[VertexWitness]:
    """Sweep the designated vertex over V(g) with k = min(n1, n - n1)."""
    check_n1_vertex(g, n1)
    decided, witness = component_precheck(g, n1)
    if decided == "yes":
        return witness
    if decided == "no":
        return None
    k = min(n1, g.n - n1)
    for v in range(g.n):
        found = solve_restricted_planar(g, k, v, stats)
        if found is not None:
            side = found if n1 == k else frozenset(range(g.n)) - found
            assert verify_bcp2(g, side, n1)
            return side
    return None
