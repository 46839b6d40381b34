"""Exhaustive brute-force solvers: the ground truth for every engine test.

The vertex oracle enumerates connected vertex sets of the smaller side by
boundary expansion with a canonical minimum-new-element rule, so each set
is produced exactly once without a visited-set and in a deterministic
order.  The edge oracle scans raw edge-id combinations of the smaller
side.  Both refuse instances whose candidate count exceeds a hard bound:
these are test oracles, not production engines.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import FrozenSet, Iterator, Optional

from .graph import (
    BcepSemantics,
    EdgeWitness,
    Graph,
    GraphError,
    VertexWitness,
    check_n1_edge,
    check_n1_vertex,
    induced_subgraph_connected,
    verify_bcep2,
    verify_bcp2,
)

CANDIDATE_BOUND = 10_000_000


class OracleLimitError(RuntimeError):
    """Instance exceeds the oracle's candidate bound."""


def enumerate_connected_vertex_sets(
    g: Graph, size: int, anchor: Optional[int] = None
) -> Iterator[FrozenSet[int]]:
    """Yield every vertex set S with |S| = size and g[S] connected.

    With an anchor, only sets containing it.  Each set appears exactly
    once; order is deterministic (lexicographic by growth choices).
    """
    if not 1 <= size <= g.n:
        raise GraphError(f"size {size} out of range")
    if anchor is not None and not 0 <= anchor < g.n:
        raise GraphError(f"anchor {anchor} out of range")

    def grow(current: set, forbidden: set, floor: int) -> Iterator[FrozenSet[int]]:
        if len(current) == size:
            yield frozenset(current)
            return
        boundary = sorted(
            {
                w
                for u in current
                for w in g.adj[u]
                if w not in current and w not in forbidden and w >= floor
            }
        )
        for i, w in enumerate(boundary):
            yield from grow(current | {w}, forbidden | set(boundary[:i]), floor)

    if anchor is not None:
        yield from grow({anchor}, set(), 0)
    else:
        for root in range(g.n):
            # restricting growth to ids >= root makes root the canonical
            # minimum element of every set it seeds
            yield from grow({root}, set(), root)


def solve_bcp2_oracle(g: Graph, n1: int) -> Optional[VertexWitness]:
    """Decide BCP2 by exhaustion; returns a verified witness or None."""
    check_n1_vertex(g, n1)
    k = min(n1, g.n - n1)
    if math.comb(g.n, k) > CANDIDATE_BOUND:
        raise OracleLimitError(
            f"C({g.n}, {k}) exceeds the oracle bound of {CANDIDATE_BOUND}"
        )
    everything = frozenset(range(g.n))
    for small in enumerate_connected_vertex_sets(g, k):
        rest = everything - small
        if induced_subgraph_connected(g, rest):
            witness = small if n1 == k else rest
            assert verify_bcp2(g, witness, n1)
            return witness
    return None


def solve_bcep2_oracle(
    g: Graph, n1: int, sem: BcepSemantics
) -> Optional[EdgeWitness]:
    """Decide BCEP2 by exhaustion under the given semantics."""
    check_n1_edge(g, n1)
    k = min(n1, g.m - n1)
    if math.comb(g.m, k) > CANDIDATE_BOUND:
        raise OracleLimitError(
            f"C({g.m}, {k}) exceeds the oracle bound of {CANDIDATE_BOUND}"
        )
    all_edges = frozenset(range(g.m))
    for combo in combinations(range(g.m), k):
        small = frozenset(combo)
        side_one = small if n1 == k else all_edges - small
        if verify_bcep2(g, side_one, n1, sem):
            return side_one
    return None
