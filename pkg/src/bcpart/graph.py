"""Undirected simple graphs with stable vertex/edge ids, connectivity
machinery, contraction, and the witness verifiers that define problem
semantics for every solver engine.

Vertices are dense integers 0..n-1.  Edges are stored as (u, v) pairs with
u < v; the position of an edge in ``Graph.edges`` is its stable edge id
(the matroid machinery indexes matrix columns by edge id).

Witnesses are plain frozensets: a vertex-partition witness is the vertex
set of side one, an edge-partition witness is the edge-id set of side one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

VertexWitness = FrozenSet[int]
EdgeWitness = FrozenSet[int]


class BcepSemantics(Enum):
    """Reading of "both edge sides connected" for edge partitions.

    SPANNING requires the complement side to connect *all* vertices of the
    graph; EDGE_INDUCED only requires each side's edge-induced subgraph
    (vertices = endpoints of that side) to be connected.
    """

    SPANNING = "spanning"
    EDGE_INDUCED = "edge-induced"


class GraphError(ValueError):
    """Malformed graph construction or witness input."""


class Graph:
    """Immutable undirected simple graph on vertices 0..n-1."""

    __slots__ = ("n", "edges", "adj", "_edge_index")

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]]):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        self.n = n
        norm: List[Tuple[int, int]] = []
        seen = set()
        adj: List[List[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) endpoint out of range")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise GraphError(f"parallel edge ({u}, {v})")
            seen.add((u, v))
            adj[u].append(v)
            adj[v].append(u)
            norm.append((u, v))
        self.edges: Tuple[Tuple[int, int], ...] = tuple(norm)
        self.adj: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self._edge_index: Dict[Tuple[int, int], int] = {e: i for i, e in enumerate(norm)}

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_id(self, u: int, v: int) -> int:
        """Stable id of edge (u, v); raises KeyError if absent."""
        return self._edge_index[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_index

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def is_connected(g: Graph) -> bool:
    """True iff g has at most one connected component.

    The empty graph and one-vertex graphs count as connected; degenerate
    contraction outputs rely on this convention.
    """
    if g.n <= 1:
        return True
    seen = _bfs_from(g, 0)
    return len(seen) == g.n


def connected_components(g: Graph) -> List[FrozenSet[int]]:
    """Partition of V(g) into maximal connected sets, ordered by min vertex."""
    out: List[FrozenSet[int]] = []
    visited = [False] * g.n
    for start in range(g.n):
        if visited[start]:
            continue
        comp = _bfs_from(g, start)
        for v in comp:
            visited[v] = True
        out.append(frozenset(comp))
    return out


def _bfs_from(g: Graph, start: int, allowed: Optional[FrozenSet[int]] = None) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in seen and (allowed is None or w in allowed):
                seen.add(w)
                queue.append(w)
    return seen


def bfs_ball(g: Graph, v: int, r: int) -> FrozenSet[int]:
    """All vertices at BFS distance <= r from v (v itself at distance 0)."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    if r < 0:
        raise GraphError("radius must be non-negative")
    dist = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        if dist[u] == r:
            continue
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return frozenset(dist)


def bfs_distances(g: Graph, v: int) -> Dict[int, int]:
    """BFS distance from v to every reachable vertex."""
    dist = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def induced_subgraph_connected(g: Graph, vertices: FrozenSet[int]) -> bool:
    """True iff g[vertices] is connected (empty and singleton sets count)."""
    if len(vertices) <= 1:
        return True
    start = next(iter(vertices))
    seen = _bfs_from(g, start, allowed=frozenset(vertices))
    seen &= vertices
    return len(seen) == len(vertices)


@dataclass(frozen=True)
class Contraction:
    """Result of contracting everything outside a kept vertex set.

    ``graph`` is G' = G[keep + terminals] with dense relabeled ids: kept
    vertices occupy 0..len(keep)-1 in ascending original order, terminals
    follow.  ``component_map`` sends each terminal id to the original
    vertex set of its contracted component; ``orig_of`` maps each kept new
    id back to its original id.
    """

    graph: Graph
    terminals: FrozenSet[int]
    component_map: Dict[int, FrozenSet[int]]
    orig_of: Dict[int, int]
    new_of: Dict[int, int] = field(repr=False, default_factory=dict)


def contract_outside(g: Graph, keep: FrozenSet[int]) -> Contraction:
    """Contract each connected component of g - keep into one terminal.

    Each terminal u_i is adjacent to exactly the kept neighbors of its
    component; parallel edges collapse.  keep = V(g) yields no terminals.
    """
    keep = frozenset(keep)
    for v in keep:
        if not 0 <= v < g.n:
            raise GraphError(f"keep vertex {v} out of range")
    kept_sorted = sorted(keep)
    new_of = {v: i for i, v in enumerate(kept_sorted)}
    orig_of = {i: v for i, v in enumerate(kept_sorted)}

    outside = [v for v in range(g.n) if v not in keep]
    comps: List[FrozenSet[int]] = []
    visited = set()
    outside_set = frozenset(outside)
    for v in outside:
        if v in visited:
            continue
        comp = _bfs_from(g, v, allowed=outside_set)
        visited |= comp
        comps.append(frozenset(comp))
    comps.sort(key=min)

    edges = set()
    for u, v in g.edges:
        if u in keep and v in keep:
            edges.add((new_of[u], new_of[v]))
    terminals = set()
    component_map: Dict[int, FrozenSet[int]] = {}
    next_id = len(kept_sorted)
    for comp in comps:
        t = next_id
        next_id += 1
        terminals.add(t)
        component_map[t] = comp
        for w in comp:
            for x in g.adj[w]:
                if x in keep:
                    edges.add((new_of[x], t))
    gp = Graph(next_id, sorted(edges))
    return Contraction(gp, frozenset(terminals), component_map, orig_of, new_of)


def verify_bcp2(g: Graph, side_one: FrozenSet[int], n1: int) -> bool:
    """True iff side_one has size n1 and both induced sides are connected."""
    side_one = frozenset(side_one)
    for v in side_one:
        if not 0 <= v < g.n:
            raise GraphError(f"witness vertex {v} not in graph")
    if not 1 <= len(side_one) <= g.n - 1:
        return False
    if len(side_one) != n1:
        return False
    other = frozenset(range(g.n)) - side_one
    return induced_subgraph_connected(g, side_one) and induced_subgraph_connected(g, other)


def _edge_induced_connected(g: Graph, edge_ids: FrozenSet[int]) -> bool:
    """Connectivity of the subgraph on exactly the endpoints of edge_ids."""
    if not edge_ids:
        return True
    adj: Dict[int, List[int]] = {}
    for e in edge_ids:
        u, v = g.edges[e]
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    start = next(iter(adj))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(adj)


def _spanning_connected(g: Graph, edge_ids: FrozenSet[int]) -> bool:
    """Connectivity of (V(g), edge_ids) on ALL vertices of g."""
    if g.n <= 1:
        return True
    adj: List[List[int]] = [[] for _ in range(g.n)]
    for e in edge_ids:
        u, v = g.edges[e]
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == g.n


def verify_bcep2(
    g: Graph, side_one: FrozenSet[int], n1: int, sem: BcepSemantics
) -> bool:
    """Check an edge-partition witness under the chosen semantics.

    edge_induced: both sides' edge-induced subgraphs must be connected.
    spanning: side one edge-induced connected, and the complement edge set
    must connect ALL vertices of g.
    """
    side_one = frozenset(side_one)
    for e in side_one:
        if not 0 <= e < g.m:
            raise GraphError(f"witness edge id {e} not in graph")
    if not 1 <= len(side_one) <= g.m - 1:
        return False
    if len(side_one) != n1:
        return False
    rest = frozenset(range(g.m)) - side_one
    if sem is BcepSemantics.EDGE_INDUCED:
        return _edge_induced_connected(g, side_one) and _edge_induced_connected(g, rest)
    return _edge_induced_connected(g, side_one) and _spanning_connected(g, rest)


def component_precheck(
    g: Graph, n1: int
) -> Tuple[str, Optional[VertexWitness]]:
    """Resolve disconnected inputs before any engine runs.

    Returns ("yes", witness), ("no", None) or ("undecided", None).  With
    >= 3 components no balanced connected 2-partition exists; with exactly
    two, one component must be exactly one side.
    """
    comps = connected_components(g)
    if len(comps) <= 1:
        return ("undecided", None)
    if len(comps) > 2:
        return ("no", None)
    c0, c1 = comps
    if len(c0) == n1:
        return ("yes", c0)
    if len(c1) == n1:
        return ("yes", c1)
    return ("no", None)


def check_n1_vertex(g: Graph, n1: int) -> None:
    """Instance validation: 1 <= n1 <= n-1 (0 and n are trivially invalid)."""
    if not 1 <= n1 <= g.n - 1:
        raise GraphError(f"n1={n1} out of range for n={g.n} (need 1 <= n1 <= n-1)")


def check_n1_edge(g: Graph, n1: int) -> None:
    """Instance validation for edge partitions: 1 <= n1 <= m-1."""
    if not 1 <= n1 <= g.m - 1:
        raise GraphError(f"n1={n1} out of range for m={g.m} (need 1 <= n1 <= m-1)")
