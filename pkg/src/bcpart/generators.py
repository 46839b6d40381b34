"""Instance generators: the clique gadget, the OR-composition chain, and
seeded random corpora (general / planar / 2-connected graphs, unit-disk
point clouds) for the test suites.

All generators are pure functions of their parameters and seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .graph import Graph, GraphError, connected_components, is_connected

Point = Tuple[Fraction, Fraction]


def _to_nx(g: Graph) -> "nx.Graph":
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def is_planar(g: Graph) -> bool:
    """Planarity check (Euler bound prefilter, then the exact test)."""
    if g.n >= 3 and g.m > 3 * g.n - 6:
        return False
    ok, _ = nx.check_planarity(_to_nx(g))
    return ok


def has_cut_vertex(g: Graph) -> bool:
    return any(True for _ in nx.articulation_points(_to_nx(g)))


def gen_clique_reduction(g: Graph, k: int) -> Tuple[Graph, int]:
    """Gadget mapping k-clique existence to balanced connected 2-partition.

    The input's vertices become a clique; each non-adjacent input pair
    gets a connector vertex joined to both, carrying k+1 pendants.  The
    output instance asks for a side of size n1 = k.  The equivalence is
    intended for k < n(g): asking for a clique of the full vertex count
    degenerates when exactly one non-edge exists.
    """
    if k < 1:
        raise GraphError("k must be positive")
    n = g.n
    edges = list(combinations(range(n), 2))
    next_id = n
    for i, j in combinations(range(n), 2):
        if g.has_edge(i, j):
            continue
        u = next_id
        next_id += 1
        edges.append((i, u))
        edges.append((j, u))
        for _ in range(k + 1):
            w = next_id
            next_id += 1
            edges.append((u, w))
    if k >= next_id:
        raise GraphError(
            f"degenerate instance: n1 = {k} leaves no vertices for side two"
        )
    return Graph(next_id, sorted(edges)), k


def gen_composition(
    instances: Sequence[Graph],
    k: int,
    chain_vertices: Optional[Sequence[Sequence[int]]] = None,
) -> Graph:
    """Chain k+1 copies of each planar input into one OR-instance.

    Copy l of input i attaches to its neighbors in the chain solely
    through its designated vertex (the l-th of the input's k+1 designated
    vertices, by default its k+1 lowest-degree vertices), which is
    therefore a cut vertex of the output.  The output is a YES instance
    for side size k iff some input is.
    """
    if not instances:
        raise GraphError("need at least one instance")
    if k < 1:
        raise GraphError("k must be positive")
    designated: List[List[int]] = []
    for idx, gi in enumerate(instances):
        if gi.n < k + 1:
            raise GraphError(
                f"instance {idx} has {gi.n} vertices; need at least k+1 = {k + 1}"
            )
        if not is_planar(gi):
            raise GraphError(f"instance {idx} is not planar")
        if chain_vertices is not None:
            chosen = list(chain_vertices[idx])
            if len(chosen) != k + 1 or len(set(chosen)) != k + 1:
                raise GraphError(f"instance {idx}: need k+1 distinct chain vertices")
        else:
            chosen = sorted(range(gi.n), key=lambda v: (gi.degree(v), v))[: k + 1]
        designated.append(chosen)

    edges: List[Tuple[int, int]] = []
    offset = 0
    anchors: List[int] = []  # designated vertex of each copy, in chain order
    for gi, chosen in zip(instances, designated):
        for copy in range(k + 1):
            for u, v in gi.edges:
                edges.append((u + offset, v + offset))
            anchors.append(chosen[copy] + offset)
            offset += gi.n
    for x, y in zip(anchors, anchors[1:]):
        edges.append((x, y) if x < y else (y, x))
    out = Graph(offset, sorted(edges))
    if not is_planar(out):
        raise GraphError("composition output failed the planarity check")
    return out


def _connect(rng: random.Random, n: int, edges: set) -> None:
    """Add random inter-component edges until connected (mutates edges)."""
    while True:
        g = Graph(n, sorted(edges))
        comps = connected_components(g)
        if len(comps) <= 1:
            return
        a = rng.choice(sorted(comps[0]))
        other = rng.choice(range(1, len(comps)))
        b = rng.choice(sorted(comps[other]))
        edges.add((a, b) if a < b else (b, a))


def gen_random(
    kind: str, n: int, seed: int, params: Optional[Dict] = None
):
    """Seeded random instances.

    kinds: general (G(n, p), connected by default), planar (random tree
    plus planarity-preserving chords), two_connected (random Hamiltonian
    cycle plus chords, no cut vertex), udg_points (uniform points in a
    box, 4-decimal coordinates).
    """
    params = dict(params or {})
    rng = random.Random(seed)
    if kind == "general":
        p = params.get("p", 0.35)
        connected = params.get("connected", True)
        edges = {e for e in combinations(range(n), 2) if rng.random() < p}
        if connected and n > 0:
            _connect(rng, n, edges)
        return Graph(n, sorted(edges))
    if kind == "planar":
        edges = set()
        for v in range(1, n):
            u = rng.randrange(v)
            edges.add((u, v))
        extra = params.get("extra_edges", n)
        candidates = [e for e in combinations(range(n), 2) if e not in edges]
        rng.shuffle(candidates)
        added = 0
        for e in candidates:
            if added >= extra:
                break
            trial = Graph(n, sorted(edges | {e}))
            if is_planar(trial):
                edges.add(e)
                added += 1
        g = Graph(n, sorted(edges))
        assert is_planar(g)
        return g
    if kind == "two_connected":
        if n < 3:
            raise GraphError("two_connected needs n >= 3")
        cycle = list(range(n))
        rng.shuffle(cycle)
        edges = set()
        for i in range(n):
            a, b = cycle[i], cycle[(i + 1) % n]
            edges.add((a, b) if a < b else (b, a))
        p = params.get("chord_p", 0.15)
        for e in combinations(range(n), 2):
            if e not in edges and rng.random() < p:
                edges.add(e)
        g = Graph(n, sorted(edges))
        assert not has_cut_vertex(g)
        return g
    if kind == "udg_points":
        box = params.get("box", (3.0, 3.0))
        quant = 10_000  # 4-decimal coordinates keep rational math exact
        w = int(round(float(box[0]) * quant))
        h = int(round(float(box[1]) * quant))
        return [
            (Fraction(rng.randint(0, w), quant), Fraction(rng.randint(0, h), quant))
            for _ in range(n)
        ]
    raise GraphError(f"unknown generator kind {kind!r}")
