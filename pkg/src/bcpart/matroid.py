"""Finite-field linear algebra, the co-graphic matroid representation,
seeded rank truncation, and representative-family reduction.

The co-graphic matroid of a graph has the edge set as its ground set; an
edge set is independent iff deleting it keeps every component of the graph
connected.  Its standard representation is any GF(2) matrix whose row
space is the cycle space, here built from fundamental cycles of a spanning
forest with one row per non-tree edge (rows are stored as integer
bitmasks over edge ids).

Rank truncation multiplies the base matrix by a seeded random matrix over
GF(2^s): independence of small sets is preserved downward always and
upward with failure probability reported per instance.  The reduction
step keeps a maximal subfamily whose minor vectors (all p x p minors of a
set's truncated columns) are linearly independent; minors are computed by
an incremental exterior product so all row subsets share the arithmetic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .graph import Graph, GraphError, connected_components


class GF2m:
    """GF(2^s) on Python ints with a fixed public irreducible modulus."""

    IRREDUCIBLE = {
        2: 0b111,
        4: 0b10011,
        8: 0x11B,
        16: 0x1002B,
        32: 0x10000008D,
        64: 0x1000000000000001B,
    }

    def __init__(self, bits: int = 32):
        if bits not in self.IRREDUCIBLE:
            raise GraphError(
                f"unsupported field size 2^{bits}; choose bits in "
                f"{sorted(self.IRREDUCIBLE)}"
            )
        self.bits = bits
        self.poly = self.IRREDUCIBLE[bits]
        self.order = 1 << bits

    def mul(self, a: int, b: int) -> int:
        poly = self.poly
        top = self.order
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= poly
        return r

    def pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(2^s)")
        return self.pow(a, self.order - 2)


@dataclass(frozen=True)
class CographicRep:
    """Cycle-space basis over GF(2); one bitmask row per non-tree edge."""

    rows: Tuple[int, ...]
    m: int
    components: int

    @property
    def rank(self) -> int:
        return len(self.rows)


def cycle_space_basis(g: Graph) -> CographicRep:
    """Fundamental-cycle rows of a BFS spanning forest, by non-tree edge id."""
    parent = [-1] * g.n
    parent_edge = [-1] * g.n
    depth = [0] * g.n
    seen = [False] * g.n
    comps = 0
    tree_edges = set()
    for start in range(g.n):
        if seen[start]:
            continue
        comps += 1
        seen[start] = True
        queue = [start]
        while queue:
            u = queue.pop(0)
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = u
                    parent_edge[w] = g.edge_id(u, w)
                    depth[w] = depth[u] + 1
                    tree_edges.add(parent_edge[w])
                    queue.append(w)
    rows = []
    for eid, (u, v) in enumerate(g.edges):
        if eid in tree_edges:
            continue
        row = 1 << eid
        x, y = u, v
        while x != y:
            if depth[x] < depth[y]:
                x, y = y, x
            row ^= 1 << parent_edge[x]
            x = parent[x]
        rows.append(row)
    return CographicRep(tuple(rows), g.m, comps)


def _component_count(n: int, edge_pairs) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for u, v in edge_pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return comps


def is_independent_cographic(g: Graph, edge_ids) -> bool:
    """True iff deleting the edges keeps every component of g connected."""
    drop = frozenset(edge_ids)
    for e in drop:
        if not 0 <= e < g.m:
            raise GraphError(f"edge id {e} out of range")
    before = _component_count(g.n, g.edges)
    after = _component_count(
        g.n, (e for i, e in enumerate(g.edges) if i not in drop)
    )
    return after == before


def is_independent_rep(rep: CographicRep, edge_ids) -> bool:
    """GF(2)-linear independence of the base-matrix columns of edge_ids."""
    cols = []
    for e in sorted(edge_ids):
        col = 0
        for j, row in enumerate(rep.rows):
            if row >> e & 1:
                col |= 1 << j
        cols.append(col)
    basis: List[int] = []
    for col in cols:
        for b in basis:
            low = b & -b
            if col & low:
                col ^= b
        if col == 0:
            return False
        basis.append(col)
    return True


@dataclass(frozen=True)
class TruncatedRep:
    """Columns of R * base over GF(2^s) (or the base itself when the
    requested rank reaches the matroid rank, which is exact for free)."""

    field: GF2m
    k: int
    seed: Optional[int]
    cols: Tuple[Tuple[int, ...], ...]
    rows: int
    identity: bool


def truncate(rep: CographicRep, k: int, seed: int, field: Optional[GF2m] = None) -> TruncatedRep:
    """Seeded reproducible rank-k truncation of the co-graphic matroid.

    Downward preservation (independent in the truncation => independent in
    the base) is deterministic for any random matrix; the converse fails
    with probability at most m * C(m, k) / 2^s per instance.
    """
    if field is None:
        field = GF2m()
    if k < 1:
        raise GraphError("truncation rank must be positive")
    r = rep.rank
    if k >= r:
        cols = tuple(
            tuple(row >> e & 1 for row in rep.rows) for e in range(rep.m)
        )
        return TruncatedRep(field, k, seed, cols, r, True)
    rng = random.Random(seed)
    rmat = [[rng.randrange(field.order) for _ in range(r)] for _ in range(k)]
    cols = []
    for e in range(rep.m):
        picked = [j for j, row in enumerate(rep.rows) if row >> e & 1]
        col = []
        for i in range(k):
            acc = 0
            for j in picked:
                acc ^= rmat[i][j]  # base entries are 0/1, so no multiplies
            col.append(acc)
        cols.append(tuple(col))
    return TruncatedRep(field, k, seed, tuple(cols), k, False)


def truncation_failure_bound(m: int, k: int, bits: int) -> float:
    """Reported Monte Carlo failure bound for one truncated instance."""
    return min(1.0, m * math.comb(m, max(0, k)) / float(2**bits))


@dataclass(frozen=True)
class FamilyEntry:
    edges: Tuple[int, ...]
    minor_vector: Optional[Tuple[int, ...]] = None


@dataclass
class RepFamily:
    """Anchored family of same-size edge sets with their minor vectors."""

    anchor: int
    size: int
    entries: List[FamilyEntry]

    def edge_sets(self) -> List[FrozenSet[int]]:
        return [frozenset(e.edges) for e in self.entries]


def minor_vector(trep: TruncatedRep, edges: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """All p x p minors of the truncated columns of the set.

    Coordinates follow lexicographic row-subset order.  Computed by
    wedging the columns one at a time, so every row subset reuses the
    smaller minors (no per-subset elimination, no divisions; signs vanish
    in characteristic 2).  Returns None when every minor is zero.
    """
    p = len(edges)
    rows = trep.rows
    if p > rows:
        return None
    mul = trep.field.mul
    wedge: Dict[int, int] = {0: 1}
    for e in sorted(edges):
        col = trep.cols[e]
        nxt: Dict[int, int] = {}
        for subset, val in wedge.items():
            for i in range(rows):
                bit = 1 << i
                if subset & bit:
                    continue
                c = col[i]
                if not c or not val:
                    continue
                key = subset | bit
                term = mul(val, c) if (val != 1) else c
                if key in nxt:
                    nxt[key] ^= term
                else:
                    nxt[key] = term
        wedge = {s: v for s, v in nxt.items() if v}
        if not wedge:
            return None
    out = []
    for combo in combinations(range(rows), p):
        mask = 0
        for i in combo:
            mask |= 1 << i
        out.append(wedge.get(mask, 0))
    return tuple(out)


def reduce_to_representative(
    fam: RepFamily, p: int, q: int, trep: TruncatedRep
) -> RepFamily:
    """Keep a maximal linearly-independent subfamily of minor vectors.

    Earlier entries win ties; the output size is at most C(p+q, p).  The
    retained family q-represents the input with respect to the truncated
    matroid: any q-set fitting a dropped entry fits a kept one.
    """
    if p + q != trep.k:
        raise GraphError(f"p + q = {p + q} must equal the truncation rank {trep.k}")
    if p > trep.rows:
        if fam.entries:
            raise GraphError("dependent entry: family size exceeds matroid rank")
        return RepFamily(fam.anchor, p, [])
    field = trep.field
    dim = math.comb(trep.rows, p)
    basis: List[Tuple[int, int, List[int]]] = []  # (pivot index, pivot value, vector)
    kept: List[FamilyEntry] = []
    mul = field.mul
    for entry in fam.entries:
        if len(entry.edges) != p:
            raise GraphError(
                f"entry {entry.edges} has size {len(entry.edges)}, expected {p}"
            )
        if len(basis) == dim:
            continue  # span saturated: everything else is dependent on it
        vec = entry.minor_vector
        if vec is None:
            vec = minor_vector(trep, entry.edges)
        if vec is None:
            raise GraphError(f"dependent entry {entry.edges} in family")
        # scale-free elimination: v <- pv*v + f*b multiplies the candidate
        # by a nonzero scalar, which cannot change (in)dependence
        v = list(vec)
        for pivot, pv, bvec in basis:
            f = v[pivot]
            if not f:
                continue
            if pv == 1:
                if f == 1:
                    v = [x ^ y for x, y in zip(v, bvec)]
                else:
                    v = [x ^ mul(f, y) if y else x for x, y in zip(v, bvec)]
            else:
                v = [
                    (mul(pv, x) if x else 0) ^ (mul(f, y) if y else 0)
                    for x, y in zip(v, bvec)
                ]
        if not any(v):
            continue
        pivot = next(i for i, x in enumerate(v) if x)
        basis.append((pivot, v[pivot], v))
        kept.append(FamilyEntry(entry.edges, vec))
    assert len(kept) <= math.comb(p + q, p)
    return RepFamily(fam.anchor, p, kept)
