"""Dynamic program over nice tree decompositions for balanced connected
2-partition, reused by the planar and unit-disk engines.

A table entry at a tree node records a *structure*: the side assignment of
the bag (which bag vertices sit with a, which with b) together with one
partition per side describing how the partial solution's connected
components meet the bag.  For each structure, the set of reachable a-side
sizes is packed into an integer bitmask (bit i set = a partial solution
with i a-side vertices exists), which keeps the size dimension cheap on
long decompositions.

Witnesses are recovered by walking the accepted root entry back down the
tree, re-deriving one consistent child entry per node; every vertex picks
its side at the introduce node that adds it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .graph import (
    Graph,
    GraphError,
    VertexWitness,
    bfs_distances,
    check_n1_vertex,
    component_precheck,
    verify_bcp2,
)
from .treedecomp import (
    FORGET,
    INTRODUCE_EDGE,
    INTRODUCE_VERTEX,
    JOIN,
    LEAF,
    NiceTreeDecomposition,
    make_nice,
    min_fill_decomposition,
)

Partition = Tuple[Tuple[int, ...], ...]
Structure = Tuple[Partition, Partition]


@dataclass(frozen=True)
class DpSignature:
    """One reachable state: bag sides, their block partitions, a-side count."""

    bag_U: FrozenSet[int]
    bag_W: FrozenSet[int]
    P: Partition
    Q: Partition
    n_u: int


def canonical_partition(blocks) -> Partition:
    """Canonical form: elements sorted inside blocks, blocks sorted by min."""
    return tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))


def merge_partitions(p1, p2) -> Partition:
    """Finest common coarsening: connected components of the union of the
    two partitions' block graphs, via union-find."""
    p1 = canonical_partition(p1)
    p2 = canonical_partition(p2)
    ground1 = {x for blk in p1 for x in blk}
    ground2 = {x for blk in p2 for x in blk}
    if ground1 != ground2:
        raise GraphError("partitions cover different ground sets")
    parent = {x: x for x in ground1}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in (p1, p2):
        for blk in part:
            r = find(blk[0])
            for x in blk[1:]:
                rx = find(x)
                if rx != r:
                    parent[rx] = r
    groups: Dict[int, List[int]] = {}
    for x in ground1:
        groups.setdefault(find(x), []).append(x)
    return canonical_partition(groups.values())


def _merge_into(p: Partition, x: int, y: int) -> Partition:
    """Partition with the blocks of x and y united (identity if shared)."""
    bx = by = None
    for blk in p:
        if x in blk:
            bx = blk
        if y in blk:
            by = blk
    if bx is by:
        return p
    rest = tuple(blk for blk in p if blk is not bx and blk is not by)
    return canonical_partition(rest + (tuple(sorted(bx + by)),))


def _add_singleton(p: Partition, v: int) -> Partition:
    return canonical_partition(p + ((v,),))


def _combine_masks(m1: int, m2: int, shift: int) -> int:
    """All sums i + j - shift over set bits i of m1 and j of m2."""
    acc = 0
    while m1:
        low = m1 & -m1
        acc |= m2 << (low.bit_length() - 1)
        m1 ^= low
    return acc >> shift


class DpTable:
    """Per-node maps from structure to the bitmask of reachable a-side sizes."""

    def __init__(self, ntd: NiceTreeDecomposition):
        self.ntd = ntd
        self.tables: List[Dict[Structure, int]] = [dict() for _ in range(len(ntd))]

    def signatures(self, node: int) -> List[DpSignature]:
        """Expanded view of one node's entries, for inspection and tests."""
        out = []
        for (p, q), mask in self.tables[node].items():
            bag_u = frozenset(x for blk in p for x in blk)
            bag_w = frozenset(x for blk in q for x in blk)
            mm = mask
            while mm:
                low = mm & -mm
                out.append(DpSignature(bag_u, bag_w, p, q, low.bit_length() - 1))
                mm ^= low
        return out

    def total_states(self) -> int:
        return sum(m.bit_count() for t in self.tables for m in t.values())

    def node_state_counts(self) -> List[int]:
        return [sum(m.bit_count() for m in t.values()) for t in self.tables]

    def node_structure_counts(self) -> List[int]:
        return [len(t) for t in self.tables]


def _subtree_sizes(ntd: NiceTreeDecomposition) -> List[int]:
    """|V_t| per node: how many graph vertices appear in the subtree's bags."""
    size = [0] * len(ntd)
    for t in ntd.postorder():
        k = ntd.kind[t]
        if k == LEAF:
            size[t] = 2
        elif k == INTRODUCE_VERTEX:
            size[t] = size[ntd.children[t][0]] + 1
        elif k == JOIN:
            c1, c2 = ntd.children[t]
            size[t] = size[c1] + size[c2] - len(ntd.bags[t])
        else:
            size[t] = size[ntd.children[t][0]]
    return size


def compute_tables(
    ntd: NiceTreeDecomposition,
    g: Graph,
    targets: Sequence[int],
    forbidden_U: FrozenSet[int] = frozenset(),
) -> DpTable:
    """Bottom-up table computation for one (a, b) pair.

    targets are the a-side sizes of interest; sizes outside
    [1, max(targets)] are pruned, as are sizes provably unable to leave
    enough vertices for the b side.
    """
    a, b = ntd.a, ntd.b
    if a in forbidden_U:
        raise GraphError("designated a-side vertex cannot be forbidden")
    cap = max(targets)
    min_t = min(targets)
    sizes = _subtree_sizes(ntd)
    n = g.n
    dp = DpTable(ntd)
    tables = dp.tables
    base: Structure = (((a,),), ((b,),))

    for t in ntd.postorder():
        kind = ntd.kind[t]
        table = tables[t]
        # reachable size window for this node
        low = max(1, sizes[t] - (n - min_t))
        window = ((1 << (cap + 1)) - 1) & ~((1 << low) - 1)
        if kind == LEAF:
            mask = 2 & window  # single seed state: a alone on side one
            if mask:
                table[base] = mask
            continue
        if kind == JOIN:
            c1, c2 = ntd.children[t]
            groups: Dict[FrozenSet[int], List[Tuple[Structure, int]]] = {}
            for st, m in tables[c2].items():
                bag_u = frozenset(x for blk in st[0] for x in blk)
                groups.setdefault(bag_u, []).append((st, m))
            for (p1, q1), m1 in tables[c1].items():
                bag_u = frozenset(x for blk in p1 for x in blk)
                # a-side bag vertices are tallied by both children
                shift = len(bag_u)
                for (p2, q2), m2 in groups.get(bag_u, ()):
                    mask = _combine_masks(m1, m2, shift) & window
                    if not mask:
                        continue
                    key = (merge_partitions(p1, p2), merge_partitions(q1, q2))
                    table[key] = table.get(key, 0) | mask
            continue
        child = ntd.children[t][0]
        if kind == INTRODUCE_VERTEX:
            (v,) = ntd.payload[t]
            allow_u = v not in forbidden_U
            for (p, q), m in tables[child].items():
                if allow_u:
                    mu = (m << 1) & window
                    if mu:
                        key = (_add_singleton(p, v), q)
                        table[key] = table.get(key, 0) | mu
                mw = m & window
                if mw:
                    key = (p, _add_singleton(q, v))
                    table[key] = table.get(key, 0) | mw
        elif kind == INTRODUCE_EDGE:
            u, v = ntd.payload[t]
            for (p, q), m in tables[child].items():
                u_in_p = any(u in blk for blk in p)
                v_in_p = any(v in blk for blk in p)
                if u_in_p and v_in_p:
                    key = (_merge_into(p, u, v), q)
                elif not u_in_p and not v_in_p:
                    key = (p, _merge_into(q, u, v))
                else:
                    key = (p, q)  # edge crosses the cut: structure unchanged
                table[key] = table.get(key, 0) | m
        elif kind == FORGET:
            (w,) = ntd.payload[t]
            for (p, q), m in tables[child].items():
                key = None
                for blk in p:
                    if w in blk:
                        if len(blk) == 1:
                            break  # component would detach from the bag
                        newp = canonical_partition(
                            tuple(bb for bb in p if bb is not blk)
                            + (tuple(x for x in blk if x != w),)
                        )
                        key = (newp, q)
                        break
                else:
                    for blk in q:
                        if w in blk:
                            if len(blk) == 1:
                                break
                            newq = canonical_partition(
                                tuple(bb for bb in q if bb is not blk)
                                + (tuple(x for x in blk if x != w),)
                            )
                            key = (p, newq)
                            break
                if key is not None:
                    table[key] = table.get(key, 0) | m
        else:
            raise GraphError(f"unknown node kind {kind}")
    return dp


def _two_block_splits(blk: Tuple[int, ...], u: int, v: int):
    """All splits of blk into two blocks separating u from v."""
    others = [x for x in blk if x != u and x != v]
    for r in range(len(others) + 1):
        for with_u in combinations(others, r):
            side_u = tuple(sorted((u,) + with_u))
            side_v = tuple(sorted(x for x in blk if x not in side_u))
            yield side_u, side_v


def _extract_witness(
    dp: DpTable, g: Graph, target: int
) -> FrozenSet[int]:
    """Walk one accepted derivation down the tree, assigning sides."""
    ntd = dp.ntd
    a, b = ntd.a, ntd.b
    base: Structure = (((a,),), ((b,),))
    side_one: Set[int] = {a}
    stack: List[Tuple[int, Structure, int]] = [(ntd.root, base, target)]
    while stack:
        t, (p, q), n_u = stack.pop()
        assert dp.tables[t].get((p, q), 0) >> n_u & 1, "untracked state in walk"
        kind = ntd.kind[t]
        if kind == LEAF:
            continue
        if kind == JOIN:
            c1, c2 = ntd.children[t]
            need = n_u + sum(len(blk) for blk in p)
            bag_u = frozenset(x for blk in p for x in blk)
            found = False
            for (p1, q1), m1 in dp.tables[c1].items():
                if frozenset(x for blk in p1 for x in blk) != bag_u:
                    continue
                for (p2, q2), m2 in dp.tables[c2].items():
                    if frozenset(x for blk in p2 for x in blk) != bag_u:
                        continue
                    if merge_partitions(p1, p2) != p or merge_partitions(q1, q2) != q:
                        continue
                    mm = m1
                    while mm:
                        lowbit = mm & -mm
                        i = lowbit.bit_length() - 1
                        j = need - i
                        if j >= 0 and (m2 >> j) & 1:
                            stack.append((c1, (p1, q1), i))
                            stack.append((c2, (p2, q2), j))
                            found = True
                            break
                        mm ^= lowbit
                    if found:
                        break
                if found:
                    break
            assert found, "join state has no generating pair"
            continue
        child = ntd.children[t][0]
        ctable = dp.tables[child]
        if kind == INTRODUCE_VERTEX:
            (v,) = ntd.payload[t]
            if (v,) in p:
                side_one.add(v)
                cp = canonical_partition(tuple(blk for blk in p if blk != (v,)))
                stack.append((child, (cp, q), n_u - 1))
            else:
                cq = canonical_partition(tuple(blk for blk in q if blk != (v,)))
                stack.append((child, (p, cq), n_u))
        elif kind == INTRODUCE_EDGE:
            u, v = ntd.payload[t]
            candidates: List[Structure] = [(p, q)]
            ublk = next((blk for blk in p if u in blk), None)
            if ublk is not None and v in ublk:
                for s1, s2 in _two_block_splits(ublk, u, v):
                    candidates.append(
                        (
                            canonical_partition(
                                tuple(blk for blk in p if blk is not ublk) + (s1, s2)
                            ),
                            q,
                        )
                    )
            else:
                wblk = next((blk for blk in q if u in blk), None)
                if wblk is not None and v in wblk:
                    for s1, s2 in _two_block_splits(wblk, u, v):
                        candidates.append(
                            (
                                p,
                                canonical_partition(
                                    tuple(blk for blk in q if blk is not wblk)
                                    + (s1, s2)
                                ),
                            )
                        )
            for cand in candidates:
                if ctable.get(cand, 0) >> n_u & 1:
                    stack.append((child, cand, n_u))
                    break
            else:
                raise AssertionError("edge state has no generating child")
        elif kind == FORGET:
            (w,) = ntd.payload[t]
            found = False
            for blk in p:
                cand = (
                    canonical_partition(
                        tuple(bb for bb in p if bb is not blk)
                        + (tuple(sorted(blk + (w,))),)
                    ),
                    q,
                )
                if ctable.get(cand, 0) >> n_u & 1:
                    stack.append((child, cand, n_u))
                    found = True
                    break
            if not found:
                for blk in q:
                    cand = (
                        p,
                        canonical_partition(
                            tuple(bb for bb in q if bb is not blk)
                            + (tuple(sorted(blk + (w,))),)
                        ),
                    )
                    if ctable.get(cand, 0) >> n_u & 1:
                        stack.append((child, cand, n_u))
                        found = True
                        break
            assert found, "forget state has no generating child"
    assert len(side_one) == target, "derivation produced wrong side size"
    return frozenset(side_one)


def run_dp(
    ntd: NiceTreeDecomposition,
    g: Graph,
    a: int,
    b: int,
    target_n1: int,
    forbidden_U: FrozenSet[int] = frozenset(),
    stats: Optional[dict] = None,
) -> Optional[VertexWitness]:
    """Find S with a in S, b not in S, |S| = target_n1, both sides connected
    in g, and S disjoint from forbidden_U; None if no such S exists."""
    if a == b:
        raise GraphError("a and b must differ")
    if not 1 <= target_n1 <= g.n - 1:
        raise GraphError(f"target {target_n1} out of range")
    if ntd.a != a or ntd.b != b:
        raise GraphError("decomposition was built for a different (a, b) pair")
    dp = compute_tables(ntd, g, [target_n1], forbidden_U)
    _record_stats(stats, dp)
    base: Structure = (((a,),), ((b,),))
    if dp.tables[ntd.root].get(base, 0) >> target_n1 & 1:
        witness = _extract_witness(dp, g, target_n1)
        assert not witness & forbidden_U
        return witness
    return None


def _record_stats(stats: Optional[dict], dp: DpTable) -> None:
    if stats is None:
        return
    counts = dp.node_state_counts()
    structures = dp.node_structure_counts()
    stats["states"] = stats.get("states", 0) + sum(counts)
    stats["max_node_states"] = max(stats.get("max_node_states", 0), max(counts))
    stats["max_node_structures"] = max(
        stats.get("max_node_structures", 0), max(structures)
    )
    stats["width"] = max(stats.get("width", 0), dp.ntd.width)
    stats["dp_runs"] = stats.get("dp_runs", 0) + 1


def _b_order(g: Graph, a: int, candidates) -> List[int]:
    """Heuristic order for the b sweep: far vertices first (ties by id)."""
    dist = bfs_distances(g, a)
    return sorted(candidates, key=lambda v: (-dist.get(v, g.n + 1), v))


def solve_bcp2_tw(
    g: Graph, n1: int, stats: Optional[dict] = None
) -> Optional[VertexWitness]:
    """Treewidth engine: fix a = vertex 0, sweep b, try both orientations.

    One table computation per b covers both 'a on side one' (size n1) and
    'a on side two' (size n - n1, answer complemented).
    """
    check_n1_vertex(g, n1)
    decided, witness = component_precheck(g, n1)
    if decided == "yes":
        return witness
    if decided == "no":
        return None
    a = 0
    td = min_fill_decomposition(g)
    targets = sorted({n1, g.n - n1})
    for b in _b_order(g, a, range(1, g.n)):
        ntd = make_nice(td, g, a, b)
        dp = compute_tables(ntd, g, targets)
        _record_stats(stats, dp)
        base: Structure = (((a,),), ((b,),))
        mask = dp.tables[ntd.root].get(base, 0)
        for target in (n1, g.n - n1):
            if mask >> target & 1:
                side = _extract_witness(dp, g, target)
                if target != n1:
                    side = frozenset(range(g.n)) - side
                assert verify_bcp2(g, side, n1)
                return side
    return None
