"""Tree decompositions: min-fill construction, nicification, validation.

The dynamic program consumes *nice* decompositions whose node types are
leaf / introduce_vertex / introduce_edge / forget / join.  Two designated
vertices a and b are added to every bag, so root and leaf bags equal
{a, b}; every edge of the graph is introduced exactly once, at a node
whose bag contains both endpoints.

Construction is heuristic (min-fill elimination ordering): the dynamic
program is correct for any valid decomposition, only runtime degrades
with width, which is reported in stats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .graph import Graph, GraphError

LEAF = "leaf"
INTRODUCE_VERTEX = "introduce_vertex"
INTRODUCE_EDGE = "introduce_edge"
FORGET = "forget"
JOIN = "join"


@dataclass
class TreeDecomposition:
    """Rooted tree of bags; parent[i] == -1 marks the root."""

    bags: List[FrozenSet[int]]
    parent: List[int]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=1) - 1

    def children(self) -> List[List[int]]:
        ch: List[List[int]] = [[] for _ in self.bags]
        for i, p in enumerate(self.parent):
            if p >= 0:
                ch[p].append(i)
        return ch

    def validate(self, g: Graph) -> List[str]:
        """Check the three tree-decomposition conditions; [] iff valid."""
        issues: List[str] = []
        covered: Set[int] = set()
        for b in self.bags:
            covered |= b
        missing = set(range(g.n)) - covered
        if missing:
            issues.append(f"vertices not covered by any bag: {sorted(missing)}")
        for u, v in g.edges:
            if not any(u in b and v in b for b in self.bags):
                issues.append(f"edge ({u}, {v}) not covered by any bag")
        ch = self.children()
        for v in covered:
            nodes = {i for i, b in enumerate(self.bags) if v in b}
            # occupancy of v must induce a connected subtree
            start = min(nodes)
            seen = {start}
            stack = [start]
            while stack:
                t = stack.pop()
                for nb in ch[t] + ([self.parent[t]] if self.parent[t] >= 0 else []):
                    if nb in nodes and nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
            if seen != nodes:
                issues.append(f"occupancy of vertex {v} is not a connected subtree")
        roots = [i for i, p in enumerate(self.parent) if p == -1]
        if len(roots) != 1:
            issues.append(f"expected exactly one root, found {len(roots)}")
        return issues


def min_fill_decomposition(g: Graph) -> TreeDecomposition:
    """Tree decomposition from a min-fill elimination ordering.

    Ties break toward the smallest vertex id for determinism.
    """
    if g.n == 0:
        return TreeDecomposition([frozenset()], [-1])
    work: Dict[int, Set[int]] = {v: set(g.adj[v]) for v in range(g.n)}
    order: List[int] = []
    bags: List[FrozenSet[int]] = []
    while work:
        best_v, best_cost = -1, None
        for v in sorted(work):
            nbrs = work[v]
            cost = 0
            nl = sorted(nbrs)
            for i in range(len(nl)):
                for j in range(i + 1, len(nl)):
                    if nl[j] not in work[nl[i]]:
                        cost += 1
            if best_cost is None or cost < best_cost:
                best_v, best_cost = v, cost
        nbrs = work[best_v]
        bags.append(frozenset(nbrs | {best_v}))
        order.append(best_v)
        for x in nbrs:
            for y in nbrs:
                if x != y:
                    work[x].add(y)
        for x in nbrs:
            work[x].discard(best_v)
        del work[best_v]

    position = {v: i for i, v in enumerate(order)}
    parent = [-1] * len(bags)
    for i, bag in enumerate(bags):
        later = [position[u] for u in bag if u != order[i]]
        if later:
            parent[i] = min(later)
        elif i + 1 < len(bags):
            parent[i] = i + 1
    return TreeDecomposition(bags, parent)


@dataclass
class NiceTreeDecomposition:
    """Typed rooted decomposition ready for the dynamic program."""

    kind: List[str]
    bags: List[FrozenSet[int]]
    children: List[List[int]]
    parent: List[int]
    payload: List[Optional[Tuple[int, ...]]]
    root: int
    a: int
    b: int

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1

    def __len__(self) -> int:
        return len(self.kind)

    def postorder(self) -> List[int]:
        """Children-before-parent order, iterative (trees can be deep)."""
        out: List[int] = []
        stack = [self.root]
        while stack:
            t = stack.pop()
            out.append(t)
            stack.extend(self.children[t])
        out.reverse()
        return out


class _NiceBuilder:
    def __init__(self, a: int, b: int):
        self.a, self.b = a, b
        self.kind: List[str] = []
        self.bags: List[FrozenSet[int]] = []
        self.children: List[List[int]] = []
        self.payload: List[Optional[Tuple[int, ...]]] = []

    def node(self, kind, bag, children, payload=None) -> int:
        self.kind.append(kind)
        self.bags.append(frozenset(bag))
        self.children.append(list(children))
        self.payload.append(payload)
        return len(self.kind) - 1

    def chain_to(self, top: int, frombag: FrozenSet[int], tobag: FrozenSet[int]) -> int:
        """Unary chain transforming frombag into tobag (forgets then introduces)."""
        cur, bag = top, frombag
        for w in sorted(frombag - tobag):
            bag = bag - {w}
            cur = self.node(FORGET, bag, [cur], (w,))
        for v in sorted(tobag - frombag):
            bag = bag | {v}
            cur = self.node(INTRODUCE_VERTEX, bag, [cur], (v,))
        return cur


def make_nice(
    td: TreeDecomposition, g: Graph, a: int, b: int
) -> NiceTreeDecomposition:
    """Convert a tree decomposition into a nice one over bags + {a, b}.

    Root and leaf bags equal {a, b}; every edge of g is introduced exactly
    once, directly below the forget node of its first-forgotten endpoint
    (edges touching only a and b go above the root, which never forgets
    them).  Width grows by at most 2.
    """
    if a == b:
        raise GraphError("designated vertices a and b must differ")
    extra = frozenset({a, b})
    aug = [bag | extra for bag in td.bags]
    td_children = td.children()
    td_root = td.parent.index(-1)

    bld = _NiceBuilder(a, b)
    built: Dict[int, int] = {}
    # iterative postorder over the input decomposition
    order: List[int] = []
    stack = [td_root]
    while stack:
        t = stack.pop()
        order.append(t)
        stack.extend(td_children[t])
    order.reverse()

    for t in order:
        arms: List[int] = []
        for c in td_children[t]:
            arms.append(bld.chain_to(built[c], aug[c], aug[t]))
        if not arms:
            top = bld.node(LEAF, extra, [])
            top = bld.chain_to(top, extra, aug[t])
        else:
            top = arms[0]
            for arm in arms[1:]:
                top = bld.node(JOIN, aug[t], [top, arm])
        built[t] = top
    root = bld.chain_to(built[td_root], aug[td_root], extra)

    # locate the unique forget node of every non-designated vertex
    forget_of: Dict[int, int] = {}
    for i, k in enumerate(bld.kind):
        if k == FORGET:
            (w,) = bld.payload[i]
            if w in forget_of:
                raise GraphError(
                    f"vertex {w} forgotten twice; input decomposition invalid"
                )
            forget_of[w] = i

    depth: Dict[int, int] = {root: 0}
    stack = [root]
    while stack:
        t = stack.pop()
        for c in bld.children[t]:
            depth[c] = depth[t] + 1
            stack.append(c)

    # edges grouped by insertion slot: below a forget node, or above root
    below: Dict[int, List[Tuple[int, int]]] = {}
    above_root: List[Tuple[int, int]] = []
    for u, v in g.edges:
        cands = [forget_of[x] for x in (u, v) if x not in extra]
        if not cands:
            above_root.append((u, v))
            continue
        cands.sort(key=lambda f: -depth[f])
        slot = None
        for f in cands:
            child = bld.children[f][0]
            if u in bld.bags[child] and v in bld.bags[child]:
                slot = f
                break
        if slot is None:
            raise GraphError(f"no insertion point for edge ({u}, {v})")
        below.setdefault(slot, []).append((u, v))

    for f, pairs in sorted(below.items()):
        child = bld.children[f][0]
        cur = child
        for u, v in sorted(pairs):
            cur = bld.node(INTRODUCE_EDGE, bld.bags[child], [cur], (u, v))
        bld.children[f][0] = cur
    for u, v in sorted(above_root):
        root = bld.node(INTRODUCE_EDGE, extra, [root], (u, v))

    parent = [-1] * len(bld.kind)
    for i, ch in enumerate(bld.children):
        for c in ch:
            parent[c] = i
    return NiceTreeDecomposition(
        bld.kind, bld.bags, bld.children, parent, bld.payload, root, a, b
    )


def validate_nice(ntd: NiceTreeDecomposition, g: Graph) -> List[str]:
    """All nice-decomposition invariants; returns [] iff everything holds."""
    issues: List[str] = []
    extra = frozenset({ntd.a, ntd.b})
    if ntd.bags[ntd.root] != extra:
        issues.append(f"root bag {sorted(ntd.bags[ntd.root])} != designated pair")
    for i, bag in enumerate(ntd.bags):
        if not extra <= bag:
            issues.append(f"node {i}: bag missing a designated vertex")
    introduced: Dict[Tuple[int, int], int] = {}
    for i, k in enumerate(ntd.kind):
        ch = ntd.children[i]
        bag = ntd.bags[i]
        if k == LEAF:
            if ch:
                issues.append(f"node {i}: leaf with children")
            if bag != extra:
                issues.append(f"node {i}: leaf bag != designated pair")
        elif k == INTRODUCE_VERTEX:
            (v,) = ntd.payload[i]
            if len(ch) != 1 or ntd.bags[ch[0]] != bag - {v} or v in ntd.bags[ch[0]]:
                issues.append(f"node {i}: bad introduce_vertex({v}) bag relation")
        elif k == FORGET:
            (w,) = ntd.payload[i]
            if len(ch) != 1 or ntd.bags[ch[0]] != bag | {w} or w in bag:
                issues.append(f"node {i}: bad forget({w}) bag relation")
        elif k == INTRODUCE_EDGE:
            u, v = ntd.payload[i]
            if len(ch) != 1 or ntd.bags[ch[0]] != bag:
                issues.append(f"node {i}: introduce_edge must preserve the bag")
            if u not in bag or v not in bag:
                issues.append(f"node {i}: introduced edge ({u}, {v}) not inside bag")
            if not g.has_edge(u, v):
                issues.append(f"node {i}: ({u}, {v}) is not an edge of the graph")
            else:
                key = (u, v) if u < v else (v, u)
                introduced[key] = introduced.get(key, 0) + 1
        elif k == JOIN:
            if len(ch) != 2 or any(ntd.bags[c] != bag for c in ch):
                issues.append(f"node {i}: join children bags must equal its bag")
        else:
            issues.append(f"node {i}: unknown kind {k}")
    for u, v in g.edges:
        cnt = introduced.get((u, v), 0)
        if cnt != 1:
            issues.append(f"edge ({u}, {v}) introduced {cnt} times (want once)")
    covered = set()
    for bag in ntd.bags:
        covered |= bag
    missing = set(range(g.n)) - covered
    if missing:
        issues.append(f"vertices never in any bag: {sorted(missing)}")
    # occupancy connectivity on the nice tree
    for v in sorted(covered):
        nodes = {i for i, bag in enumerate(ntd.bags) if v in bag}
        start = min(nodes)
        seen = {start}
        stack = [start]
        while stack:
            t = stack.pop()
            nbrs = list(ntd.children[t])
            if ntd.parent[t] >= 0:
                nbrs.append(ntd.parent[t])
            for nb in nbrs:
                if nb in nodes and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if seen != nodes:
            issues.append(f"occupancy of vertex {v} is not connected in the nice tree")
    return issues


def dump_nice(ntd: NiceTreeDecomposition) -> str:
    """Indented text rendering, for the CLI debug flag."""
    lines: List[str] = []
    stack = [(ntd.root, 0)]
    while stack:
        t, indent = stack.pop()
        label = ntd.kind[t]
        if ntd.payload[t]:
            label += str(ntd.payload[t])
        lines.append("  " * indent + f"{label} bag={sorted(ntd.bags[t])}")
        for c in reversed(ntd.children[t]):
            stack.append((c, indent + 1))
    return "\n".join(lines) + "\n"
