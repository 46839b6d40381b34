import itertools
import math
import random

import pytest

from bcpart.dp import (
    DpSignature,
    canonical_partition,
    compute_tables,
    merge_partitions,
    run_dp,
    solve_bcp2_tw,
)
from bcpart.graph import Graph, GraphError, verify_bcp2
from bcpart.oracle import solve_bcp2_oracle
from bcpart.treedecomp import JOIN, TreeDecomposition, make_nice, min_fill_decomposition
from corpus import atlas_connected, brute_bcp2, random_connected_graph


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph(n, sorted(tuple(sorted((i, (i + 1) % n))) for i in range(n)))


class TestMergePartitions:
    def test_identity(self):
        assert merge_partitions([[1], [2]], [[1], [2]]) == ((1,), (2,))

    def test_transitive_closure(self):
        got = merge_partitions([[1, 2], [3]], [[2, 3], [1]])
        assert got == ((1, 2, 3),)

    def test_fine_partition_neutral(self):
        got = merge_partitions([[1, 2], [3, 4]], [[1], [2], [3], [4]])
        assert got == ((1, 2), (3, 4))

    def test_ground_set_mismatch(self):
        with pytest.raises(GraphError):
            merge_partitions([[1]], [[2]])

    def test_commutative_and_canonical(self):
        rng = random.Random(0)
        for _ in range(100):
            ground = list(range(rng.randint(1, 7)))
            def rand_partition():
                blocks = []
                for x in ground:
                    if blocks and rng.random() < 0.6:
                        rng.choice(blocks).append(x)
                    else:
                        blocks.append([x])
                return blocks
            p1, p2 = rand_partition(), rand_partition()
            a = merge_partitions(p1, p2)
            b = merge_partitions(p2, p1)
            assert a == b == canonical_partition(a)


class TestRunDp:
    def test_p4_witness(self):
        g = path(4)  # 0-1-2-3, a=0, b=3
        ntd = make_nice(min_fill_decomposition(g), g, 0, 3)
        w = run_dp(ntd, g, 0, 3, 2)
        assert w == {0, 1}

    def test_star_no_for_any_pair(self):
        g = Graph(4, [(0, 1), (0, 2), (0, 3)])
        td = min_fill_decomposition(g)
        for a in range(4):
            for b in range(4):
                if a == b:
                    continue
                ntd = make_nice(td, g, a, b)
                assert run_dp(ntd, g, a, b, 2) is None

    def test_c4_witness(self):
        g = cycle(4)
        ntd = make_nice(min_fill_decomposition(g), g, 0, 2)
        w = run_dp(ntd, g, 0, 2, 2)
        assert w in ({0, 1}, {0, 3})
        assert verify_bcp2(g, w, 2)

    def test_forbidden_vertices_never_in_witness(self):
        rng = random.Random(5)
        for _ in range(40):
            g = random_connected_graph(rng.randint(4, 8), seed=rng.randint(0, 999))
            a, b = 0, g.n - 1
            forb = frozenset(
                v for v in range(1, g.n - 1) if rng.random() < 0.3
            )
            ntd = make_nice(min_fill_decomposition(g), g, a, b)
            for target in range(1, g.n):
                w = run_dp(ntd, g, a, b, target, forbidden_U=forb)
                if w is not None:
                    assert not (w & forb)
                    assert a in w and b not in w and len(w) == target
                    assert verify_bcp2(g, w, target)

    def test_forbidden_matches_filtered_brute_force(self):
        rng = random.Random(6)
        for _ in range(30):
            g = random_connected_graph(rng.randint(4, 7), seed=rng.randint(0, 999))
            a, b = 0, g.n - 1
            forb = frozenset({1}) if g.n > 2 else frozenset()
            ntd = make_nice(min_fill_decomposition(g), g, a, b)
            for target in range(1, g.n):
                w = run_dp(ntd, g, a, b, target, forbidden_U=forb)
                want = any(
                    a in side and b not in side and not (side & forb)
                    for side in _all_witnesses(g, target)
                )
                assert (w is not None) == want

    def test_signature_view(self):
        g = path(3)
        ntd = make_nice(min_fill_decomposition(g), g, 0, 2)
        dp = compute_tables(ntd, g, [1])
        sigs = dp.signatures(ntd.root)
        assert all(isinstance(s, DpSignature) for s in sigs)
        assert all(0 in s.bag_U and 2 in s.bag_W for s in sigs)


def _all_witnesses(g, n1):
    out = []
    for combo in itertools.combinations(range(g.n), n1):
        side = frozenset(combo)
        if verify_bcp2(g, side, n1):
            out.append(side)
    return out


class TestSolveBcp2Tw:
    def test_p4(self):
        assert solve_bcp2_tw(path(4), 2) is not None

    def test_star_no(self):
        assert solve_bcp2_tw(Graph(4, [(0, 1), (0, 2), (0, 3)]), 2) is None

    def test_c6(self):
        w = solve_bcp2_tw(cycle(6), 2)
        assert w is not None and verify_bcp2(cycle(6), w, 2)

    def test_disconnected_component_rule(self):
        g = Graph(5, [(0, 1), (2, 3), (3, 4)])
        assert solve_bcp2_tw(g, 2) == {0, 1}
        assert solve_bcp2_tw(g, 3) == {2, 3, 4}
        assert solve_bcp2_tw(g, 1) is None

    def test_oracle_equivalence_atlas_n6(self):
        for g in atlas_connected(max_n=6):
            for n1 in range(1, g.n):
                want = solve_bcp2_oracle(g, n1)
                got = solve_bcp2_tw(g, n1)
                assert (want is None) == (got is None), (g.edges, n1)
                if got is not None:
                    assert verify_bcp2(g, got, n1)

    def test_signature_count_bound(self):
        import math as _m

        def bell(k):
            b = [1]
            for _ in range(k):
                nb = [b[-1]]
                for x in b:
                    nb.append(nb[-1] + x)
                b = nb
            return b[0]

        rng = random.Random(7)
        for _ in range(15):
            g = random_connected_graph(rng.randint(4, 8), seed=rng.randint(0, 999))
            n1 = rng.randint(1, g.n - 1)
            ntd = make_nice(min_fill_decomposition(g), g, 0, g.n - 1)
            dp = compute_tables(ntd, g, sorted({n1, g.n - n1}))
            counts = dp.node_state_counts()
            for t, cnt in enumerate(counts):
                k = len(ntd.bags[t])
                bound = (2 ** k) * bell(k) ** 2 * max(n1, g.n - n1)
                assert cnt <= bound

    def test_join_count_arithmetic(self):
        # decomposition with a join whose bag is exactly {a, b}: child
        # tallies overlap only in a, so sizes satisfy n1 + n2 = n_u + 1
        g = cycle(4)  # a=0, b=2, two disjoint a-b paths
        td = TreeDecomposition(
            [frozenset({0, 2}), frozenset({0, 1, 2}), frozenset({0, 2, 3})],
            [-1, 0, 0],
        )
        assert td.validate(g) == []
        ntd = make_nice(td, g, 0, 2)
        joins = [t for t in range(len(ntd)) if ntd.kind[t] == JOIN]
        assert joins, "construction should produce a join node"
        dp = compute_tables(ntd, g, [2])
        t = joins[0]
        assert ntd.bags[t] == {0, 2}
        c1, c2 = ntd.children[t]
        for (p, q), mask in dp.tables[t].items():
            for n_u in range(mask.bit_length()):
                if not mask >> n_u & 1:
                    continue
                ok = False
                for (p1, q1), m1 in dp.tables[c1].items():
                    for (p2, q2), m2 in dp.tables[c2].items():
                        for i in range(m1.bit_length()):
                            if m1 >> i & 1:
                                j = n_u + 1 - i  # |bag_U| = |{a}| = 1
                                if j >= 0 and m2 >> j & 1:
                                    ok = True
                assert ok

    def test_range_validation(self):
        with pytest.raises(GraphError):
            solve_bcp2_tw(path(3), 0)


class TestOracleEquivalenceRandom:
    def test_random_small(self):
        rng = random.Random(11)
        for _ in range(60):
            n = rng.randint(2, 8)
            edges = [
                e for e in itertools.combinations(range(n), 2) if rng.random() < 0.4
            ]
            g = Graph(n, edges)
            for n1 in range(1, n):
                want = brute_bcp2(g, n1)
                got = solve_bcp2_tw(g, n1)
                assert (want is None) == (got is None)
                if got is not None:
                    assert verify_bcp2(g, got, n1)
