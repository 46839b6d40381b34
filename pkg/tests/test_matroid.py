import itertools
import math
import random

import pytest

from bcpart.graph import Graph, GraphError
from bcpart.matroid import (
    GF2m,
    CographicRep,
    FamilyEntry,
    RepFamily,
    cycle_space_basis,
    is_independent_cographic,
    is_independent_rep,
    minor_vector,
    reduce_to_representative,
    truncate,
    truncation_failure_bound,
)
from corpus import uf_connected


def cycle(n):
    return Graph(n, sorted(tuple(sorted((i, (i + 1) % n))) for i in range(n)))


def complete(n):
    return Graph(n, list(itertools.combinations(range(n), 2)))


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


# polynomial helpers over GF(2), used only to certify the moduli
def _pmod(a, mod):
    dm = mod.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= mod << (a.bit_length() - 1 - dm)
    return a


def _pgcd(a, b):
    while b:
        a, b = b, _pmod(a, b)
    return a


def _x_pow_2e(e, mod):
    r = 2
    for _ in range(e):
        # square r mod `mod`
        sq = 0
        rr = r
        shift = 0
        while rr:
            if rr & 1:
                sq ^= r << shift
            rr >>= 1
            shift += 1
        r = _pmod(sq, mod)
    return r


class TestField:
    @pytest.mark.parametrize("bits", sorted(GF2m.IRREDUCIBLE))
    def test_modulus_is_irreducible(self, bits):
        mod = GF2m.IRREDUCIBLE[bits]
        deg = mod.bit_length() - 1
        assert deg == bits
        assert _x_pow_2e(deg, mod) == 2
        primes = set()
        d = deg
        f = 2
        while f * f <= d:
            if d % f == 0:
                primes.add(f)
                while d % f == 0:
                    d //= f
            f += 1
        if d > 1:
            primes.add(d)
        for qq in primes:
            assert _pgcd(mod, _x_pow_2e(deg // qq, mod) ^ 2) == 1

    def test_distributivity_and_inverses(self):
        rng = random.Random(0)
        for bits in (8, 32):
            field = GF2m(bits)
            for _ in range(100_000 if bits == 32 else 20_000):
                a = rng.randrange(field.order)
                b = rng.randrange(field.order)
                c = rng.randrange(field.order)
                assert field.mul(a ^ b, c) == field.mul(a, c) ^ field.mul(b, c)
            for _ in range(200):
                x = rng.randrange(1, field.order)
                assert field.mul(x, field.inv(x)) == 1

    def test_characteristic_two(self):
        field = GF2m(16)
        assert 5 ^ 5 == 0  # addition is xor

    def test_unsupported_size(self):
        with pytest.raises(GraphError):
            GF2m(7)


class TestCycleSpace:
    def test_tree_empty_basis(self):
        rep = cycle_space_basis(path(5))
        assert rep.rank == 0
        for e in range(4):
            assert not is_independent_rep(rep, [e])

    def test_c4_rank_one(self):
        rep = cycle_space_basis(cycle(4))
        assert rep.rank == 1
        for e in range(4):
            assert is_independent_rep(rep, [e])
        for pair in itertools.combinations(range(4), 2):
            assert not is_independent_rep(rep, pair)

    def test_k4_rank_three(self):
        assert cycle_space_basis(complete(4)).rank == 3

    def test_rank_formula(self):
        rng = random.Random(1)
        for _ in range(40):
            n = rng.randint(2, 9)
            edges = [
                e for e in itertools.combinations(range(n), 2) if rng.random() < 0.4
            ]
            g = Graph(n, edges)
            rep = cycle_space_basis(g)
            comps = 0
            seen = set()
            for s in range(n):
                if s not in seen:
                    comps += 1
                    stack = [s]
                    while stack:
                        u = stack.pop()
                        if u in seen:
                            continue
                        seen.add(u)
                        stack.extend(g.adj[u])
            assert rep.rank == g.m - g.n + comps == rep.m - g.n + rep.components


class TestIndependenceOracle:
    def test_cycle_single_edge(self):
        assert is_independent_cographic(cycle(5), [0])

    def test_cycle_two_edges(self):
        assert not is_independent_cographic(cycle(5), [0, 2])

    def test_k4_star_dependent(self):
        g = complete(4)
        star = [g.edge_id(0, 1), g.edge_id(0, 2), g.edge_id(0, 3)]
        assert not is_independent_cographic(g, star)

    def test_representation_matches_oracle_exhaustive(self):
        # GF(2) column independence <=> deletion keeps components, for all
        # subsets of a spread of graphs with m <= 10
        graphs = [
            path(5),
            cycle(4),
            cycle(6),
            complete(4),
            Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (2, 4)]),
            Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]),
        ]
        rng = random.Random(3)
        for _ in range(10):
            n = rng.randint(4, 6)
            edges = [
                e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5
            ][:10]
            graphs.append(Graph(n, edges))
        for g in graphs:
            rep = cycle_space_basis(g)
            for r in range(0, g.m + 1):
                for combo in itertools.combinations(range(g.m), r):
                    want = is_independent_cographic(g, combo)
                    got = is_independent_rep(rep, combo) if combo else True
                    assert want == got, (g.edges, combo)


class TestTruncation:
    def test_downward_preservation_deterministic(self):
        # a nonzero wedge in the truncation implies base independence, for
        # every seed: dependent base columns stay dependent downstream
        g = complete(5)
        rep = cycle_space_basis(g)
        field = GF2m(32)
        for seed in range(30):
            trep = truncate(rep, 3, seed, field)
            for combo in itertools.combinations(range(g.m), 3):
                vec = minor_vector(trep, combo)
                if vec is not None and any(vec):
                    assert is_independent_cographic(g, combo)

    def test_upward_preservation_sampled(self):
        # independent sets keep nonzero wedges across 100 seeds at 32 bits
        g = complete(5)
        rep = cycle_space_basis(g)
        field = GF2m(32)
        independent_triples = [
            c
            for c in itertools.combinations(range(g.m), 3)
            if is_independent_cographic(g, c)
        ]
        failures = 0
        for seed in range(100):
            trep = truncate(rep, 3, seed, field)
            for combo in independent_triples:
                vec = minor_vector(trep, combo)
                if vec is None or not any(vec):
                    failures += 1
        assert failures == 0

    def test_c6_truncation_vacuous(self):
        # rank-1 matroid: no independent triples exist at all
        g = cycle(6)
        assert all(
            not is_independent_cographic(g, c)
            for c in itertools.combinations(range(g.m), 3)
        )

    def test_identity_embedding_when_k_reaches_rank(self):
        g = cycle(4)
        rep = cycle_space_basis(g)
        trep = truncate(rep, 3, 0, GF2m(32))
        assert trep.identity and trep.rows == rep.rank

    def test_tree_all_zero(self):
        rep = cycle_space_basis(path(4))
        trep = truncate(rep, 2, 0, GF2m(32))
        assert all(all(x == 0 for x in col) for col in trep.cols)

    def test_seed_reproducibility(self):
        rep = cycle_space_basis(complete(5))
        a = truncate(rep, 3, 42, GF2m(32))
        b = truncate(rep, 3, 42, GF2m(32))
        assert a.cols == b.cols

    def test_failure_bound_reported(self):
        assert truncation_failure_bound(6, 3, 32) == 6 * math.comb(6, 3) / 2**32
        assert truncation_failure_bound(12, 6, 2) == 1.0


class TestReduce:
    def test_singleton_family_unchanged(self):
        g = complete(4)
        rep = cycle_space_basis(g)
        trep = truncate(rep, 3, 0, GF2m(32))
        fam = RepFamily(0, 2, [FamilyEntry((0, 1))])
        out = reduce_to_representative(fam, 2, 1, trep)
        assert [e.edges for e in out.entries] == [(0, 1)]
        assert out.entries[0].minor_vector is not None

    def test_size_bound(self):
        g = complete(5)
        rep = cycle_space_basis(g)
        field = GF2m(32)
        trep = truncate(rep, 4, 1, field)
        entries = [
            FamilyEntry(c)
            for c in itertools.combinations(range(g.m), 2)
            if is_independent_cographic(g, c)
        ]
        out = reduce_to_representative(RepFamily(0, 2, entries), 2, 2, trep)
        assert len(out.entries) <= math.comb(4, 2)

    def test_wrong_size_entry(self):
        g = complete(4)
        trep = truncate(cycle_space_basis(g), 3, 0, GF2m(32))
        fam = RepFamily(0, 2, [FamilyEntry((0, 1, 2))])
        with pytest.raises(GraphError, match="size"):
            reduce_to_representative(fam, 2, 1, trep)

    def test_dependent_entry_rejected(self):
        g = cycle(4)  # rank 1: any pair is dependent
        trep = truncate(cycle_space_basis(g), 2, 0, GF2m(32))
        fam = RepFamily(0, 2, [FamilyEntry((0, 1))])
        with pytest.raises(GraphError, match="dependent"):
            reduce_to_representative(fam, 2, 0, trep)

    def test_rank_mismatch_rejected(self):
        g = complete(4)
        trep = truncate(cycle_space_basis(g), 3, 0, GF2m(32))
        with pytest.raises(GraphError, match="truncation rank"):
            reduce_to_representative(RepFamily(0, 2, []), 2, 2, trep)

    def test_representative_property_exhaustive(self):
        # for every fitting q-set B: if a dropped entry fit B, some kept
        # entry fits B too (fit = disjoint and union independent)
        rng = random.Random(9)
        graphs = [complete(4), complete(5), cycle(6)]
        for _ in range(8):
            n = rng.randint(4, 6)
            edges = [
                e for e in itertools.combinations(range(n), 2) if rng.random() < 0.6
            ][:10]
            g = Graph(n, edges)
            if g.m < 3:
                continue
            graphs.append(g)
        for g in graphs:
            rep = cycle_space_basis(g)
            for k in range(2, min(4, rep.rank) + 1):
                for p in range(1, k):
                    q = k - p
                    field = GF2m(32)
                    trep = truncate(rep, k, 5, field)
                    entries = [
                        FamilyEntry(c)
                        for c in itertools.combinations(range(g.m), p)
                        if is_independent_cographic(g, c)
                    ]
                    fam = RepFamily(0, p, entries)
                    kept = reduce_to_representative(fam, p, q, trep)
                    kept_sets = kept.edge_sets()
                    for b_combo in itertools.combinations(range(g.m), q):
                        b = frozenset(b_combo)
                        fits_any_input = any(
                            not (set(e.edges) & b)
                            and is_independent_cographic(g, set(e.edges) | b)
                            for e in entries
                        )
                        if not fits_any_input:
                            continue
                        fits_kept = any(
                            not (ks & b)
                            and is_independent_cographic(g, ks | b)
                            for ks in kept_sets
                        )
                        assert fits_kept, (g.edges, p, q, sorted(b))

    def test_c6_p2_q1_fit_check(self):
        g = cycle(6)
        rep = cycle_space_basis(g)  # rank 1: pairs all dependent
        entries = [
            FamilyEntry(c)
            for c in itertools.combinations(range(g.m), 2)
            if is_independent_cographic(g, c)
        ]
        assert entries == []  # removing two edges of a cycle disconnects it
