import random
from itertools import combinations
from math import inf

import pytest

from cyclemax.graph import (
    BlowupSpec,
    Graph,
    GraphError,
    LabeledGraph,
    degree_stats,
    every_edge_in_4cycle,
    find_homomorphism,
    gamma_blowup,
    girth,
    is_biconnected,
    is_complete_bipartite,
    is_homomorphism,
    is_maximal_triangle_free,
    is_triangle_free,
    labeled,
    make_blowup,
    make_complete,
    make_complete_bipartite,
    make_cycle,
    make_gamma,
    make_path,
    make_petersen,
    make_turan,
)


def random_triangle_free(n, rng, p=0.5):
    adj = [0] * n
    slots = list(combinations(range(n), 2))
    rng.shuffle(slots)
    for u, v in slots:
        if rng.random() < p and not adj[u] & adj[v]:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return Graph(n, tuple(adj))


class TestConstruction:
    def test_complete_bipartite_counts(self):
        g = make_complete_bipartite(2, 3)
        assert (g.n, g.m, girth(g)) == (5, 6, 4)
        assert all(g.has_edge(u, w) for u in range(2) for w in range(2, 5))

    def test_single_edge_has_no_cycle(self):
        g = make_complete_bipartite(1, 1)
        assert g.m == 1
        assert girth(g) == inf

    def test_k55_is_5_regular(self):
        assert degree_stats(make_complete_bipartite(5, 5)) == (5, 5, 25)

    def test_zero_part_rejected(self):
        with pytest.raises(GraphError):
            make_complete_bipartite(0, 3)

    def test_turan_parts(self):
        assert is_complete_bipartite(make_turan(9)) == (4, 5)

    @pytest.mark.parametrize(
        "bad",
        [
            lambda: Graph(2, (0b10, 0b00)),  # asymmetric
            lambda: Graph(2, (0b01, 0b00)),  # loop
            lambda: Graph(2, (0b100, 0)),  # out of range
            lambda: Graph.from_edges(3, [(0, 3)]),
            lambda: Graph.from_edges(3, [(1, 1)]),
        ],
    )
    def test_malformed_graphs(self, bad):
        with pytest.raises(GraphError):
            bad()


class TestGamma:
    def test_gamma1_is_an_edge(self):
        g = make_gamma(1)
        assert (g.n, g.edges()) == (2, [(0, 1)])

    def test_gamma2_labelling(self):
        g = make_gamma(2)
        # v1 ~ v3, v4 with one-indexed labels
        assert sorted(g.label(w) for w in g.neighbours(g.vertex(1))) == [3, 4]
        assert g.edges() == [(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]
        assert girth(g) == 5

    def test_gamma3_is_moebius_ladder(self):
        g = make_gamma(3)
        assert degree_stats(g) == (3, 3, 12)
        assert is_triangle_free(g)
        # rim 0..7 plus the four long diagonals
        rim = {tuple(sorted((v, (v + 1) % 8))) for v in range(8)}
        spokes = {(v, v + 4) for v in range(4)}
        relabel = [0, 3, 6, 1, 4, 7, 2, 5]  # v_j -> position 3j mod 8 on the rim
        h = g.relabel(relabel)
        assert set(h.edges()) == rim | spokes

    @pytest.mark.parametrize("i", range(1, 10))
    def test_regular_triangle_free_circulant(self, i):
        g = make_gamma(i)
        p = 3 * i - 1
        assert degree_stats(g) == (i, i, p * i // 2)
        assert is_triangle_free(g)
        shift = [(v + 1) % p for v in range(p)]
        assert g.relabel(shift) == Graph(g.n, g.adj)

    def test_labels(self):
        g = make_gamma(2)
        assert isinstance(g, LabeledGraph)
        assert g.label(0) == 1
        with pytest.raises(GraphError):
            g.vertex(6)

    def test_nonpositive_index(self):
        with pytest.raises(GraphError):
            make_gamma(0)


class TestBlowup:
    def test_c5_doubled(self):
        g = make_blowup(gamma_blowup(2, 2))
        assert degree_stats(g) == (4, 4, 20)

    def test_identity_blowup(self):
        base = make_gamma(3)
        assert make_blowup(BlowupSpec(base, (1,) * 8)) == Graph(base.n, base.adj)

    def test_nonuniform(self):
        spec = gamma_blowup(2, (1, 3, 2, 2, 3))
        g = make_blowup(spec)
        lo, hi, _ = degree_stats(g)
        assert g.n == 11 and (lo, hi) == (4, 5)

    def test_parts_are_contiguous(self):
        assert gamma_blowup(2, (1, 2, 0, 1, 1)).parts() == [
            range(0, 1), range(1, 3), range(3, 3), range(3, 4), range(4, 5)
        ]

    def test_random_counts(self):
        rng = random.Random(5)
        for _ in range(100):
            p = rng.randint(1, 6)
            edges = [e for e in combinations(range(p), 2) if rng.random() < 0.5]
            base = labeled(Graph.from_edges(p, edges))
            sizes = tuple(rng.randint(0, 4) for _ in range(p))
            spec = BlowupSpec(base, sizes)
            g = make_blowup(spec)
            assert g.n == sum(sizes)
            assert g.m == sum(sizes[i] * sizes[j] for i, j in edges) == spec.m

    def test_wrong_length(self):
        with pytest.raises(GraphError):
            BlowupSpec(make_gamma(2), (1, 2))
        with pytest.raises(GraphError):
            BlowupSpec(make_gamma(2), (1, 1, 1, 1, -1))


class TestPredicates:
    @pytest.mark.parametrize(
        "g, expected",
        [(make_cycle(5), 5), (make_complete_bipartite(2, 3), 4), (make_path(4), inf), (make_complete(3), 3)],
    )
    def test_girth(self, g, expected):
        assert girth(g) == expected

    def test_girth_matches_networkx(self):
        nx = pytest.importorskip("networkx")
        rng = random.Random(11)
        for _ in range(60):
            n = rng.randint(3, 10)
            g = Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < 0.3])
            expected = nx.girth(nx.Graph(g.edges()))
            assert girth(g) == expected

    def test_triangle_free(self):
        assert not is_triangle_free(make_complete(3))
        assert is_triangle_free(make_complete_bipartite(4, 4))
        assert is_triangle_free(make_gamma(3))

    def test_degree_stats(self):
        assert degree_stats(make_complete_bipartite(5, 6)) == (5, 6, 30)
        assert degree_stats(make_gamma(4)) == (4, 4, 22)
        with pytest.raises(GraphError):
            degree_stats(Graph(0, ()))

    def test_biconnected(self):
        assert is_biconnected(make_cycle(5))
        bowtie = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
        assert not is_biconnected(bowtie)
        with pytest.raises(GraphError):
            is_biconnected(make_path(2))

    def test_petersen_minus_vertex(self):
        g = make_petersen().delete_vertex(9)
        assert girth(g) == 5
        assert is_biconnected(g)
        # a pendant vertex makes it separable
        pendant = Graph.from_edges(10, g.edges() + [(0, 9)])
        assert not is_biconnected(pendant)

    def test_petersen_minus_vertex_has_unbridgeable_6cycle(self):
        # removing vertex 9 leaves its three neighbours' outer 6-cycle
        g = make_petersen().delete_vertex(9)
        cycles6 = []
        for combo in combinations(range(9), 6):
            sub = g.induced(list(combo))
            if sub.m >= 6 and all(sub.degree(v) >= 2 for v in range(6)):
                cycles6.append(combo)
        found = False
        for combo in cycles6:
            chords = [(u, v) for u, v in combinations(combo, 2) if not g.has_edge(u, v)]
            if chords and all(not is_triangle_free(g.add_edge(u, v)) for u, v in chords):
                found = True
                break
        assert found

    def test_maximal_triangle_free(self):
        assert is_maximal_triangle_free(make_complete_bipartite(3, 3))
        assert not is_maximal_triangle_free(make_cycle(6))
        assert is_maximal_triangle_free(make_blowup(gamma_blowup(2, (1, 2, 2, 1, 3))))
        with pytest.raises(GraphError):
            is_maximal_triangle_free(make_complete(3))

    def test_every_edge_in_4cycle(self):
        assert every_edge_in_4cycle(make_complete_bipartite(2, 2))
        assert not every_edge_in_4cycle(make_cycle(5))
        assert every_edge_in_4cycle(make_turan(9))

    @pytest.mark.parametrize("n", range(4, 13))
    def test_turan_structure(self, n):
        t = make_turan(n)
        assert is_maximal_triangle_free(t)
        assert every_edge_in_4cycle(t)

    def test_complete_bipartite_recognition(self):
        assert is_complete_bipartite(make_complete_bipartite(3, 2)) == (2, 3)
        assert is_complete_bipartite(make_cycle(5)) is None
        assert is_complete_bipartite(make_cycle(4)) == (2, 2)
        assert is_complete_bipartite(Graph(3, (0, 0, 0))) is None


class TestHomomorphism:
    def test_blowup_projects(self):
        g = make_blowup(gamma_blowup(2, 2))
        h = make_gamma(2)
        f = find_homomorphism(g, h)
        assert f is not None and is_homomorphism(g, h, f)

    def test_odd_cycle_not_bipartite(self):
        assert find_homomorphism(make_cycle(5), make_gamma(1)) is None

    @pytest.mark.parametrize("i", range(2, 7))
    def test_gamma_chain(self, i):
        big, small = make_gamma(i), make_gamma(i - 1)
        f = find_homomorphism(small, big)
        assert f is not None and is_homomorphism(small, big, f)
        for v in range(big.n):
            g = big.delete_vertex(v)
            f = find_homomorphism(g, small)
            assert f is not None and is_homomorphism(g, small, f)

    def test_empty_target(self):
        with pytest.raises(GraphError):
            find_homomorphism(make_cycle(3), Graph(0, ()))

    def test_random_bipartite_into_k2(self):
        rng = random.Random(2)
        for _ in range(30):
            g = random_triangle_free(rng.randint(3, 9), rng)
            f = find_homomorphism(g, make_gamma(1))
            nx = pytest.importorskip("networkx")
            h = nx.Graph()
            h.add_nodes_from(range(g.n))
            h.add_edges_from(g.edges())
            assert (f is not None) == nx.is_bipartite(h)
