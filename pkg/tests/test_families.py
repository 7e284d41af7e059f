from __future__ import annotations

import networkx as nx
import pytest

from conftest import to_nx
from squarewatch.errors import GraphInputError
from squarewatch.families import (
    FamilyKind,
    PartialGraph,
    clique_cap,
    make_atail_graph,
    make_btail_graph,
    make_clique_minus_matching,
    make_collision_gadget,
    make_multitail_graph,
    make_peanut,
    make_snake,
    make_tail_fragment,
    mirror_close,
    random_corpus,
    random_regular,
)
from squarewatch.graph import dist2_profile, graph_power


def snake_sum_measured(d: int, k: int) -> int:
    # measured on the constructions (and an independent networkx build); the
    # interior-segment correction 2(k-2) is why this differs from the k=2 form
    return (4 * k - 2) * (d - 1) + 8 + 2 * (k - 2)


class TestCliqueMinusMatching:
    def test_complete(self):
        g = make_clique_minus_matching(4, 0)
        assert g.num_edges == 6

    def test_degrees(self):
        g = make_clique_minus_matching(8, 2)
        assert sorted(g.degree(v) for v in range(8)) == [6] * 4 + [7] * 4

    def test_b_region_interior(self):
        d = 7
        g = make_clique_minus_matching(d + 1, (d - 1) // 2)
        comp = nx.complement(to_nx(g))
        assert comp.number_of_edges() == 3
        assert max(dict(comp.degree()).values()) == 1

    def test_too_big_matching(self):
        with pytest.raises(GraphInputError):
            make_clique_minus_matching(3, 2)


class TestTailFragment:
    @pytest.mark.parametrize("d,k,n", [(7, 1, 9), (7, 2, 17), (9, 1, 11), (9, 3, 11 + 20)])
    def test_sizes(self, d, k, n):
        p = make_tail_fragment(d, k)
        assert p.n == n
        assert p.deficient() == {p.roles["w_T"]: 1}

    def test_even_degree(self):
        with pytest.raises(GraphInputError, match="odd"):
            make_tail_fragment(8, 1)

    @pytest.mark.parametrize("d,k,n", [(7, 1, 18), (9, 2, 42)])
    def test_mirror_close_is_snake(self, d, k, n):
        g = mirror_close(make_tail_fragment(d, k))
        snake, _ = make_snake(d, k, k)
        assert g.n == n == snake.n
        assert nx.is_isomorphic(to_nx(g), to_nx(snake))

    def test_mirror_close_rejects_deficiency_two(self):
        p = make_tail_fragment(7, 1)
        p.add_vertices(1)
        p.add_edge(p.n - 1, 0)
        with pytest.raises(GraphInputError):
            mirror_close(p)


class TestSnake:
    @pytest.mark.parametrize("d,ka,kb", [(7, 1, 1), (9, 1, 2), (11, 2, 2)])
    def test_vertex_count(self, d, ka, kb):
        g, meta = make_snake(d, ka, kb)
        assert g.n == (ka + kb) * (d + 1) + 2
        assert g.regular_degree() == d
        assert meta.kind is FamilyKind.SNAKE

    def test_two_segment_sum(self):
        g, _ = make_snake(7, 1, 1)
        assert dist2_profile(g).total_deg2 == 44 == (4 * 2 - 2) * 6 + 8

    @pytest.mark.parametrize("d,ka,kb,total", [(9, 1, 2, 90), (11, 2, 2, 152)])
    def test_longer_sum_measured(self, d, ka, kb, total):
        g, _ = make_snake(d, ka, kb)
        assert dist2_profile(g).total_deg2 == total == snake_sum_measured(d, ka + kb)
        # networkx as an independent route
        h = to_nx(g)
        assert sum(
            sum(1 for x in nx.single_source_shortest_path_length(h, v, cutoff=2).values() if x == 2)
            for v in h
        ) == total

    @pytest.mark.parametrize("args", [(8, 1, 1), (5, 1, 1), (7, 0, 1)])
    def test_bad_params(self, args):
        with pytest.raises(GraphInputError):
            make_snake(*args)


class TestPeanut:
    @pytest.mark.parametrize("d", [8, 10, 12])
    def test_formulas(self, d):
        g, meta = make_peanut(d)
        assert g.n == 2 * d + 3
        assert dist2_profile(g).total_deg2 == 7 * d - 4
        assert g.regular_degree() == d
        assert len(meta.labeled["R2"]) == d + 2

    def test_square_edges(self):
        g, _ = make_peanut(8)
        assert graph_power(g, 2).num_edges - g.num_edges == 26

    @pytest.mark.parametrize("d", [7, 6, 9])
    def test_bad_degree(self, d):
        with pytest.raises(GraphInputError):
            make_peanut(d)


class TestCliqueCap:
    @pytest.mark.parametrize("d,r", [(7, 4), (9, 2)])
    def test_sizes(self, d, r):
        p = PartialGraph(d)
        a, *helpers = p.add_vertices(1 + d - r)
        for h in helpers:
            p.add_edge(a, h)
        q = clique_cap(p, a, r)
        assert q.n - p.n == d + 1
        assert len(q.adj[a] & set(range(p.n, q.n))) == r
        assert q.deficiency(a) == 0
        assert all(q.deficiency(v) == 0 for v in range(p.n, q.n))

    def test_odd_size(self):
        p = make_tail_fragment(7, 1)
        with pytest.raises(GraphInputError):
            clique_cap(p, p.roles["w_T"], 3)

    def test_wrong_deficiency(self):
        p = PartialGraph(7)
        (a,) = p.add_vertices(1)
        with pytest.raises(GraphInputError, match="deficiency"):
            clique_cap(p, a, 4)


class TestTailClosures:
    def test_atail_sizes(self):
        g, meta = make_atail_graph(7, 1, 0)
        assert g.n == 26
        p = dist2_profile(g)
        w_t = meta.labeled["connectors"][-1]
        for x in meta.labeled["X"]:
            assert set(p.n2[x]) == {w_t, meta.labeled["z"]}

    def test_atail_cap_size(self):
        g, meta = make_atail_graph(7, 1, 2)
        z = meta.labeled["z"]
        cap = meta.labeled["caps"][0]
        assert len(g.neighbors(z) & set(cap)) == 2

    @pytest.mark.parametrize("xp", [4, 1, -2])
    def test_atail_rejects(self, xp):
        with pytest.raises(GraphInputError):
            make_atail_graph(7, 1, xp)

    def test_btail_sizes(self):
        g, meta = make_btail_graph(7, 1, 2)
        assert g.n == 26
        z = meta.labeled["z"]
        inside = set(meta.labeled["X_prime"]) | {meta.labeled["w"]}
        assert len(g.neighbors(z) - inside) == 4

    @pytest.mark.parametrize("xp", [0, 3, 6])
    def test_btail_rejects(self, xp):
        with pytest.raises(GraphInputError):
            make_btail_graph(7, 1, xp)

    def test_multitail_size(self):
        g, meta = make_multitail_graph(7, [1, 1, 1])
        assert g.n == 36
        assert g.regular_degree() == 7

    @pytest.mark.parametrize("d,counts", [(7, [1, 1]), (9, [1, 2])])
    def test_multitail_parity(self, d, counts):
        with pytest.raises(GraphInputError, match="odd"):
            make_multitail_graph(d, counts)

    @pytest.mark.parametrize("maker,args", [
        (make_atail_graph, (9, 2, 4)), (make_btail_graph, (9, 2, 6)),
        (make_multitail_graph, (9, [2, 1, 1])), (make_collision_gadget, (10,)),
    ])
    def test_regular_connected(self, maker, args):
        g, meta = maker(*args)
        assert g.regular_degree() == meta.d
        assert nx.is_connected(to_nx(g))


class TestRandom:
    def test_regular_simple(self):
        g = random_regular(20, 7, 1)
        assert g.regular_degree() == 7
        assert nx.number_of_selfloops(to_nx(g)) == 0

    def test_deterministic(self):
        assert random_regular(60, 9, 5).adj == random_regular(60, 9, 5).adj
        assert random_regular(60, 9, 5).adj != random_regular(60, 9, 6).adj

    def test_parity_fails_cleanly(self):
        with pytest.raises(GraphInputError, match="odd"):
            random_regular(9, 7, 3)

    def test_bad_sizes(self):
        with pytest.raises(GraphInputError):
            random_regular(5, 5, 0)

    def test_corpus_reproducible(self):
        a = [(s, g.adj) for s, g in random_corpus(30, 7, 5, 11)]
        b = [(s, g.adj) for s, g in random_corpus(30, 7, 5, 11)]
        assert a == b and len(a) == 5

    def test_corpus_filter(self):
        out = list(random_corpus(12, 3, 4, 2, accept=lambda g: nx.is_connected(to_nx(g))))
        assert all(nx.is_connected(to_nx(g)) for _, g in out)

    def test_sum_identity(self):
        g = random_regular(100, 9, 42)
        sq = graph_power(g, 2)
        assert dist2_profile(g).total_deg2 == sum(sq.degree(v) - g.degree(v) for v in range(g.n))
