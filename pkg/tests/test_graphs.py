import math

import numpy as np
import pytest

from qswrank.graphs import (
    EdgeListParseError,
    Graph,
    GraphError,
    eight_vertex,
    gen_barabasi_albert,
    gen_bernoulli,
    gen_price,
    gen_spatial,
    gen_watts_strogatz,
    load_edgelist,
    random_orientation,
    save_edgelist,
    zachary,
)


class TestGraphInvariants:
    def test_rejects_out_of_range_vertex(self):
        with pytest.raises(GraphError):
            Graph(3, frozenset({(1, 4)}), True)

    def test_rejects_self_loop(self):
        with pytest.raises(GraphError):
            Graph(3, frozenset({(2, 2)}), True)

    def test_undirected_requires_symmetric_closure(self):
        with pytest.raises(GraphError):
            Graph(3, frozenset({(1, 2)}), False)

    def test_edge_count_collapses_orientations(self):
        g = Graph(3, frozenset({(1, 2), (2, 1)}), False)
        assert g.edge_count == 1


class TestBernoulli:
    def test_zero_probability_empty(self):
        assert gen_bernoulli(5, 0.0, 1).edge_count == 0

    def test_certain_probability_complete(self):
        assert gen_bernoulli(5, 1.0, 1).edge_count == 10

    def test_invalid_probability(self):
        with pytest.raises(GraphError):
            gen_bernoulli(5, 1.5, 1)

    def test_edge_count_matches_binomial(self):
        # mean over 50 seeds should sit within 3 sigma of the binomial mean
        n, p = 100, 0.6
        pairs = n * (n - 1) // 2
        counts = [gen_bernoulli(n, p, s).edge_count for s in range(50)]
        mean = np.mean(counts)
        sigma_mean = math.sqrt(pairs * p * (1 - p) / 50)
        assert abs(mean - pairs * p) < 3 * sigma_mean

    def test_deterministic(self):
        assert gen_bernoulli(30, 0.3, 7) == gen_bernoulli(30, 0.3, 7)


class TestWattsStrogatz:
    def test_no_rewiring_gives_cycle(self):
        g = gen_watts_strogatz(8, 0.0, 1, 0)
        assert g.edge_count == 8
        assert g.edges == frozenset(
            {(u, u % 8 + 1) for u in range(1, 9)}
            | {(u % 8 + 1, u) for u in range(1, 9)}
        )

    def test_full_rewiring_conserves_edges(self):
        g = gen_watts_strogatz(8, 1.0, 1, 3)
        assert g.edge_count == 8

    @pytest.mark.parametrize("p", [0.0, 0.2, 0.7, 1.0])
    def test_edge_conservation(self, p):
        g = gen_watts_strogatz(100, p, 1, 11)
        assert g.edge_count == 100
        assert g.degrees().mean() == pytest.approx(2.0)

    def test_parameter_error(self):
        with pytest.raises(GraphError):
            gen_watts_strogatz(8, 0.1, 4, 0)

    def test_deterministic(self):
        a = gen_watts_strogatz(50, 0.5, 2, 9)
        b = gen_watts_strogatz(50, 0.5, 2, 9)
        assert a == b


class TestBarabasiAlbert:
    def test_two_vertices_forced_edge(self):
        g = gen_barabasi_albert(2, 1, 0)
        assert g.edges == frozenset({(1, 2), (2, 1)})

    def test_edge_count_from_growth_rule(self):
        # first new vertex can only place one edge, the rest place k = 2
        g = gen_barabasi_albert(100, 2, 5)
        assert g.edge_count == 2 * 98 + 1

    def test_heavy_tail(self):
        hits = 0
        for s in range(50):
            d = gen_barabasi_albert(100, 2, s).degrees()
            if d.max() > 3 * d.mean():
                hits += 1
        assert hits >= 45

    def test_parameter_error(self):
        with pytest.raises(GraphError):
            gen_barabasi_albert(2, 2, 0)


class TestPrice:
    def test_two_vertices(self):
        g = gen_price(2, 1, 1.0, 0)
        assert g.edges == frozenset({(2, 1)})

    def test_out_degrees_bounded(self):
        g = gen_price(100, 2, 1.0, 4)
        out = np.zeros(101, dtype=int)
        for (u, _) in g.edges:
            out[u] += 1
        assert out[1] == 0
        assert np.all(out[2:101] <= 2)

    def test_in_degree_tail_heavier_than_out(self):
        in_maxes, out_maxes = [], []
        for s in range(20):
            g = gen_price(100, 2, 1.0, s)
            indeg = np.zeros(101, dtype=int)
            outdeg = np.zeros(101, dtype=int)
            for (u, v) in g.edges:
                outdeg[u] += 1
                indeg[v] += 1
            in_maxes.append(indeg.max())
            out_maxes.append(outdeg.max())
        assert np.mean(in_maxes) > np.mean(out_maxes)

    def test_parameter_error(self):
        with pytest.raises(GraphError):
            gen_price(10, 2, 0.0, 0)


class TestSpatial:
    def test_zero_threshold_empty(self):
        assert gen_spatial(10, 0.0, 1).edge_count == 0

    def test_diameter_threshold_complete(self):
        assert gen_spatial(10, math.sqrt(2), 1).edge_count == 45

    def test_adjacency_matches_bruteforce_distances(self):
        g = gen_spatial(100, 0.35, 3)
        pts = np.array(g.coords)
        for u in range(100):
            for v in range(u + 1, 100):
                expected = np.linalg.norm(pts[u] - pts[v]) <= 0.35
                assert ((u + 1, v + 1) in g.edges) == expected


class TestFixedGraphs:
    def test_zachary_basic(self):
        z = zachary()
        assert z.vertex_count == 34
        assert z.edge_count == 78
        assert np.all(z.degrees() >= 1)

    def test_eight_vertex(self):
        g = eight_vertex()
        assert g.vertex_count == 8
        assert g.directed
        assert g.edge_count == 18


class TestRandomOrientation:
    def test_cycle_orientation(self):
        c4 = Graph(4, frozenset({(1, 2), (2, 1), (2, 3), (3, 2),
                                 (3, 4), (4, 3), (4, 1), (1, 4)}), False)
        d = random_orientation(c4, 0)
        assert d.edge_count == 4
        for (u, v) in c4.edges:
            if u < v:
                assert ((u, v) in d.edges) != ((v, u) in d.edges)

    def test_empty_graph(self):
        g = Graph(3, frozenset(), False)
        assert random_orientation(g, 0).edge_count == 0

    def test_deterministic(self):
        z = zachary()
        assert random_orientation(z, 42) == random_orientation(z, 42)

    def test_rejects_directed_input(self):
        with pytest.raises(GraphError):
            random_orientation(eight_vertex(), 0)


class TestEdgeList:
    def test_literal_format(self, tmp_path):
        path = tmp_path / "g.el"
        path.write_text("3\n1 2\n2 3\n")
        g = load_edgelist(path)
        assert g.vertex_count == 3
        assert g.edges == frozenset({(1, 2), (2, 3)})
        assert g.directed

    @pytest.mark.parametrize("make", [
        lambda: gen_bernoulli(20, 0.3, 1),
        lambda: gen_price(20, 2, 1.0, 1),
        lambda: gen_spatial(20, 0.4, 1),
        lambda: random_orientation(zachary(), 5),
    ])
    def test_round_trip(self, tmp_path, make):
        g = make()
        path = tmp_path / "g.el"
        save_edgelist(g, path)
        assert load_edgelist(path) == g

    def test_out_of_range_vertex_cites_line(self, tmp_path):
        path = tmp_path / "bad.el"
        path.write_text("3\n1 4\n")
        with pytest.raises(EdgeListParseError) as exc:
            load_edgelist(path)
        assert exc.value.line_number == 2

    def test_duplicate_edge_rejected(self, tmp_path):
        path = tmp_path / "dup.el"
        path.write_text("3\n1 2\n1 2\n")
        with pytest.raises(EdgeListParseError):
            load_edgelist(path)

    def test_malformed_line(self, tmp_path):
        path = tmp_path / "bad.el"
        path.write_text("3\n1 2 3\n")
        with pytest.raises(EdgeListParseError):
            load_edgelist(path)
