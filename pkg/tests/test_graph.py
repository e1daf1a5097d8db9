import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chroma_cycles.graph import (
    Edge,
    Graph,
    circular_clique,
    complete,
    cycle,
    edge_deleted,
    grotzsch,
    make_named,
    parse_named,
    path,
    petersen,
    toft,
    wheel,
)
from chroma_cycles.graph6 import GraphFormatError, parse_graph6, parse_line, parse_sparse6, write_graph6
from helpers import random_graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(tuple(e) for e in g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    return Graph(h.number_of_nodes(), h.edges())


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


class TestGraph:
    def test_edge_is_canonical(self):
        assert Edge(3, 1) == Edge(1, 3)
        assert tuple(Edge(5, 2)) == (2, 5)
        with pytest.raises(ValueError):
            Edge(2, 2)

    def test_rejects_loops_and_out_of_range(self):
        with pytest.raises(ValueError):
            Graph(3, [(1, 1)])
        with pytest.raises(ValueError):
            Graph(3, [(0, 3)])

    @given(graphs())
    def test_symmetric_irreflexive(self, g):
        for u in range(g.n):
            assert u not in g.neighbors(u)
            for v in g.neighbors(u):
                assert u in g.neighbors(v)
        assert 2 * g.m == sum(g.degree(v) for v in range(g.n))

    def test_edge_deleted_triangle_is_path(self):
        for e in complete(3).edges():
            h = edge_deleted(complete(3), e)
            assert nx.is_isomorphic(to_nx(h), to_nx(path(3)))

    def test_edge_deleted_c5_is_path(self):
        for e in cycle(5).edges():
            assert nx.is_isomorphic(to_nx(edge_deleted(cycle(5), e)), to_nx(path(5)))

    @given(graphs())
    def test_edge_deleted_drops_one_edge(self, g):
        for e in g.edges():
            h = edge_deleted(g, e)
            assert h.m == g.m - 1
            assert not h.has_edge(e.u, e.v)
            assert set(h.edges()) == set(g.edges()) - {e}

    def test_edge_deleted_missing_edge(self):
        with pytest.raises(ValueError):
            edge_deleted(path(4), Edge(0, 3))


class TestNamed:
    def test_circular_clique_5_2_is_c5(self):
        assert nx.is_isomorphic(to_nx(circular_clique(5, 2)), to_nx(cycle(5)))

    @pytest.mark.parametrize("k", range(2, 9))
    def test_circular_clique_k_1_is_complete(self, k):
        assert circular_clique(k, 1) == complete(k)

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_odd_circular_clique_is_odd_cycle(self, d):
        assert nx.is_isomorphic(to_nx(circular_clique(2 * d + 1, d)), to_nx(cycle(2 * d + 1)))

    @pytest.mark.parametrize("k,d", [(k, d) for k in range(2, 12) for d in range(1, k // 2 + 1)])
    def test_circular_clique_rotation_is_automorphism(self, k, d):
        g = circular_clique(k, d)
        for u, v in g.edges():
            assert g.has_edge((u + 1) % k, (v + 1) % k)

    def test_circular_clique_rejects_small_k(self):
        with pytest.raises(ValueError):
            circular_clique(5, 3)

    def test_petersen(self):
        g = petersen()
        assert (g.n, g.m) == (10, 15)
        assert nx.girth(to_nx(g)) == 5
        assert nx.is_isomorphic(to_nx(g), nx.petersen_graph())

    def test_grotzsch(self):
        g = grotzsch()
        assert (g.n, g.m) == (11, 20)
        assert nx.is_isomorphic(to_nx(g), nx.mycielski_graph(4))

    def test_toft_shape(self):
        g = toft()
        assert (g.n, g.m) == (20, 45)
        assert [g.degree(v) for v in range(10)] == [6] * 10
        assert [g.degree(v) for v in range(10, 20)] == [3] * 10
        assert min(g.degree(v) for v in range(g.n)) >= 3

    def test_toft_contains_induced_k55(self):
        k55 = toft().induced(range(10))
        assert nx.is_isomorphic(to_nx(k55), nx.complete_bipartite_graph(5, 5))

    def test_toft_cycles_and_matching(self):
        g = toft()
        for base in (10, 15):
            assert nx.is_isomorphic(to_nx(g.induced(range(base, base + 5))), nx.cycle_graph(5))
        assert all(g.has_edge(i, i + 10) for i in range(10))

    def test_wheel(self):
        g = wheel(5)
        assert (g.n, g.m) == (6, 10)
        assert g.degree(5) == 5

    @pytest.mark.parametrize("spec", ["complete:5", "cycle:7", "path:3", "complete-bipartite:2:3", "wheel:5",
                                      "petersen", "circular-clique:7:3", "grotzsch", "toft"])
    def test_named_graphs_are_simple(self, spec):
        g = parse_named(spec)
        for u in range(g.n):
            assert u not in g.neighbors(u)

    def test_make_named_errors(self):
        with pytest.raises(ValueError, match="unknown"):
            make_named("dodecahedron")
        with pytest.raises(ValueError):
            make_named("complete", [])
        with pytest.raises(ValueError):
            parse_named("circular-clique:3:2")


class TestGraph6:
    def test_known_string_round_trip(self):
        g = parse_graph6("D?{")
        assert g.n == 5
        assert g == from_nx(nx.from_graph6_bytes(b"D?{"))
        assert write_graph6(g) == "D?{"

    def test_single_vertex(self):
        assert write_graph6(Graph(1)) == "@"
        assert parse_graph6("@") == Graph(1)

    def test_k2(self):
        # one edge on two vertices: bit 1 padded to 100000 = 32, chr(32 + 63) = '_'
        assert write_graph6(complete(2)) == "A_"
        assert parse_graph6("A_") == complete(2)

    def test_k4(self):
        text = write_graph6(complete(4))
        g = parse_graph6(text)
        assert g.n == 4 and g.m == 6
        assert g.adjacency_matrix() == [[int(i != j) for j in range(4)] for i in range(4)]

    def test_header_is_accepted(self):
        assert parse_graph6(">>graph6<<D?{") == parse_graph6("D?{")

    def test_illegal_byte_offset(self):
        with pytest.raises(GraphFormatError) as err:
            parse_graph6("D?\x1f")
        assert err.value.offset == 2
        with pytest.raises(GraphFormatError) as err:
            parse_graph6(">>graph6<<D\x1f{")
        assert err.value.offset == 11

    def test_wrong_length(self):
        with pytest.raises(GraphFormatError, match="expected 2 adjacency bytes"):
            parse_graph6("D?")
        with pytest.raises(GraphFormatError):
            parse_graph6("D?{?")

    def test_nonzero_padding(self):
        # n=2 has one adjacency bit; '`' sets a padding bit
        with pytest.raises(GraphFormatError, match="padding"):
            parse_graph6("A`")

    def test_size_limit(self):
        big = write_graph6(Graph(70))
        with pytest.raises(GraphFormatError, match="limit"):
            parse_graph6(big)
        assert parse_graph6(big, max_n=100) == Graph(70)

    @pytest.mark.parametrize("n", [62, 63, 64])
    def test_long_form_against_networkx(self, n):
        rng = random.Random(n)
        g = random_graph(rng, n, 0.1)
        text = write_graph6(g)
        assert text == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert parse_graph6(text) == g

    def test_random_round_trip(self):
        rng = random.Random(2024)
        for _ in range(100):
            g = random_graph(rng, rng.randint(0, 20), rng.random())
            text = write_graph6(g)
            assert parse_graph6(text) == g
            assert text == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()

    @settings(max_examples=200)
    @given(graphs(max_n=15))
    def test_write_parse_identity(self, g):
        assert parse_graph6(write_graph6(g)) == g

    @given(st.integers(0, 10), st.data())
    def test_parse_write_identity_on_valid_strings(self, n, data):
        nbytes = (n * (n - 1) // 2 + 5) // 6
        g = Graph(n, [])
        text = write_graph6(g)[: len(write_graph6(g)) - nbytes]
        body = [data.draw(st.integers(0, 63)) for _ in range(nbytes)]
        pad = 6 * nbytes - n * (n - 1) // 2
        if body:
            body[-1] &= ~((1 << pad) - 1)
        s = text + "".join(chr(b + 63) for b in body)
        assert write_graph6(parse_graph6(s)) == s


class TestSparse6:
    def test_against_networkx(self):
        rng = random.Random(7)
        for _ in range(100):
            g = random_graph(rng, rng.randint(1, 30), rng.random() * 0.4)
            text = nx.to_sparse6_bytes(to_nx(g), header=False).decode().strip()
            assert parse_sparse6(text) == g
            assert parse_line(text) == g

    def test_header(self):
        text = nx.to_sparse6_bytes(nx.petersen_graph(), header=True).decode().strip()
        assert parse_sparse6(text) == from_nx(nx.petersen_graph())

    def test_rejects_multigraph(self):
        m = nx.MultiGraph()
        m.add_edges_from([(0, 1), (0, 1), (1, 2)])
        text = nx.to_sparse6_bytes(m, header=False).decode().strip()
        with pytest.raises(GraphFormatError, match="repeated"):
            parse_sparse6(text)

    def test_rejects_loop(self):
        m = nx.MultiGraph()
        m.add_edges_from([(0, 0), (0, 1)])
        text = nx.to_sparse6_bytes(m, header=False).decode().strip()
        with pytest.raises(GraphFormatError, match="loop"):
            parse_sparse6(text)
