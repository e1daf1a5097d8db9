import random
from fractions import Fraction
from math import comb, factorial

import networkx as nx
import pytest

from chroma_cycles.graph import Digraph, Edge, Graph, complete, cycle, path, petersen, toft
from chroma_cycles.oracle import (
    BudgetExhausted,
    bad_ordering_count,
    count_backward_steps,
    default_budget,
    edge_length_histograms,
    enumerate_cycles,
    length_histogram,
    minty_check,
    orientation_from_ordering,
    oriented_stats,
    profile_from_lengths,
    random_orientation_search,
    residue_profile,
)
from helpers import brute_cycles, random_graph


def as_edge_sets(cycles):
    return {frozenset(Edge(c[i - 1], c[i]) for i in range(len(c))) for c in cycles}


def walk(edge_set):
    """Vertex order around a cycle given as a set of edges."""
    nbrs = {}
    for e in edge_set:
        nbrs.setdefault(e.u, []).append(e.v)
        nbrs.setdefault(e.v, []).append(e.u)
    start = min(nbrs)
    seq, prev = [start], None
    while len(seq) < len(edge_set):
        nxt = next(w for w in nbrs[seq[-1]] if w != prev)
        prev = seq[-1]
        seq.append(nxt)
    return seq


def complete_cycle_count(n):
    return sum(comb(n, l) * factorial(l - 1) // 2 for l in range(3, n + 1))


class TestEnumeration:
    def test_k4(self):
        assert len(list(enumerate_cycles(complete(4)))) == 7
        assert length_histogram(enumerate_cycles(complete(4))) == {3: 4, 4: 3}

    @pytest.mark.parametrize("n", range(3, 8))
    def test_complete(self, n):
        assert len(list(enumerate_cycles(complete(n)))) == complete_cycle_count(n)

    def test_petersen_short(self):
        assert len(list(enumerate_cycles(petersen(), max_len=5))) == 12

    def test_petersen_spectrum(self):
        nxc = [c for c in nx.simple_cycles(nx.petersen_graph())]
        assert length_histogram(enumerate_cycles(petersen())) == length_histogram(nxc)

    @pytest.mark.parametrize("n", range(3, 10))
    def test_cycle_graph(self, n):
        assert list(enumerate_cycles(cycle(n))) == [tuple(range(n))]

    def test_forest(self):
        assert list(enumerate_cycles(path(6))) == []

    def test_canonical_and_unique(self):
        cycles = list(enumerate_cycles(complete(6)))
        assert len(cycles) == len(set(cycles)) == 197
        for c in cycles:
            assert c[0] == min(c) and c[1] < c[-1]

    def test_against_brute_force(self):
        rng = random.Random(17)
        for _ in range(150):
            g = random_graph(rng, rng.randint(0, 7), rng.random())
            assert as_edge_sets(enumerate_cycles(g)) == brute_cycles(g)

    def test_through_edge_against_brute_force(self):
        rng = random.Random(18)
        for _ in range(100):
            g = random_graph(rng, rng.randint(2, 7), rng.random())
            brute = brute_cycles(g)
            for e in g.edges():
                assert as_edge_sets(enumerate_cycles(g, through=e)) == {c for c in brute if e in c}

    def test_against_networkx(self):
        rng = random.Random(19)
        for _ in range(40):
            g = random_graph(rng, rng.randint(3, 9), 0.5)
            h = nx.Graph([tuple(e) for e in g.edges()])
            assert length_histogram(enumerate_cycles(g)) == length_histogram(nx.simple_cycles(h))

    def test_max_len(self):
        rng = random.Random(20)
        for _ in range(50):
            g = random_graph(rng, rng.randint(3, 8), 0.5)
            cap = rng.randint(3, 6)
            assert set(enumerate_cycles(g, max_len=cap)) == {c for c in enumerate_cycles(g) if len(c) <= cap}
            for e in g.edges():
                assert set(enumerate_cycles(g, through=e, max_len=cap)) == {
                    c for c in enumerate_cycles(g, through=e) if len(c) <= cap
                }

    def test_budget(self):
        with pytest.raises(BudgetExhausted):
            list(enumerate_cycles(complete(6), budget=10))
        assert len(list(enumerate_cycles(complete(6), budget=197))) == 197

    def test_budget_env(self, monkeypatch):
        monkeypatch.setenv("CHROMA_CYCLES_BUDGET", "123")
        assert default_budget() == 123
        monkeypatch.delenv("CHROMA_CYCLES_BUDGET")
        assert default_budget() == 10**7


class TestProfiles:
    def test_petersen_r3(self):
        assert residue_profile(petersen(), 3)[1] == 0

    def test_k4_through_edge(self):
        prof = residue_profile(complete(4), 3, through=Edge(0, 1))
        assert prof[1] == 2
        assert prof.total == 4

    @pytest.mark.parametrize("k", [3, 4])
    def test_complete_residue_2(self, k):
        g = complete(k + 1)
        for e in g.edges():
            assert residue_profile(g, k, through=e)[2] == 0

    def test_each_cycle_counted_once_per_edge(self):
        rng = random.Random(23)
        for _ in range(40):
            g = random_graph(rng, rng.randint(3, 8), 0.5)
            total_len = sum(len(c) for c in enumerate_cycles(g))
            assert sum(residue_profile(g, 2, through=e).total for e in g.edges()) == total_len

    def test_histograms_match_per_edge(self):
        rng = random.Random(24)
        for _ in range(40):
            g = random_graph(rng, rng.randint(3, 8), 0.6)
            hists = edge_length_histograms(g)
            for e in g.edges():
                assert hists[e] == length_histogram(enumerate_cycles(g, through=e))
                for r in (2, 3, 4):
                    assert profile_from_lengths(hists[e], r, e) == residue_profile(g, r, through=e)

    def test_toft_histogram_total(self):
        hists = edge_length_histograms(toft())
        lengths = length_histogram(enumerate_cycles(toft()))
        assert sum(lengths.values()) == 350542
        assert sum(sum(h.values()) for h in hists.values()) == sum(l * c for l, c in lengths.items())

    def test_to_dict(self):
        d = residue_profile(complete(4), 3).to_dict()
        assert d == {"modulus": 3, "scope": "whole", "counts": {"0": 4, "1": 3, "2": 0}, "total": 7}

    def test_bad_modulus(self):
        with pytest.raises(ValueError):
            residue_profile(complete(4), 1)


class TestMinty:
    def test_cyclic_c4(self):
        g = cycle(4)
        ok, witness = minty_check(g, Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), 3)
        assert not ok
        assert (witness.forward, witness.backward) == (4, 0)

    def test_forest(self):
        g = path(5)
        assert minty_check(g, orientation_from_ordering(g, range(5)), 3) == (True, None)

    def test_petersen(self):
        g = petersen()
        ok, _ = minty_check(g, orientation_from_ordering(g, range(10)), 3)
        assert ok

    def test_rejects_partial_orientation(self):
        with pytest.raises(ValueError):
            minty_check(cycle(3), Digraph(3, [(0, 1), (1, 2)]), 2)
        with pytest.raises(ValueError):
            minty_check(cycle(3), Digraph(3, [(0, 1), (1, 0), (1, 2), (2, 0)]), 2)

    def test_oriented_stats(self):
        dg = Digraph(4, [(0, 1), (1, 2), (3, 2), (0, 3)])
        st = oriented_stats((0, 1, 2, 3), dg)
        assert (st.forward, st.backward) == (2, 2)
        st = oriented_stats((0, 1, 2, 3), dg, -1)
        assert (st.forward, st.backward, st.direction) == (2, 2, -1)

    def test_acyclic_orientation(self):
        rng = random.Random(5)
        for _ in range(30):
            g = random_graph(rng, rng.randint(2, 8), 0.5)
            order = list(range(g.n))
            rng.shuffle(order)
            dg = orientation_from_ordering(g, order)
            assert len(dg) == g.m
            h = nx.DiGraph()
            h.add_nodes_from(range(g.n))
            h.add_edges_from(dg.arcs())
            assert nx.is_directed_acyclic_graph(h)

    def test_brute_force_agreement(self):
        rng = random.Random(6)
        for _ in range(40):
            g = random_graph(rng, rng.randint(3, 7), 0.6)
            k = rng.choice((2, 3, 4))
            order = list(range(g.n))
            rng.shuffle(order)
            dg = orientation_from_ordering(g, order)
            expected = True
            for cyc in brute_cycles(g):
                if len(cyc) % k != 1 % k:
                    continue
                seq = walk(cyc)
                fwd = sum(1 for i in range(len(seq)) if dg.has_arc(seq[i - 1], seq[i]))
                if max(fwd, len(cyc) - fwd) > (k - 1) * min(fwd, len(cyc) - fwd):
                    expected = False
            assert minty_check(g, dg, k)[0] == expected


class TestOrientationSearch:
    def test_deterministic(self):
        a = random_orientation_search(complete(5), 3, 20, seed=4, stop_at_first=False)
        b = random_orientation_search(complete(5), 3, 20, seed=4, stop_at_first=False)
        assert [t.to_dict(3) for t in a.trials] == [t.to_dict(3) for t in b.trials]
        assert len(a.trials) == 20

    def test_stop_at_first(self):
        res = random_orientation_search(petersen(), 3, 10, seed=1)
        assert len(res.trials) == 1 and res.first_pass is res.trials[0]

    def test_failed_trial_has_witness(self):
        res = random_orientation_search(complete(4), 3, 30, seed=0, stop_at_first=False)
        failed = [t for t in res.trials if not t.passed]
        assert failed
        for t in failed:
            d = t.to_dict(3)
            assert d["witness"]["q"] == 1
            assert d["witness"]["forward"] > 2 * d["witness"]["backward"]

    def test_zero_trials(self):
        with pytest.raises(ValueError):
            random_orientation_search(complete(4), 3, 0, seed=0)


class TestBadOrderings:
    @pytest.mark.parametrize("k,q,count,total", [(3, 1, 4, 24), (4, 1, 5, 120), (5, 1, 6, 720), (3, 2, 406, 5040)])
    def test_regression(self, k, q, count, total):
        res = bad_ordering_count(k, q)
        assert (res.count, res.total) == (count, total)
        assert res.within_bound and res.doubled_within

    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_q1_matches_two_over_kfact(self, k):
        res = bad_ordering_count(k, 1)
        assert 2 * res.fraction == Fraction(2, factorial(k))

    def test_backward_steps(self):
        assert count_backward_steps([0, 1, 2, 3]) == 1
        assert count_backward_steps([3, 2, 1, 0]) == 3

    def test_limits(self):
        with pytest.raises(ValueError):
            bad_ordering_count(3, 3)
        with pytest.raises(ValueError):
            bad_ordering_count(1, 1)
