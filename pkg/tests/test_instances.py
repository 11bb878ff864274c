"""Showcase and random instance generators."""

from pbpoly.acyclicity import (
    alpha_elimination_order,
    beta_cycle_support_components,
    beta_elimination_order,
    enumerate_beta_cycles,
    gap,
)
from pbpoly.core import rank, underlying_hypergraph
from pbpoly.instances import (
    ladder_cycle,
    mixed_sign_chain,
    non_tu_nested,
    non_tu_witness_edges,
    random_alpha_acyclic,
    random_beta_acyclic,
    random_hypergraph,
    two_cycle_components,
)
from pbpoly.formulation import nested_node_order
from pbpoly.oracle import SplitMix64


class TestLadderCycle:
    def test_structure(self):
        L = ladder_cycle(3)
        G = underlying_hypergraph(L.H)
        assert rank(G) == 4
        # every edge is all-positive
        assert all(all(sg == 1 for _, sg in s.items)
                   for s in L.H.sorted_edges())

    def test_leaf_eliminability(self):
        L = ladder_cycle(3)
        G = underlying_hypergraph(L.H)
        assert not beta_elimination_order(G).complete
        assert alpha_elimination_order(G).complete

    def test_gap_pattern(self):
        L = ladder_cycle(3)
        assert [gap([L.e[i], L.f[i]]).gap for i in range(3)] == [1, 2, 1]
        assert [gap([L.e[i], L.g[i]]).gap for i in range(3)] == [1, 2, 1]

    def test_long_cycle_exists(self):
        L = ladder_cycle(3)
        cycles = enumerate_beta_cycles(underlying_hypergraph(L.H))
        assert len(cycles) == 6
        assert max(c.length for c in cycles) == 6  # a cycle through all rungs


class TestTwoCycleComponents:
    def test_components_and_gaps(self):
        H = two_cycle_components(12)
        assert len(H.edges) == 13
        comps = beta_cycle_support_components(underlying_hypergraph(H))
        assert [(sorted(nodes), gap(edges).gap) for nodes, edges in comps] \
            == [(["v04", "v05", "v06", "v07"], 2),
                (["v08", "v09", "v10", "v11", "v12"], 3)]

    def test_full_edge_stays_out_of_cycles(self):
        H = two_cycle_components(12)
        full = frozenset(H.nodes)
        for c in enumerate_beta_cycles(underlying_hypergraph(H)):
            assert full not in c.edges


class TestMixedSignChain:
    def test_beta_acyclic_with_mixed_signs(self):
        H = mixed_sign_chain(5)
        assert beta_elimination_order(underlying_hypergraph(H)).complete
        signs = {sg for s in H.sorted_edges() for _, sg in s.items}
        assert signs == {1, -1}


class TestNonTuNested:
    def test_is_nested(self):
        H = non_tu_nested()
        assert nested_node_order(H) == ["v01", "v02", "v03", "v04"]
        assert len(H.edges) == 12

    def test_witness_edges_belong_to_instance(self):
        H = non_tu_nested()
        assert set(non_tu_witness_edges()) <= H.edges
        assert len(non_tu_witness_edges()) == 5


class TestRandomGenerators:
    def test_beta_acyclic_generator_honors_promise(self):
        rng = SplitMix64(5)
        for _ in range(20):
            H = random_beta_acyclic(rng)
            G = underlying_hypergraph(H)
            assert beta_elimination_order(G).complete
            assert len(H.nodes) <= 8 and len(H.edges) <= 12
            assert rank(G) <= 5 if G.edges else True

    def test_alpha_acyclic_generator_honors_promise(self):
        rng = SplitMix64(6)
        for _ in range(20):
            H = random_alpha_acyclic(rng)
            G = underlying_hypergraph(H)
            assert alpha_elimination_order(G).complete
            assert rank(G) <= 4 if G.edges else True

    def test_generators_are_seed_deterministic(self):
        a = random_hypergraph(SplitMix64(9))
        b = random_hypergraph(SplitMix64(9))
        assert a == b
