"""Property-based invariants across random inputs."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from pbpoly.acyclicity import beta_elimination_order, enumerate_beta_cycles
from pbpoly.core import (
    SignedEdge,
    SignedHypergraph,
    expand_signed_term,
    underlying_hypergraph,
)
from pbpoly.exactlp import simplex_max
from pbpoly.formulation import Strategy, lift_binary_point, rid_build
from pbpoly.instances import random_beta_acyclic
from pbpoly.oracle import (
    SplitMix64,
    brute_max,
    enumerate_pbs,
    vertex_enumeration_max,
)

from conftest import PlainRow

NODES = ["a", "b", "c", "d", "e"]


@st.composite
def signed_edges(draw, min_size=2, max_size=4):
    size = draw(st.integers(min_size, max_size))
    nodes = draw(st.permutations(NODES))
    signs = draw(st.lists(st.sampled_from([1, -1]),
                          min_size=size, max_size=size))
    return SignedEdge.make(dict(zip(nodes[:size], signs)))


@st.composite
def signed_hypergraphs(draw, max_edges=4):
    edges = draw(st.lists(signed_edges(), min_size=1, max_size=max_edges,
                          unique=True))
    return SignedHypergraph.make(NODES, edges)


class TestEdgeAlgebra:
    @given(signed_edges())
    def test_flip_is_an_involution(self, e):
        v = e.nodes[0]
        assert e.flip(v).flip(v) == e

    @given(signed_edges(min_size=3))
    def test_restrict_then_extend_recovers(self, e):
        v = e.nodes[-1]
        assert e.restrict(v).extend(v, e.sign(v)) == e

    @given(signed_edges(), st.integers(0, 31))
    def test_expansion_evaluates_like_the_product(self, e, mask):
        z = {v: (mask >> i) & 1 for i, v in enumerate(NODES)}
        ex = expand_signed_term(e)
        val = ex.constant + sum(c * all(z[u] for u in mono)
                                for mono, c in ex.monomials)
        assert val == e.evaluate(z)


class TestPbsInvariants:
    @given(signed_hypergraphs())
    @settings(max_examples=25, deadline=None)
    def test_pbs_points_respect_products(self, H):
        for p in enumerate_pbs(H):
            for s in H.sorted_edges():
                assert p[s] == s.evaluate({v: p[v] for v in H.nodes})

    @given(signed_hypergraphs(), st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_brute_max_dominates_every_point(self, H, seed):
        rng = SplitMix64(seed)
        c = {v: rng.randint(-5, 5) for v in H.nodes}
        best = brute_max(H, c)
        for p in enumerate_pbs(H):
            assert sum(c[v] * p[v] for v in H.nodes) <= best


class TestHullInvariants:
    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=15, deadline=None)
    def test_lift_of_every_pbs_point_is_feasible(self, seed):
        H = random_beta_acyclic(SplitMix64(seed), max_nodes=5, max_edges=6)
        EF = rid_build(H, Strategy(kind="beta"))
        for p in enumerate_pbs(H):
            assignment = lift_binary_point(EF, p.values)
            for row in EF.rows:
                lhs = sum(c * assignment[v]
                          for v, c in row.coefficients.items())
                assert lhs == row.rhs if row.relation == "eq" \
                    else lhs <= row.rhs

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=10, deadline=None)
    def test_cycle_free_means_leaf_reducible(self, seed):
        rng = SplitMix64(seed)
        H = random_beta_acyclic(rng, max_nodes=6, max_edges=8)
        G = underlying_hypergraph(H)
        assert beta_elimination_order(G).complete
        assert enumerate_beta_cycles(G) == []


class TestLpInvariants:
    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_simplex_matches_vertex_enumeration(self, seed):
        rng = SplitMix64(seed)
        n = rng.randint(2, 4)
        names = [f"x{i}" for i in range(n)]
        rows = [PlainRow({v: rng.randint(-3, 3) for v in names}, "le",
                         rng.randint(-2, 6))
                for _ in range(rng.randint(1, 5))]
        bounds = {v: (0, rng.randint(1, 3)) for v in names}
        objective = {v: rng.randint(-5, 5) for v in names}
        out = simplex_max(rows, objective, bounds)
        oracle = vertex_enumeration_max(rows, bounds, objective)
        if oracle is None:
            assert out.status == "infeasible"
        else:
            assert out.status == "optimal"
            assert out.value == oracle

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=15, deadline=None)
    def test_witness_matches_value(self, seed):
        rng = SplitMix64(seed)
        names = ["x", "y", "z"]
        rows = [PlainRow({v: rng.randint(-2, 2) for v in names}, "le",
                         rng.randint(0, 4)) for _ in range(3)]
        objective = {v: rng.randint(-4, 4) for v in names}
        out = simplex_max(rows, objective, {v: (0, 2) for v in names})
        assert out.status == "optimal"
        assert sum(Fraction(objective[v]) * out.witness[v]
                   for v in names) == out.value
