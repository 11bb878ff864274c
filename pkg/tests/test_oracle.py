"""Brute-force enumeration, seeded objectives, and hull verification."""

from fractions import Fraction

import pytest

from pbpoly.core import SignedEdge, SignedHypergraph
from pbpoly.formulation import ExtendedFormulation, rid_build
from pbpoly.oracle import (
    SplitMix64,
    brute_max,
    enumerate_pbs,
    random_objective,
    verify_hull,
    vertex_enumeration_max,
)
from pbpoly.exactlp import simplex_max

from conftest import PlainRow


def edge(**signs):
    return SignedEdge.make(signs)


class TestEnumeration:
    def test_point_count_is_two_to_the_nodes(self):
        H = SignedHypergraph.make(
            ["a", "b", "c"], [edge(a=1, b=1), edge(b=-1, c=1)])
        assert len(enumerate_pbs(H)) == 8

    def test_edge_values_are_products(self):
        e = edge(a=1, b=-1)
        H = SignedHypergraph.make(["a", "b"], [e])
        observed = {(p["a"], p["b"], p[e]) for p in enumerate_pbs(H)}
        assert observed == {(0, 0, 0), (0, 1, 0), (1, 0, 1), (1, 1, 0)}

    def test_limit_guard(self):
        H = SignedHypergraph.make([f"n{i:02d}" for i in range(25)], [])
        with pytest.raises(ValueError):
            enumerate_pbs(H)

    def test_brute_max(self):
        e = edge(a=1, b=-1)
        H = SignedHypergraph.make(["a", "b"], [e])
        # best is a=1, b=0 giving 1 + 0 + 5
        assert brute_max(H, {"a": 1, "b": 1, e: 5}) == 6
        assert brute_max(H, {"a": -1, "b": -1, e: -1}) == 0


class TestRandomness:
    def test_prng_is_deterministic(self):
        assert [SplitMix64(42).next64() for _ in range(1)] == \
            [SplitMix64(42).next64()]
        rng = SplitMix64(42)
        assert [rng.randint(-10, 10) for _ in range(8)] == \
            [9, 9, -10, -1, 3, 8, 6, 10]

    def test_objectives_cover_nodes_and_edges_in_range(self):
        H = SignedHypergraph.make(
            ["a", "b"], [edge(a=1, b=1), edge(a=1, b=-1)])
        rng = SplitMix64(7)
        c = random_objective(H, rng)
        assert set(c) == set(H.nodes) | H.edges
        assert all(-10 <= w <= 10 for w in c.values())

    def test_objective_stream_differs_across_draws(self):
        H = SignedHypergraph.make(["a", "b"], [edge(a=1, b=1)])
        rng = SplitMix64(7)
        draws = [tuple(sorted(random_objective(H, rng).values()))
                 for _ in range(5)]
        assert len(set(draws)) > 1


class TestVerifyHull:
    def instance(self):
        return SignedHypergraph.make(
            ["a", "b", "c"], [edge(a=1, b=1), edge(b=1, c=-1)])

    def test_correct_formulation_passes(self):
        H = self.instance()
        report = verify_hull(H, rid_build(H), trials=25, seed=0)
        assert report.all_pass
        assert report.failure is None
        assert report.lift_checked == 8
        assert all(eq for _, _, _, eq in report.lp_vs_brute)

    def test_missing_row_is_detected(self):
        H = self.instance()
        EF = rid_build(H)
        # drop every inequality, leaving only equalities: the relaxation
        # strictly contains the hull, so some objective must overshoot
        rows = tuple(r for r in EF.rows if r.relation == "eq")
        import dataclasses
        mutated = ExtendedFormulation(
            H=EF.H, variables=EF.variables, rows=rows,
            projection=EF.projection,
            report=dataclasses.replace(EF.report, n_rows=len(rows)))
        report = verify_hull(H, mutated, trials=25, seed=0)
        assert not report.all_pass

    def test_report_total_mismatch_is_flagged(self):
        H = self.instance()
        EF = rid_build(H)
        import dataclasses
        mutated = ExtendedFormulation(
            H=EF.H, variables=EF.variables, rows=EF.rows,
            projection=EF.projection,
            report=dataclasses.replace(EF.report,
                                       n_rows=EF.report.n_rows + 1))
        assert not verify_hull(H, mutated, trials=1, seed=0).all_pass


class TestVertexEnumeration:
    def test_matches_simplex_on_a_box_cut(self):
        rows = [PlainRow({"x": 1, "y": 1}, "le", 3)]
        bounds = {"x": (0, 2), "y": (0, 2)}
        objective = {"x": 2, "y": 1}
        assert vertex_enumeration_max(rows, bounds, objective) == \
            simplex_max(rows, objective, bounds).value
        assert vertex_enumeration_max(rows, bounds, objective) == 5

    def test_fractional_vertex(self):
        rows = [PlainRow({"x": 2, "y": 1}, "le", 1),
                PlainRow({"x": 1, "y": 2}, "le", 1)]
        bounds = {"x": (0, 1), "y": (0, 1)}
        assert vertex_enumeration_max(rows, bounds, {"x": 1, "y": 1}) == \
            Fraction(2, 3)

    def test_infeasible_returns_none(self):
        rows = [PlainRow({"x": 1}, "le", -1)]
        assert vertex_enumeration_max(rows, {"x": (0, 1)}, {"x": 1}) is None
