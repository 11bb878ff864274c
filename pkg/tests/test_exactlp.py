"""Exact rational simplex: correctness, bounds handling, reuse, presolve."""

from fractions import Fraction

import pytest

from pbpoly.exactlp import LpOutcome, SimplexSolver, simplex_max

from conftest import PlainRow


def row(coeffs, relation, rhs):
    return PlainRow(dict(coeffs), relation, rhs)


class TestBasics:
    def test_simple_max(self):
        out = simplex_max([row({"x": 1, "y": 1}, "le", 4),
                           row({"x": 1}, "le", 2)], {"x": 3, "y": 1})
        assert out.status == "optimal"
        assert out.value == 8
        assert out.witness == {"x": 2, "y": 2}

    def test_fractional_optimum(self):
        out = simplex_max([row({"x": 2, "y": 1}, "le", 1),
                           row({"x": 1, "y": 2}, "le", 1)],
                          {"x": 1, "y": 1})
        assert out.value == Fraction(2, 3)
        assert out.witness == {"x": Fraction(1, 3), "y": Fraction(1, 3)}

    def test_equality_row(self):
        out = simplex_max([row({"x": 1, "y": 1}, "eq", 3),
                           row({"x": 1}, "le", 1)], {"x": 1, "y": -1})
        assert out.value == 1 - 2

    def test_infeasible(self):
        out = simplex_max([row({"x": 1}, "le", 1),
                           row({"x": 1}, "eq", 2)], {"x": 1})
        assert out.status == "infeasible"
        assert out.value is None

    def test_unbounded(self):
        out = simplex_max([row({"x": -1}, "le", 0)], {"x": 1})
        assert out.status == "unbounded"

    def test_negative_rhs(self):
        out = simplex_max([row({"x": -1}, "le", -2),
                           row({"x": 1}, "le", 5)], {"x": -1})
        assert out.value == -2
        assert out.witness == {"x": 2}

    def test_unknown_relation_rejected(self):
        with pytest.raises(ValueError):
            simplex_max([row({"x": 1}, "ge", 0)], {"x": 1})

    def test_unknown_objective_variable_rejected(self):
        with pytest.raises(ValueError):
            simplex_max([row({"x": 1}, "le", 1)], {"q": 1})


class TestBounds:
    def test_default_bound_is_nonnegative(self):
        out = simplex_max([row({"x": 1}, "le", 3)], {"x": -1})
        assert out.value == 0

    def test_box_bounds(self):
        out = simplex_max([row({"x": 1, "y": 1}, "le", 10)], {"x": 1, "y": 1},
                          {"x": (0, 2), "y": (1, 3)})
        assert out.value == 5
        assert out.witness == {"x": 2, "y": 3}

    def test_shifted_lower_bound(self):
        out = simplex_max([row({"x": 1}, "le", 10)], {"x": -1},
                          {"x": (-4, None)})
        assert out.value == 4

    def test_free_variable(self):
        out = simplex_max([row({"x": 1, "y": 1}, "eq", 0)], {"x": 1},
                          {"x": (None, None), "y": (2, 5)})
        assert out.value == -2

    def test_empty_box_is_infeasible(self):
        out = simplex_max([row({"x": 1}, "le", 1)], {"x": 1}, {"x": (2, 1)})
        assert out.status == "infeasible"

    def test_free_variable_with_upper_bound_rejected(self):
        with pytest.raises(ValueError):
            SimplexSolver([row({"x": 1}, "le", 1)], {"x": (None, 3)})

    def test_unconstrained_free_variable_is_unbounded(self):
        out = simplex_max([row({"y": 1}, "le", 1)], {"x": 1},
                          {"x": (None, None)})
        assert out.status == "unbounded"


class TestReuseAndPresolve:
    def test_many_objectives_one_solver(self):
        solver = SimplexSolver([row({"x": 1, "y": 1}, "le", 4),
                                row({"x": 1}, "le", 2)])
        assert solver.solve({"x": 3, "y": 1}).value == 8
        assert solver.solve({"x": -1, "y": 1}).value == 4
        assert solver.solve({"x": 1, "y": -2}).value == 2
        assert solver.solve({"x": 3, "y": 1}).value == 8

    def test_presolve_eliminates_free_variables(self):
        bounds = {v: (None, None) for v in "xyz"}
        rows = [row({"x": 1, "y": -1}, "eq", 0),
                row({"y": 1, "z": 1}, "eq", 2),
                row({"x": 1}, "le", 1),
                row({"x": -1}, "le", 0),
                row({"z": -1}, "le", 0)]
        solver = SimplexSolver(rows, bounds)
        assert len(solver._elims) == 2
        out = solver.solve({"x": 1, "y": 1, "z": 1})
        assert out.value == 3  # x=y=t, z=2-t, total t+2 maxed at t=1
        assert out.witness["x"] == out.witness["y"] == 1
        assert out.witness["z"] == 1

    def test_presolve_detects_contradictory_equalities(self):
        bounds = {v: (None, None) for v in "xy"}
        rows = [row({"x": 1, "y": 1}, "eq", 1),
                row({"x": 1, "y": 1}, "eq", 2)]
        assert SimplexSolver(rows, bounds).solve({"x": 1}).status == \
            "infeasible"

    def test_presolve_skips_bounded_variables(self):
        # y has a sign constraint, so it must not be substituted away
        rows = [row({"x": 1, "y": 1}, "eq", -1), row({"x": -1}, "le", 0)]
        out = simplex_max(rows, {"x": 1}, {"x": (None, None)})
        assert out.status == "infeasible"

    def test_objective_on_eliminated_variable(self):
        bounds = {v: (None, None) for v in "xy"}
        rows = [row({"x": 1, "y": 1}, "eq", 5),
                row({"y": 1}, "le", 3), row({"y": -1}, "le", 0)]
        out = simplex_max(rows, {"x": 1}, bounds)
        assert out.value == 5
        assert out.witness == {"x": 5, "y": 0}


class TestWitnessIntegrity:
    def test_witness_satisfies_all_rows(self):
        rows = [row({"x": 2, "y": 3, "z": -1}, "le", 7),
                row({"x": 1, "y": -1}, "eq", 1),
                row({"y": 1, "z": 1}, "le", 4)]
        out = simplex_max(rows, {"x": 1, "y": 1, "z": 2})
        assert out.status == "optimal"
        for r in rows:
            lhs = sum(Fraction(c) * out.witness[v]
                      for v, c in r.coefficients.items())
            assert lhs == r.rhs if r.relation == "eq" else lhs <= r.rhs

    def test_outcome_uses_plain_fractions(self):
        out = simplex_max([row({"x": 3}, "le", 2)], {"x": 1})
        assert isinstance(out.value, Fraction)
        assert all(isinstance(v, Fraction) for v in out.witness.values())
        assert out.value == Fraction(2, 3)
