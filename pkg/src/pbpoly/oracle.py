"""Brute-force ground truth and the hull-verification harness.

The verifier certifies an extended formulation against exhaustive
enumeration: seeded random integer objectives must give identical exact
optima over the formulation (rational simplex) and over the enumerated
pseudo-Boolean set, every enumerated point must lift to an exactly
feasible assignment, and the 0/±1 discipline and size bounds must hold.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .core import NodeId, SignedEdge, SignedHypergraph
from .exactlp import SimplexSolver
from .formulation import (
    ExtendedFormulation,
    LinRow,
    edge_var,
    lift_binary_point,
    node_var,
)

ENUMERATION_LIMIT = 20


@dataclass(frozen=True)
class PBSPoint:
    """One binary point: node values plus the induced edge products."""

    values: dict

    def __getitem__(self, key):
        return self.values[key]


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of verify_hull: per-objective comparisons plus lift checks."""

    instance: str
    trials: int
    lp_vs_brute: tuple  # (trial index, lp value, brute value, equal) tuples
    lift_checked: int
    lift_ok: bool
    discipline_ok: bool
    bounds_ok: Optional[bool]
    failure: Optional[str]

    @property
    def all_pass(self) -> bool:
        return (self.failure is None
                and all(eq for _, _, _, eq in self.lp_vs_brute)
                and self.lift_ok and self.discipline_ok
                and self.bounds_ok is not False)


def enumerate_pbs(H: SignedHypergraph,
                  limit: int = ENUMERATION_LIMIT) -> list[PBSPoint]:
    """All 2^|V| points of the pseudo-Boolean set, in lexicographic node
    order of the assignments."""
    if len(H.nodes) > limit:
        raise ValueError(
            f"{len(H.nodes)} nodes exceed the enumeration limit {limit}")
    points = []
    for bits in itertools.product((0, 1), repeat=len(H.nodes)):
        assignment = dict(zip(H.nodes, bits))
        values: dict = dict(assignment)
        for s in H.edges:
            values[s] = s.evaluate(assignment)
        points.append(PBSPoint(values))
    return points


def brute_max(H: SignedHypergraph, c: Mapping,
              limit: int = ENUMERATION_LIMIT) -> Fraction:
    """Exact maximum of a linear objective over the enumerated set."""
    best = None
    for point in enumerate_pbs(H, limit):
        val = sum((Fraction(w) * point[k] for k, w in c.items()), Fraction(0))
        if best is None or val > best:
            best = val
    return best


# -- deterministic PRNG ------------------------------------------------------

class SplitMix64:
    """Tiny deterministic 64-bit PRNG (splitmix64), reproducible anywhere."""

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] via rejection-free modulo (the tiny
        bias is irrelevant here; determinism is what matters)."""
        return lo + self.next64() % (hi - lo + 1)


def random_objective(H: SignedHypergraph, rng: SplitMix64) -> dict:
    """Integer weights in [-10, 10] over nodes then edges, in sorted order."""
    c: dict = {}
    for v in H.nodes:
        c[v] = rng.randint(-10, 10)
    for s in H.sorted_edges():
        c[s] = rng.randint(-10, 10)
    return c


# -- verification ------------------------------------------------------------

def _objective_on_vars(c: Mapping) -> dict:
    out = {}
    for key, w in c.items():
        var = edge_var(key) if isinstance(key, SignedEdge) else node_var(key)
        out[var] = w
    return out


def verify_hull(H: SignedHypergraph, EF: ExtendedFormulation,
                trials: int = 50, seed: int = 0,
                limit: int = ENUMERATION_LIMIT) -> VerificationReport:
    """Certify that the formulation's projection is exactly the hull.

    Runs ``trials`` seeded integer objectives comparing the exact LP
    optimum with brute force, lifts every enumerated point and checks zero
    residuals, and re-checks the coefficient discipline and the build
    report's size bound.
    """
    failure = None
    discipline_ok = True
    for row in EF.rows:
        if row.rhs not in (-1, 0, 1) or any(
                coeff not in (-1, 1) for coeff in row.coefficients.values()):
            discipline_ok = False
            failure = "a row violates the 0/±1 coefficient discipline"
    bounds_ok = EF.report.bounds_ok
    if (EF.report.n_vars != len(EF.variables)
            or EF.report.n_rows != len(EF.rows)):
        failure = "report totals disagree with the formulation"

    points = enumerate_pbs(H, limit)
    lift_ok = True
    lift_checked = 0
    for point in points:
        try:
            assignment = lift_binary_point(EF, point.values)
        except ValueError as exc:
            lift_ok = False
            failure = f"lift failed: {exc}"
            break
        for row in EF.rows:
            lhs = sum(coeff * assignment[var]
                      for var, coeff in row.coefficients.items())
            if (lhs != row.rhs if row.relation == "eq" else lhs > row.rhs):
                lift_ok = False
                failure = (f"lift of {point.values} violates a "
                           f"{row.tag or row.relation} row")
                break
        if not lift_ok:
            break
        lift_checked += 1

    rng = SplitMix64(seed)
    # Every variable is left free: the row system alone must bound the
    # polytope, so implied nonnegativity is part of what gets certified.
    solver = SimplexSolver(EF.rows,
                           {v: (None, None) for v in EF.variables})
    comparisons = []
    for t in range(trials):
        c = random_objective(H, rng)
        outcome = solver.solve(_objective_on_vars(c))
        brute = brute_max(H, c, limit)
        if outcome.status != "optimal":
            comparisons.append((t, None, brute, False))
            failure = f"objective {t}: LP reported {outcome.status}"
            continue
        equal = outcome.value == brute
        comparisons.append((t, outcome.value, brute, equal))
        if not equal and failure is None:
            failure = (f"objective {t}: LP optimum {outcome.value} != "
                       f"brute-force optimum {brute} for c={c}")
    return VerificationReport(
        instance=repr(H), trials=trials, lp_vs_brute=tuple(comparisons),
        lift_checked=lift_checked, lift_ok=lift_ok,
        discipline_ok=discipline_ok, bounds_ok=bounds_ok, failure=failure)


# -- independent LP oracle (vertex enumeration) ------------------------------

def vertex_enumeration_max(rows: Sequence[LinRow], bounds: Mapping,
                           objective: Mapping) -> Optional[Fraction]:
    """Exact LP maximum by enumerating all basic feasible points.

    Intended as an independent check of the simplex solver on small boxed
    systems: every variable must carry finite bounds so the feasible region
    is a polytope. Returns None when infeasible.
    """
    variables = sorted({v for row in rows for v in row.coefficients}
                       | set(bounds), key=repr)
    n = len(variables)
    index = {v: i for i, v in enumerate(variables)}
    constraints = []  # (coeff vector, relation, rhs)
    for row in rows:
        vec = [Fraction(0)] * n
        for v, c in row.coefficients.items():
            vec[index[v]] = Fraction(c)
        constraints.append((vec, row.relation, Fraction(row.rhs)))
    for v in variables:
        lo, hi = bounds[v]
        unit = [Fraction(0)] * n
        unit[index[v]] = Fraction(1)
        constraints.append((list(unit), "ge", Fraction(lo)))
        constraints.append((list(unit), "le", Fraction(hi)))

    def feasible(x: list[Fraction]) -> bool:
        for vec, rel, rhs in constraints:
            lhs = sum(a * xi for a, xi in zip(vec, x))
            if rel == "eq" and lhs != rhs:
                return False
            if rel == "le" and lhs > rhs:
                return False
            if rel == "ge" and lhs < rhs:
                return False
        return True

    best = None
    obj_vec = [Fraction(0)] * n
    for v, w in objective.items():
        obj_vec[index[v]] = Fraction(w)
    for subset in itertools.combinations(range(len(constraints)), n):
        x = _solve_square([constraints[i][0] for i in subset],
                          [constraints[i][2] for i in subset])
        if x is None or not feasible(x):
            continue
        val = sum(a * xi for a, xi in zip(obj_vec, x))
        if best is None or val > best:
            best = val
    return best


def _solve_square(mat: Sequence[Sequence[Fraction]],
                  rhs: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Exact Gaussian elimination; None when singular."""
    n = len(rhs)
    A = [list(row) + [b] for row, b in zip(mat, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if A[r][col] != 0), None)
        if pivot is None:
            return None
        A[col], A[pivot] = A[pivot], A[col]
        inv = 1 / A[col][col]
        A[col] = [a * inv for a in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * p for a, p in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]
