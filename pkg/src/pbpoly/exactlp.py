"""Exact rational linear programming.

A sparse two-phase primal simplex over exact rationals. Pivot selection is
Dantzig's rule with a fallback to Bland's rule after an iteration cap, so
every solve terminates. :class:`SimplexSolver` keeps its tableau between
solves, which makes re-optimizing the same system under many objectives
cheap (feasibility phase runs once).

Arithmetic uses ``gmpy2.mpq`` when available and ``fractions.Fraction``
otherwise; all reported values are plain :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Mapping, Optional, Sequence

try:  # pragma: no cover - exercised implicitly by the chosen backend
    from gmpy2 import mpq as _R
except ImportError:  # pragma: no cover
    _R = Fraction

_ZERO = _R(0)
_ONE = _R(1)

# Degenerate pivots tolerated under Dantzig's rule before falling back to
# Bland's anti-cycling rule; Dantzig resumes once the objective improves.
_STALL_CAP = 60


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass(frozen=True)
class LpOutcome:
    """Result of one maximization: status plus exact value and witness."""

    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Optional[Fraction] = None
    witness: Optional[dict] = None


class _Unbounded(Exception):
    pass


class _Row:
    """Internal mutable row used between presolve and tableau assembly."""

    __slots__ = ("coefficients", "relation", "rhs")

    def __init__(self, coefficients: dict, relation: str, rhs):
        self.coefficients = coefficients
        self.relation = relation
        self.rhs = rhs


class SimplexSolver:
    """Reusable exact simplex over a fixed row system and variable bounds.

    ``rows`` are objects with ``coefficients`` (mapping variable -> number),
    ``relation`` ("eq" or "le") and ``rhs``. ``bounds`` maps a variable to
    ``(lo, hi)``; the default is ``(0, None)``, ``lo=None`` means free, and
    ``hi=None`` means unbounded above.
    """

    def __init__(self, rows: Sequence, bounds: Optional[Mapping] = None):
        bounds = dict(bounds or {})
        variables: list[Hashable] = []
        seen = set()
        for row in rows:
            for v in row.coefficients:
                if v not in seen:
                    seen.add(v)
                    variables.append(v)
        for v in bounds:
            if v not in seen:
                seen.add(v)
                variables.append(v)
        self.variables = variables
        self._infeasible_bounds = False

        # Presolve: substitute free variables out through equality rows.
        # Each elimination records var = const + sum(expr[u] * u) so the
        # witness (and any objective) can be mapped back exactly.
        self._elims: list[tuple[Hashable, dict, object]] = []
        rows = self._presolve(rows, bounds)
        eliminated = {v for v, _, _ in self._elims}
        variables = [v for v in variables if v not in eliminated]

        # Structural columns: shifted by lo, free variables split in two.
        self._offset: dict[Hashable, object] = {}
        self._cols: dict[Hashable, tuple[int, Optional[int]]] = {}
        upper_rows: list[tuple[int, object]] = []  # (column, hi - lo)
        ncols = 0
        for v in variables:
            lo, hi = bounds.get(v, (0, None))
            if lo is None:
                self._cols[v] = (ncols, ncols + 1)
                self._offset[v] = _ZERO
                ncols += 2
                if hi is not None:
                    raise ValueError("free variable with an upper bound "
                                     "is not supported")
            else:
                lo = _R(lo)
                self._cols[v] = (ncols, None)
                self._offset[v] = lo
                if hi is not None:
                    span = _R(hi) - lo
                    if span < 0:
                        self._infeasible_bounds = True
                    upper_rows.append((ncols, span))
                ncols += 1
        self._nstruct = ncols

        # Assemble A | rhs with nonnegative right-hand sides. Rows are kept
        # sparse (column -> value dicts) since the systems we solve rarely
        # exceed a handful of nonzeros per row.
        mat: list[dict] = []
        rhs: list = []
        rels: list[str] = []
        for row in rows:
            sparse: dict[int, object] = {}
            b = _R(row.rhs)
            for v, coeff in row.coefficients.items():
                c = _R(coeff)
                pos, neg = self._cols[v]
                sparse[pos] = sparse.get(pos, _ZERO) + c
                if neg is not None:
                    sparse[neg] = sparse.get(neg, _ZERO) - c
                b -= c * self._offset[v]
            if row.relation not in ("eq", "le"):
                raise ValueError(f"unknown relation {row.relation!r}")
            mat.append({j: a for j, a in sparse.items() if a != _ZERO})
            rhs.append(b)
            rels.append(row.relation)
        for col, span in upper_rows:
            mat.append({col: _ONE})
            rhs.append(span)
            rels.append("le")
        for i in range(len(mat)):
            if rhs[i] < 0:
                mat[i] = {j: -a for j, a in mat[i].items()}
                rhs[i] = -rhs[i]
                rels[i] = {"le": "ge", "ge": "le", "eq": "eq"}[rels[i]]

        # Slack / surplus / artificial columns.
        n_slack = sum(1 for r in rels if r != "eq")
        n_art = sum(1 for r in rels if r != "le")
        total = ncols + n_slack + n_art
        art_start = ncols + n_slack
        basis: list[int] = []
        s_at, a_at = ncols, art_start
        artificials: list[int] = []
        for i, rel in enumerate(rels):
            if rel == "le":
                mat[i][s_at] = _ONE
                basis.append(s_at)
                s_at += 1
            elif rel == "ge":
                mat[i][s_at] = -_ONE
                s_at += 1
                mat[i][a_at] = _ONE
                basis.append(a_at)
                artificials.append(a_at)
                a_at += 1
            else:
                mat[i][a_at] = _ONE
                basis.append(a_at)
                artificials.append(a_at)
                a_at += 1
        self._T = mat
        self._b = rhs
        self._basis = basis
        self._ncols = total
        self._allowed = total
        self._artificials = artificials
        # Unit columns of the initial basis, in row order: they carry the
        # implicit lexicographic perturbation used to break ratio-test ties
        # under heavy degeneracy.
        self._lex_cols = list(basis)
        self._phase1_done = False
        self._feasible = not self._infeasible_bounds

    def _presolve(self, rows: Sequence, bounds: Mapping) -> list:
        """Eliminate free variables through equality rows, exactly.

        Only variables with bounds ``(None, None)`` are eligible, so the
        substitution never hides a sign or box constraint. Returns the
        remaining rows; records eliminations on ``self._elims`` in order.
        """
        work: list[Optional[_Row]] = []
        occ: dict[Hashable, set[int]] = {}
        free = {v for v in self.variables
                if bounds.get(v, (0, None)) == (None, None)}
        for row in rows:
            if row.relation not in ("eq", "le"):
                raise ValueError(f"unknown relation {row.relation!r}")
            coeffs = {}
            for v, c in row.coefficients.items():
                c = _R(c)
                if c != _ZERO:
                    coeffs[v] = c
            idx = len(work)
            work.append(_Row(coeffs, row.relation, _R(row.rhs)))
            for v in coeffs:
                occ.setdefault(v, set()).add(idx)
        while True:
            pick = None
            for idx, row in enumerate(work):
                if row is None or row.relation != "eq":
                    continue
                if not row.coefficients:
                    if row.rhs != _ZERO:
                        self._infeasible_bounds = True
                        return []
                    work[idx] = None
                    continue
                for v in row.coefficients:
                    if v in free:
                        key = (len(occ[v]), len(row.coefficients))
                        if pick is None or key < pick[0]:
                            pick = (key, idx, v)
            if pick is None:
                break
            _, idx, v = pick
            row = work[idx]
            a = row.coefficients[v]
            expr = {u: -c / a for u, c in row.coefficients.items() if u != v}
            const = row.rhs / a
            self._elims.append((v, expr, const))
            free.discard(v)
            for u in row.coefficients:
                occ[u].discard(idx)
            work[idx] = None
            for j in list(occ.get(v, ())):
                other = work[j]
                c = other.coefficients.pop(v)
                occ[v].discard(j)
                for u, e in expr.items():
                    nv = other.coefficients.get(u, _ZERO) + c * e
                    if nv == _ZERO:
                        other.coefficients.pop(u, None)
                        occ[u].discard(j)
                    else:
                        other.coefficients[u] = nv
                        occ.setdefault(u, set()).add(j)
                other.rhs -= c * const
        out = []
        for row in work:
            if row is None:
                continue
            if not row.coefficients:
                if (row.rhs != _ZERO if row.relation == "eq"
                        else row.rhs < _ZERO):
                    self._infeasible_bounds = True
                    return []
                continue
            out.append(row)
        return out

    # -- tableau mechanics -------------------------------------------------

    def _pivot(self, r: int, p: int, obj: list) -> None:
        T, b = self._T, self._b
        piv = T[r][p]
        if piv != _ONE:
            inv = _ONE / piv
            T[r] = {j: a * inv for j, a in T[r].items()}
            b[r] *= inv
        row_r = T[r]
        items_r = list(row_r.items())
        for i in range(len(T)):
            if i == r:
                continue
            row_i = T[i]
            f = row_i.get(p)
            if f is None or f == _ZERO:
                continue
            for j, c in items_r:
                a = row_i.get(j, _ZERO) - f * c
                if a == _ZERO:
                    row_i.pop(j, None)
                else:
                    row_i[j] = a
            b[i] -= f * b[r]
        f = obj[p]
        if f != _ZERO:
            for j, c in items_r:
                obj[j] -= f * c
        self._basis[r] = p

    def _ratio_row(self, p: int, bland: bool) -> Optional[int]:
        T, b, basis = self._T, self._b, self._basis
        ties: list[int] = []
        best_ratio = None
        for i in range(len(T)):
            a = T[i].get(p)
            if a is not None and a > 0:
                ratio = b[i] / a
                if best_ratio is None or ratio < best_ratio:
                    ties = [i]
                    best_ratio = ratio
                elif ratio == best_ratio:
                    ties.append(i)
        if not ties:
            return None
        if len(ties) == 1:
            return ties[0]
        if bland:
            return min(ties, key=lambda i: basis[i])
        # Lexicographic tie-break: compare the candidate rows, scaled by
        # their pivot entries, along the initial unit columns.
        for col in self._lex_cols:
            best_val = None
            keep: list[int] = []
            for i in ties:
                val = T[i].get(col, _ZERO) / T[i][p]
                if best_val is None or val < best_val:
                    keep = [i]
                    best_val = val
                elif val == best_val:
                    keep.append(i)
            ties = keep
            if len(ties) == 1:
                return ties[0]
        return min(ties, key=lambda i: basis[i])

    def _optimize(self, obj: list, allowed: int) -> None:
        """Primal simplex to optimality on the current basis.

        ``obj`` holds reduced costs z_j - c_j (negative means improving) on
        columns 0..allowed-1. Raises :class:`_Unbounded` if no row limits
        an improving column.
        """
        stalled = 0
        while True:
            p = None
            bland = stalled >= _STALL_CAP
            if not bland:
                best = _ZERO
                for j in range(allowed):
                    if obj[j] < best:
                        best = obj[j]
                        p = j
            else:
                for j in range(allowed):
                    if obj[j] < 0:
                        p = j
                        break
            if p is None:
                return
            r = self._ratio_row(p, bland)
            if r is None:
                raise _Unbounded()
            # A zero ratio leaves the objective unchanged; a long run of
            # such pivots triggers Bland's rule, which cannot cycle, and
            # any strict improvement hands control back to Dantzig's rule
            # with the lexicographic tie-break.
            stalled = stalled + 1 if self._b[r] == _ZERO else 0
            self._pivot(r, p, obj)

    def _reduced_costs(self, cost: list) -> list:
        """z_j - c_j for the current basis under column costs ``cost``."""
        T, basis = self._T, self._basis
        obj = [-c for c in cost]
        for i, bi in enumerate(basis):
            cb = cost[bi]
            if cb != _ZERO:
                for j, a in T[i].items():
                    obj[j] += cb * a
        for bi in basis:
            obj[bi] = _ZERO
        return obj

    def _run_phase1(self) -> None:
        self._phase1_done = True
        if self._infeasible_bounds:
            self._feasible = False
            return
        if self._artificials:
            cost = [_ZERO] * self._ncols
            for a in self._artificials:
                cost[a] = -_ONE  # maximize -(sum of artificials)
            obj = self._reduced_costs(cost)
            self._optimize(obj, self._ncols)
            if any(self._b[i] != _ZERO and self._basis[i] in self._artificials
                   for i in range(len(self._T))):
                self._feasible = False
                return
            self._evict_artificials()
        self._feasible = True

    def _evict_artificials(self) -> None:
        art = set(self._artificials)
        drop_rows = []
        dummy = [_ZERO] * self._ncols
        for i in range(len(self._T)):
            if self._basis[i] not in art:
                continue
            p = next((j for j in sorted(self._T[i])
                      if j not in art and self._T[i][j] != _ZERO), None)
            if p is None:
                drop_rows.append(i)  # redundant equality
            else:
                self._pivot(i, p, dummy)
        for i in reversed(drop_rows):
            del self._T[i], self._b[i], self._basis[i]
        # Artificial columns stay in the tableau as lexicographic reference
        # columns but are excluded from pricing, so they never re-enter.
        self._allowed = self._ncols - len(self._artificials)
        self._artificials = []

    # -- public API ----------------------------------------------------------

    def solve(self, objective: Mapping) -> LpOutcome:
        """Maximize the objective over the system; exact witness included."""
        known = set(self.variables)
        for v in objective:
            if v not in known:
                raise ValueError(f"objective variable {v!r} not in system")
        if not self._phase1_done:
            self._run_phase1()
        if not self._feasible:
            return LpOutcome("infeasible")
        # Rewrite the objective over the surviving variables. Eliminations
        # were recorded in order, and each removes its variable from every
        # later expression, so one forward pass suffices.
        reduced = {v: _R(w) for v, w in objective.items()}
        const = _ZERO
        for v, expr, c0 in self._elims:
            w = reduced.pop(v, None)
            if w is not None and w != _ZERO:
                const += w * c0
                for u, e in expr.items():
                    reduced[u] = reduced.get(u, _ZERO) + w * e
        cost = [_ZERO] * self._ncols
        for v, w in reduced.items():
            pos, neg = self._cols[v]
            cost[pos] += w
            if neg is not None:
                cost[neg] -= w
            const += w * self._offset[v]
        try:
            self._optimize(self._reduced_costs(cost), self._allowed)
        except _Unbounded:
            return LpOutcome("unbounded")
        col_val = {bi: self._b[i] for i, bi in enumerate(self._basis)}
        values = {}
        for v, (pos, neg) in self._cols.items():
            val = self._offset[v] + col_val.get(pos, _ZERO)
            if neg is not None:
                val -= col_val.get(neg, _ZERO)
            values[v] = val
        for v, expr, c0 in reversed(self._elims):
            values[v] = sum((e * values[u] for u, e in expr.items()), c0)
        witness = {v: _to_fraction(values[v]) for v in self.variables}
        value = sum((cost[bi] * self._b[i]
                     for i, bi in enumerate(self._basis)), const)
        value = _to_fraction(value)
        check = sum((Fraction(int(_R(w).numerator), int(_R(w).denominator))
                     * witness[v] for v, w in objective.items()), Fraction(0))
        if check != value:
            raise AssertionError("objective value does not match witness")
        return LpOutcome("optimal", value, witness)


def simplex_max(rows: Sequence, objective: Mapping,
                bounds: Optional[Mapping] = None) -> LpOutcome:
    """One-shot exact maximization; the witness is re-verified on every row."""
    solver = SimplexSolver(rows, bounds)
    outcome = solver.solve(objective)
    if outcome.status == "optimal":
        _verify_witness(rows, bounds or {}, outcome.witness)
    return outcome


def _verify_witness(rows: Sequence, bounds: Mapping, witness: Mapping) -> None:
    for row in rows:
        lhs = sum((Fraction(coeff) * witness[v]
                   for v, coeff in row.coefficients.items()), Fraction(0))
        rhs = Fraction(row.rhs)
        if row.relation == "eq" and lhs != rhs:
            raise AssertionError("witness violates an equality row")
        if row.relation == "le" and lhs > rhs:
            raise AssertionError("witness violates an inequality row")
    for v, (lo, hi) in bounds.items():
        val = witness[v]
        if lo is not None and val < Fraction(lo):
            raise AssertionError("witness violates a lower bound")
        if hi is not None and val > Fraction(hi):
            raise AssertionError("witness violates an upper bound")
    for v, val in witness.items():
        if v not in bounds and val < 0:
            raise AssertionError("witness violates default nonnegativity")
