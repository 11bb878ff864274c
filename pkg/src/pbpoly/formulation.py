"""Linear-system builders for pseudo-Boolean polytopes.

The central objects are extended formulations: linear systems in node
variables, signed-edge variables, and auxiliary variables whose projection
onto the node and edge variables of the input signed hypergraph equals the
convex hull of its pseudo-Boolean set.

Construction routes:

* ``nested_system`` — closed-form description for nested signed hypergraphs.
* ``pointed_formulation`` — disjunctive (union-of-faces) formulation for a
  hypergraph pointed at a leaf node.
* ``inflate`` — replaces a signed edge by all sign extensions to a superset,
  linked by one equality.
* ``rid_build`` — the recursive inflate-and-decompose driver tying the
  above together under several strategies.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .acyclicity import (
    CapExceeded,
    _find_alpha_leaf,
    beta_cycle_support_components,
    beta_elimination_order,
    enumerate_beta_cycles,
    find_beta_leaf,
    gap,
)
from .core import (
    Hypergraph,
    NodeId,
    SignedEdge,
    SignedHypergraph,
    _edge_key,
    rank,
    remove_node,
    underlying_hypergraph,
)


class StrategyInapplicable(Exception):
    """The requested build strategy cannot handle this instance."""


@dataclass(frozen=True)
class VarId:
    """Identity of one formulation variable.

    ``kind`` is ``"node"`` (key: node id), ``"edge"`` (key: signed edge;
    value semantics: the product of the edge's literals), or ``"copy"``
    (key: ``(pivot node, base VarId)``; value semantics: pivot value times
    the base variable's value).
    """

    kind: str
    key: object

    def __post_init__(self) -> None:
        if self.kind not in ("node", "edge", "copy"):
            raise ValueError(f"unknown variable kind {self.kind!r}")

    def __repr__(self) -> str:
        if self.kind == "node":
            return f"VarId(node {self.key})"
        if self.kind == "edge":
            return f"VarId(edge {self.key.compact()})"
        pivot, base = self.key
        return f"VarId(copy {pivot}*{base!r})"


def node_var(v: NodeId) -> VarId:
    return VarId("node", v)


def edge_var(s: SignedEdge) -> VarId:
    return VarId("edge", s)


def copy_var(pivot: NodeId, base: VarId) -> VarId:
    return VarId("copy", (pivot, base))


@dataclass(frozen=True)
class LinRow:
    """One linear row with all coefficients and right-hand side in {-1,0,+1}."""

    coefficients: dict[VarId, int]
    relation: str  # "eq" | "le"
    rhs: int
    tag: str = ""

    def __post_init__(self) -> None:
        if self.relation not in ("eq", "le"):
            raise ValueError(f"unknown relation {self.relation!r}")
        coeffs = {v: c for v, c in self.coefficients.items() if c != 0}
        if not coeffs:
            raise ValueError("row needs at least one nonzero coefficient")
        if any(c not in (-1, 1) for c in coeffs.values()):
            raise ValueError("coefficients must be -1, 0 or +1")
        if self.rhs not in (-1, 0, 1):
            raise ValueError("right-hand side must be -1, 0 or +1")
        object.__setattr__(self, "coefficients", coeffs)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LinRow)
                and self.coefficients == other.coefficients
                and self.relation == other.relation
                and self.rhs == other.rhs
                and self.tag == other.tag)


@dataclass(frozen=True)
class BuildReport:
    """Step log, totals, and the size-bound check of one build."""

    strategy: str
    steps: tuple[str, ...]
    n_vars: int
    n_rows: int
    bound_vars: Optional[int] = None
    bound_rows: Optional[int] = None

    @property
    def bounds_ok(self) -> Optional[bool]:
        if self.bound_vars is None:
            return None
        return self.n_vars <= self.bound_vars and self.n_rows <= self.bound_rows


@dataclass
class ExtendedFormulation:
    """A linear system whose projection onto the input's node and edge
    variables equals the pseudo-Boolean polytope of the input."""

    H: SignedHypergraph
    variables: tuple[VarId, ...]
    rows: tuple[LinRow, ...]
    projection: tuple[VarId, ...]
    report: BuildReport

    def var_names(self) -> dict[VarId, str]:
        """Deterministic names: x_<node>, z_e<i> for input edges (in edge
        order), aux_<n> for everything else (in creation order)."""
        names: dict[VarId, str] = {}
        edge_index = {s: i for i, s in enumerate(self.H.sorted_edges())}
        aux = 0
        for var in self.variables:
            if var.kind == "node" and var.key in self.H.nodes:
                names[var] = f"x_{var.key}"
            elif var.kind == "edge" and var.key in edge_index:
                names[var] = f"z_e{edge_index[var.key]}"
            else:
                names[var] = f"aux_{aux}"
                aux += 1
        return names

    # -- export ------------------------------------------------------------

    def to_lp_text(self) -> str:
        names = self.var_names()
        lines = ["\\ extended formulation of a pseudo-Boolean polytope",
                 "Maximize", " obj: 0", "Subject To"]
        for i, row in enumerate(self.rows):
            terms = []
            for var in self.variables:
                c = row.coefficients.get(var)
                if c is None:
                    continue
                sign = "+" if c > 0 else "-"
                terms.append(f"{sign} {names[var]}")
            body = " ".join(terms).lstrip("+ ")
            rel = "=" if row.relation == "eq" else "<="
            lines.append(f" r{i}: {body} {rel} {row.rhs}")
        lines.append("Bounds")
        for var in self.variables:
            lines.append(f" 0 <= {names[var]}")
        lines.append("End")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        names = self.var_names()
        return {
            "instance": {
                "nodes": list(self.H.nodes),
                "edges": [dict(s.items) for s in self.H.sorted_edges()],
            },
            "variables": [_var_to_json(v, names) for v in self.variables],
            "rows": [
                {
                    "coefficients": {
                        names[v]: c
                        for v, c in sorted(
                            row.coefficients.items(),
                            key=lambda item: names[item[0]],
                        )
                    },
                    "relation": row.relation,
                    "rhs": row.rhs,
                    "tag": row.tag,
                }
                for row in self.rows
            ],
            "projection": [names[v] for v in self.projection],
            "report": {
                "strategy": self.report.strategy,
                "steps": list(self.report.steps),
                "n_vars": self.report.n_vars,
                "n_rows": self.report.n_rows,
                "bound_vars": self.report.bound_vars,
                "bound_rows": self.report.bound_rows,
                "bounds_ok": self.report.bounds_ok,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @staticmethod
    def from_json_dict(data: dict) -> "ExtendedFormulation":
        H = SignedHypergraph.make(
            data["instance"]["nodes"],
            [SignedEdge.make(raw) for raw in data["instance"]["edges"]],
        )
        by_name: dict[str, VarId] = {}
        variables = []
        for raw in data["variables"]:
            var = _var_from_json(raw, by_name)
            by_name[raw["name"]] = var
            variables.append(var)
        rows = tuple(
            LinRow({by_name[n]: c for n, c in raw["coefficients"].items()},
                   raw["relation"], raw["rhs"], raw["tag"])
            for raw in data["rows"]
        )
        rep = data["report"]
        report = BuildReport(rep["strategy"], tuple(rep["steps"]),
                             rep["n_vars"], rep["n_rows"],
                             rep["bound_vars"], rep["bound_rows"])
        return ExtendedFormulation(
            H, tuple(variables), rows,
            tuple(by_name[n] for n in data["projection"]), report)

    @staticmethod
    def from_json(text: str) -> "ExtendedFormulation":
        return ExtendedFormulation.from_json_dict(json.loads(text))


def _var_to_json(var: VarId, names: Mapping[VarId, str]) -> dict:
    out: dict = {"name": names[var], "kind": var.kind}
    if var.kind == "node":
        out["node"] = var.key
    elif var.kind == "edge":
        out["edge"] = dict(var.key.items)
    else:
        pivot, base = var.key
        out["pivot"] = pivot
        out["base"] = names[base]
    return out


def _var_from_json(raw: dict, by_name: Mapping[str, VarId]) -> VarId:
    if raw["kind"] == "node":
        return node_var(raw["node"])
    if raw["kind"] == "edge":
        return edge_var(SignedEdge.make(raw["edge"]))
    return copy_var(raw["pivot"], by_name[raw["base"]])


# ---------------------------------------------------------------------------
# Nested hypergraphs
# ---------------------------------------------------------------------------

def nested_completion(chain: Iterable[SignedEdge]) -> SignedHypergraph:
    """Close a totally-ordered edge family into a nested signed hypergraph.

    The node order is induced by the chain: the two nodes of the smallest
    edge in lexicographic order, then each chain step's new nodes in
    lexicographic order. The closure adds, for every edge, the sign-flip of
    its last node and its truncation by that node, and always completes the
    bottom level to the full quadruple of sign patterns.
    """
    edges = sorted(set(chain))
    if not edges:
        raise ValueError("cannot complete an empty chain")
    by_size = sorted(edges, key=lambda s: (len(s), s.items))
    for a, b in itertools.pairwise(by_size):
        if not a.underlying <= b.underlying:
            raise ValueError(
                f"edges {a.compact()} and {b.compact()} are not nested")
    order: list[NodeId] = []
    seen: set[NodeId] = set()
    for s in by_size:
        for v in s.nodes:
            if v not in seen:
                seen.add(v)
                order.append(v)
    position = {v: i for i, v in enumerate(order)}

    closed: set[SignedEdge] = set(edges)
    frontier = list(edges)
    while frontier:
        s = frontier.pop()
        last = max(s.nodes, key=position.__getitem__)
        for t in (s.flip(last),) + ((s.restrict(last),) if len(s) > 2 else ()):
            if t not in closed:
                closed.add(t)
                frontier.append(t)
    v1, v2 = order[0], order[1]
    for signs in itertools.product((1, -1), repeat=2):
        closed.add(SignedEdge.make({v1: signs[0], v2: signs[1]}))
    return SignedHypergraph.make(order, closed)


def nested_node_order(H: SignedHypergraph) -> list[NodeId]:
    """Recover v_1..v_n of a nested hypergraph; raises if not nested.

    The underlying edges must be exactly the prefixes {v_1..v_{k+1}} of one
    node order; within the smallest edge v_1 < v_2 lexicographically.
    """
    underlying = sorted({s.underlying for s in H.edges}, key=_edge_key)
    if not underlying:
        raise ValueError("a nested hypergraph needs edges")
    expected_sizes = list(range(2, len(H.nodes) + 1))
    if [len(e) for e in underlying] != expected_sizes:
        raise ValueError("underlying edges must be one prefix chain "
                         "covering every node")
    order = sorted(underlying[0])
    for prev, cur in itertools.pairwise(underlying):
        if not prev < cur:
            raise ValueError("underlying edges do not form a chain")
        order.extend(sorted(cur - prev))
    if set(order) != set(H.nodes):
        raise ValueError("chain does not cover the node set")
    position = {v: i for i, v in enumerate(order)}
    for s in H.edges:
        last = max(s.nodes, key=position.__getitem__)
        if s.flip(last) not in H.edges:
            raise ValueError(f"missing sign-flip companion of {s.compact()}")
        if len(s) > 2 and s.restrict(last) not in H.edges:
            raise ValueError(f"missing truncation of {s.compact()}")
    level1 = [s for s in H.edges if len(s) == 2]
    if len(level1) != 4:
        raise ValueError("bottom level must be the full sign quadruple")
    return order


def _nested_rows(H: SignedHypergraph, order: Sequence[NodeId]) -> list[LinRow]:
    """The closed-form hull rows of a nested hypergraph (over VarIds)."""
    position = {v: i for i, v in enumerate(order)}
    levels: dict[int, list[SignedEdge]] = {}
    for s in H.edges:
        levels.setdefault(len(s) - 1, []).append(s)
    rows: list[LinRow] = []
    n = len(order)
    # Equalities tying each level to the one below via sign-flip pairs.
    for k in range(2, n):
        for s in sorted(levels[k]):
            last = order[k]
            if s.sign(last) != 1:
                continue
            rows.append(LinRow(
                {edge_var(s): 1, edge_var(s.flip(last)): 1,
                 edge_var(s.restrict(last)): -1},
                "eq", 0, "nested-eq"))
    for s in sorted(H.edges):
        rows.append(LinRow({edge_var(s): -1}, "le", 0, "nonneg"))
    for k in range(2, n):
        last = order[k]
        pos = {edge_var(s): 1 for s in sorted(levels[k]) if s.sign(last) == 1}
        pos[node_var(last)] = -1
        rows.append(LinRow(pos, "le", 0, "pos-level"))
        neg = {edge_var(s): 1 for s in sorted(levels[k]) if s.sign(last) == -1}
        neg[node_var(last)] = 1
        rows.append(LinRow(neg, "le", 1, "neg-level"))
    v1, v2 = order[0], order[1]
    quad = {(s.sign(v1), s.sign(v2)): s for s in levels[1]}
    q1, q2 = quad[(1, 1)], quad[(1, -1)]
    q3, q4 = quad[(-1, 1)], quad[(-1, -1)]
    rows.append(LinRow({edge_var(q1): 1, edge_var(q2): 1, node_var(v1): -1},
                       "eq", 0, "base"))
    rows.append(LinRow({edge_var(q1): 1, edge_var(q3): 1, node_var(v2): -1},
                       "eq", 0, "base"))
    rows.append(LinRow({edge_var(q3): 1, edge_var(q4): 1, node_var(v1): 1},
                       "eq", 1, "base"))
    return rows


# ---------------------------------------------------------------------------
# Builder plumbing
# ---------------------------------------------------------------------------

class _Builder:
    def __init__(self, H: SignedHypergraph):
        self.H = H
        self._vars: dict[VarId, None] = {}
        self.rows: list[LinRow] = []
        self._row_seen: set = set()
        self.steps: list[str] = []

    def use(self, var: VarId) -> VarId:
        if var not in self._vars:
            if var.kind == "copy":
                self.use(var.key[1])
            self._vars[var] = None
        return var

    def add_row(self, row: LinRow) -> None:
        for var in row.coefficients:
            self.use(var)
        key = (tuple(sorted(((repr(v), c) for v, c in
                             row.coefficients.items()))),
               row.relation, row.rhs)
        if key in self._row_seen:
            return
        self._row_seen.add(key)
        self.rows.append(row)

    def add_node_bounds(self, v: NodeId, tag: str = "node-bound") -> None:
        self.add_row(LinRow({node_var(v): -1}, "le", 0, tag))
        self.add_row(LinRow({node_var(v): 1}, "le", 1, tag))

    def finish(self, strategy: str, bound_vars: Optional[int] = None,
               bound_rows: Optional[int] = None) -> ExtendedFormulation:
        for v in self.H.nodes:
            self.use(node_var(v))
        for s in self.H.sorted_edges():
            self.use(edge_var(s))
        projection = tuple([node_var(v) for v in self.H.nodes]
                           + [edge_var(s) for s in self.H.sorted_edges()])
        report = BuildReport(strategy, tuple(self.steps),
                             len(self._vars), len(self.rows),
                             bound_vars, bound_rows)
        return ExtendedFormulation(self.H, tuple(self._vars), tuple(self.rows),
                                   projection, report)


def _emit_nested_block(b: _Builder, nested: SignedHypergraph) -> None:
    order = nested_node_order(nested)
    rows = _nested_rows(nested, order)
    for row in rows:
        b.add_row(row)
    b.steps.append(
        f"nested block on {len(order)} nodes, {len(nested.edges)} edges, "
        f"{len(rows)} rows")


def nested_system(H: SignedHypergraph) -> ExtendedFormulation:
    """Closed-form hull description of a nested signed hypergraph."""
    order = nested_node_order(H)
    b = _Builder(H)
    _emit_nested_block(b, H)
    n, m = len(H.nodes), len(H.edges)
    return b.finish("nested", bound_vars=n + m,
                    bound_rows=(m // 2 + 1) + (m + 2 * n - 4))


# ---------------------------------------------------------------------------
# Pointed formulation
# ---------------------------------------------------------------------------

def _check_pointed(H: SignedHypergraph, v: NodeId) -> list[SignedEdge]:
    if v not in H.nodes:
        raise ValueError(f"unknown node {v!r}")
    incident = H.incident(v)
    if not incident:
        raise ValueError(f"node {v!r} has no incident edges")
    under = sorted((s.underlying for s in incident), key=len)
    for a, bb in itertools.pairwise(under):
        if not a <= bb:
            raise ValueError(f"incident edges of {v!r} are not a chain")
    if under[-1] != frozenset(H.nodes):
        raise ValueError("the largest incident edge must cover the node set")
    truncations = {SignedEdge(s.minus(v)) for s in incident if len(s) >= 3}
    rest = set(H.edges) - set(incident)
    if rest != truncations:
        raise ValueError("edges must be the incident edges of the point "
                         "plus exactly their truncations")
    return incident


def _emit_pointed_block(b: _Builder, H_block: SignedHypergraph,
                        v: NodeId) -> None:
    incident = _check_pointed(H_block, v)
    if len(H_block.nodes) == 2:
        # All edges are parallel on the node pair: the quadruple's
        # closed-form system describes the hull directly.
        _emit_nested_block(b, nested_completion(incident))
        return
    truncations = sorted({SignedEdge(s.minus(v)) for s in incident
                          if len(s) >= 3})
    completion = nested_completion(truncations)
    order = nested_node_order(completion)
    xv = node_var(v)
    for row in _nested_rows(completion, order):
        one = {copy_var(v, w): c for w, c in row.coefficients.items()}
        if row.rhs != 0:
            one[xv] = -row.rhs
        b.add_row(LinRow(one, row.relation, 0, f"copy1-{row.tag}"))
        zero = dict(row.coefficients)
        for w, c in row.coefficients.items():
            zero[copy_var(v, w)] = -c
        if row.rhs != 0:
            zero[xv] = row.rhs
        b.add_row(LinRow(zero, row.relation, row.rhs, f"copy0-{row.tag}"))
    for s in sorted(incident):
        items = s.minus(v)
        if len(items) >= 2:
            p = SignedEdge(items)
            yp = copy_var(v, edge_var(p))
            if s.sign(v) == 1:
                b.add_row(LinRow({edge_var(s): 1, yp: -1}, "eq", 0, "face"))
            else:
                b.add_row(LinRow({edge_var(s): 1, edge_var(p): -1, yp: 1},
                                 "eq", 0, "face"))
        else:
            (u, eps), = items
            yu = copy_var(v, node_var(u))
            if s.sign(v) == 1 and eps == 1:
                b.add_row(LinRow({edge_var(s): 1, yu: -1}, "eq", 0, "face"))
            elif s.sign(v) == 1:
                b.add_row(LinRow({edge_var(s): 1, xv: -1, yu: 1},
                                 "eq", 0, "face"))
            elif eps == 1:
                b.add_row(LinRow({edge_var(s): 1, node_var(u): -1, yu: 1},
                                 "eq", 0, "face"))
            else:
                b.add_row(LinRow({edge_var(s): 1, node_var(u): 1, xv: 1,
                                  yu: -1}, "eq", 1, "face"))
    b.add_node_bounds(v, "pivot-bound")
    b.steps.append(
        f"pointed block at {v} on {len(H_block.nodes)} nodes, "
        f"{len(incident)} incident edges, completion {len(completion.edges)}")


def pointed_formulation(H: SignedHypergraph, v: NodeId) -> ExtendedFormulation:
    """Extended formulation for a hypergraph pointed at ``v``.

    The hull is the convex union of the two faces fixing the point's value,
    written with one copy variable per face-1 variable after eliminating
    the union multipliers.
    """
    b = _Builder(H)
    _emit_pointed_block(b, H, v)
    n, m = len(H.nodes), len(H.edges)
    return b.finish("pointed", bound_vars=2 * n * (m + 1),
                    bound_rows=4 * (m * (n - 2) + n))


# ---------------------------------------------------------------------------
# Inflation
# ---------------------------------------------------------------------------

def inflation_members(s: SignedEdge, e: Iterable[NodeId]) -> list[SignedEdge]:
    """All sign extensions of ``s`` to the strictly larger node set ``e``."""
    e = frozenset(e)
    if not s.underlying < e:
        raise ValueError("inflation target must strictly contain the edge")
    extra = sorted(e - s.underlying)
    members = []
    for signs in itertools.product((1, -1), repeat=len(extra)):
        t = s
        for u, sign in zip(extra, signs):
            t = t.extend(u, sign)
        members.append(t)
    return sorted(members)


def inflate(H: SignedHypergraph, s: SignedEdge,
            e: Iterable[NodeId]) -> tuple[SignedHypergraph, list[LinRow]]:
    """Replace ``s`` by its sign extensions to ``e``; returns the new
    hypergraph and the single link equality tying the old variable to the
    sum of the new ones."""
    if s not in H.edges:
        raise ValueError(f"edge {s.compact()} not in hypergraph")
    e = frozenset(e)
    if not e <= set(H.nodes):
        raise ValueError("inflation target references unknown nodes")
    members = inflation_members(s, e)
    coeffs: dict[VarId, int] = {edge_var(s): 1}
    for t in members:
        coeffs[edge_var(t)] = -1
    link = LinRow(coeffs, "eq", 0, "link")
    new_edges = (set(H.edges) - {s}) | set(members)
    return SignedHypergraph.make(H.nodes, new_edges), [link]


def augment_with_projections(H: SignedHypergraph,
                             v: NodeId) -> SignedHypergraph:
    """Add the truncations by ``v`` of its incident edges (sizes >= 3).

    Requires ``v`` to be a leaf whose incident edges form an inclusion
    chain, which is what makes the subsequent decomposition valid.
    """
    G = underlying_hypergraph(H)
    incident = G.incident(v)
    for a, bb in itertools.pairwise(sorted(incident, key=len)):
        if not a <= bb:
            raise ValueError(f"incident edges of {v!r} are not a chain")
    extra = {SignedEdge(s.minus(v)) for s in H.incident(v) if len(s) >= 3}
    return SignedHypergraph.make(H.nodes, set(H.edges) | extra)


# ---------------------------------------------------------------------------
# RID driver
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Strategy:
    """Build strategy and its caps.

    Kinds: auto, beta, alpha, inflate_full, gap_maximal, gap_cycles,
    split_cor4. ``gap_max`` caps any gap exploited by inflation,
    ``cycle_cap`` caps cycle enumeration, ``blowup_cap`` caps the number of
    edges any inflation plan may create, and ``split_set`` optionally fixes
    the small target of split_cor4.
    """

    kind: str = "auto"
    gap_max: int = 12
    cycle_cap: int = 10_000
    blowup_cap: int = 10 ** 6
    split_set: Optional[frozenset] = None

    KINDS = ("auto", "beta", "alpha", "inflate_full", "gap_maximal",
             "gap_cycles", "split_cor4")

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown strategy {self.kind!r}")
        if self.gap_max < 0 or self.cycle_cap <= 0 or self.blowup_cap <= 0:
            raise ValueError("caps must be positive")


def _beta_path(b: _Builder, H_cur: SignedHypergraph) -> None:
    """Peel chain-incidence leaves, one pointed block per leaf."""
    while H_cur.nodes:
        G = underlying_hypergraph(H_cur)
        v = find_beta_leaf(G)
        if v is None:
            raise StrategyInapplicable(
                "the underlying hypergraph has no chain-incidence leaf "
                "(it contains a cycle)")
        incident = H_cur.incident(v)
        if not incident:
            b.add_node_bounds(v)
            b.steps.append(f"isolated node {v}")
            H_cur = remove_node(H_cur, v)
            continue
        top = max(incident, key=len)
        V1 = top.underlying
        P_v = {SignedEdge(s.minus(v)) for s in incident if len(s) >= 3}
        block = SignedHypergraph.make(V1, set(incident) | P_v)
        _emit_pointed_block(b, block, v)
        H_cur = remove_node(H_cur, v)


def _inflate_into(b: _Builder, H_cur: SignedHypergraph,
                  plan: Mapping[SignedEdge, frozenset]) -> SignedHypergraph:
    """Apply an inflation plan edge by edge, emitting the link rows."""
    for s in sorted(plan):
        H_cur, links = inflate(H_cur, s, plan[s])
        for row in links:
            b.add_row(row)
    if plan:
        total = sum(2 ** (len(e) - len(s)) for s, e in plan.items())
        b.steps.append(f"inflated {len(plan)} edges into {total} members")
    return H_cur


def _check_blowup(plan: Mapping[SignedEdge, frozenset], strategy: Strategy,
                  what: str) -> None:
    for s, e in plan.items():
        if len(e) - len(s) > strategy.gap_max:
            raise StrategyInapplicable(
                f"{what}: inflating {s.compact()} spans a gap of "
                f"{len(e) - len(s)} > gap cap {strategy.gap_max}")
    total = sum(2 ** (len(e) - len(s)) for s, e in plan.items())
    if total > strategy.blowup_cap:
        raise StrategyInapplicable(
            f"{what}: inflation would create {total} edges "
            f"> cap {strategy.blowup_cap}")


def _nested_chain_path(b: _Builder, H_cur: SignedHypergraph) -> None:
    """Finish a build whose current edges are totally ordered by inclusion."""
    covered: set[NodeId] = set()
    if H_cur.edges:
        completion = nested_completion(H_cur.sorted_edges())
        _emit_nested_block(b, completion)
        covered = set(completion.nodes)
    for v in H_cur.nodes:
        if v not in covered:
            b.add_node_bounds(v)
            b.steps.append(f"isolated node {v}")


def _build_beta(b: _Builder, H: SignedHypergraph,
                strategy: Strategy) -> tuple[Optional[int], Optional[int]]:
    _beta_path(b, H)
    if not H.edges:
        return None, None
    r, n, m = rank(H), len(H.nodes), len(H.edges)
    return 2 * r * (2 * m + 1) * n, 4 * r * (2 * m + 1) * n


def _build_alpha(b: _Builder, H: SignedHypergraph,
                 strategy: Strategy) -> tuple[Optional[int], Optional[int]]:
    r, n = rank(H), len(H.nodes)
    H_cur = H
    while H_cur.nodes:
        G = underlying_hypergraph(H_cur)
        found = _find_alpha_leaf(G)
        if found is None:
            raise StrategyInapplicable(
                "no node's incident edges have a maximum element "
                "(the hypergraph is not alpha-acyclic)")
        v, witness = found
        if witness is None:
            b.add_node_bounds(v)
            b.steps.append(f"isolated node {v}")
            H_cur = remove_node(H_cur, v)
            continue
        plan = {s: witness for s in H_cur.incident(v)
                if s.underlying < witness}
        _check_blowup(plan, strategy, "alpha step")
        H_cur = _inflate_into(b, H_cur, plan)
        parallel = [s for s in H_cur.incident(v)]
        truncations = {SignedEdge(s.minus(v)) for s in parallel
                       if len(s) >= 3}
        completion = nested_completion(set(parallel) | truncations)
        _emit_nested_block(b, completion)
        b.steps.append(f"parallel block at {v} on {len(witness)} nodes")
        H_cur = remove_node(H_cur, v)
    if not H.edges:
        return None, None
    bound_vars = (2 * 3 ** (r - 1) + (r - 2) * (2 ** r + 1)) * n
    bound_rows = (2 * 3 ** (r - 1) + 2 * (r - 1) * (2 ** r + 1)) * n
    return bound_vars, bound_rows


def _build_inflate_full(b: _Builder, H: SignedHypergraph,
                        strategy: Strategy) -> tuple[Optional[int],
                                                     Optional[int]]:
    if not H.edges:
        _nested_chain_path(b, H)
        return None, None
    V = frozenset(H.nodes)
    plan = {s: V for s in H.edges if s.underlying < V}
    _check_blowup(plan, strategy, "full inflation")
    H_cur = _inflate_into(b, H, plan)
    _nested_chain_path(b, H_cur)
    k = len(H.nodes) - min(len(s) for s in H.edges)
    n, m = len(H.nodes), len(H.edges)
    bound_vars = 2 ** (k + 1) * m * (n - 1) + n + m
    bound_rows = 2 ** (k + 2) * m * (n - 1) + 2 * n + m
    return bound_vars, bound_rows


def _gap_bounds(H: SignedHypergraph, k: int) -> tuple[int, int]:
    r, n, m = rank(H), len(H.nodes), len(H.edges)
    core = 2 ** (k + 1) * m + 1
    return 2 * r * n * core + m, 4 * r * n * core + m


def _build_gap_maximal(b: _Builder, H: SignedHypergraph,
                       strategy: Strategy) -> tuple[Optional[int],
                                                    Optional[int]]:
    if not H.edges:
        _beta_path(b, H)
        return None, None
    underlyings = {s.underlying for s in H.edges}
    maximal = {e for e in underlyings
               if not any(e < f for f in underlyings)}
    plan: dict[SignedEdge, frozenset] = {}
    worst = 0
    for s in H.edges:
        if s.underlying in maximal:
            continue
        candidates = sorted((f for f in maximal if s.underlying < f),
                            key=_edge_key)
        target = candidates[0]
        plan[s] = target
        worst = max(worst, len(target) - len(s))
    skeleton = Hypergraph(H.nodes, frozenset(maximal))
    if not beta_elimination_order(skeleton).complete:
        raise StrategyInapplicable(
            "the maximal-edge hypergraph still contains a cycle")
    _check_blowup(plan, strategy, "maximal-edge inflation")
    H_cur = _inflate_into(b, H, plan)
    _beta_path(b, H_cur)
    return _gap_bounds(H, worst)


def _build_gap_cycles(b: _Builder, H: SignedHypergraph,
                      strategy: Strategy) -> tuple[Optional[int],
                                                   Optional[int]]:
    G = underlying_hypergraph(H)
    comps = beta_cycle_support_components(G, strategy.cycle_cap)
    if not comps:
        return _build_beta(b, H, strategy)
    cycles = enumerate_beta_cycles(G, strategy.cycle_cap)
    worst = 0
    for nodes, edges in comps:
        report = gap(edges)
        if report.gap > strategy.gap_max:
            raise StrategyInapplicable(
                f"cycle component on {len(nodes)} nodes has gap "
                f"{report.gap} > cap {strategy.gap_max}")
        worst = max(worst, report.gap)

    def full_plan() -> dict[SignedEdge, frozenset]:
        plan = {}
        for nodes, _edges in comps:
            for s in H.edges:
                if s.underlying < nodes:
                    plan[s] = nodes
        return plan

    def refined_plan() -> Optional[dict[SignedEdge, frozenset]]:
        plan = {}
        for nodes, edges in comps:
            in_comp = [c for c in cycles if set(c.edges) <= edges]
            if len(in_comp) != 1:
                return None
            f = max(sorted(edges, key=_edge_key), key=len)
            if f == nodes:
                return None
            for s in H.edges:
                if s.underlying == f:
                    plan[s] = nodes
        return plan

    plan = refined_plan()
    used_refinement = plan is not None
    if plan is not None:
        trial = H
        for s in sorted(plan):
            trial = inflate(trial, s, plan[s])[0]
        if find_beta_leaf(underlying_hypergraph(trial)) is None or \
                enumerate_beta_cycles(underlying_hypergraph(trial),
                                      strategy.cycle_cap):
            plan = None
            used_refinement = False
    if plan is None:
        plan = full_plan()
    _check_blowup(plan, strategy, "cycle-component inflation")
    H_cur = _inflate_into(b, H, plan)
    if used_refinement:
        b.steps.append("single-cycle refinement: inflated only the largest "
                       "edge per component")
    _beta_path(b, H_cur)
    return _gap_bounds(H, worst)


def _build_split(b: _Builder, H: SignedHypergraph,
                 strategy: Strategy) -> tuple[Optional[int], Optional[int]]:
    V = frozenset(H.nodes)
    U = strategy.split_set
    if U is None:
        small = [s.underlying for s in H.edges if 2 * len(s) <= len(V)]
        if small:
            U = frozenset().union(*small)
    if U is None or not (frozenset(U) < V) or len(U) < 2:
        raise StrategyInapplicable(
            "no proper split target: provide one or use another strategy")
    U = frozenset(U)
    plan: dict[SignedEdge, frozenset] = {}
    for s in H.edges:
        target = U if s.underlying <= U else V
        if s.underlying < target:
            plan[s] = target
    _check_blowup(plan, strategy, "split inflation")
    H_cur = _inflate_into(b, H, plan)
    _nested_chain_path(b, H_cur)
    if not H.edges:
        return None, None
    k = max((len(t) - len(s) for s, t in plan.items()), default=0)
    n, m = len(H.nodes), len(H.edges)
    return (2 ** (k + 1) * m * (n - 1) + n + m,
            2 ** (k + 2) * m * (n - 1) + 2 * n + m)


_STRATEGY_BUILDERS = {
    "beta": _build_beta,
    "alpha": _build_alpha,
    "inflate_full": _build_inflate_full,
    "gap_maximal": _build_gap_maximal,
    "gap_cycles": _build_gap_cycles,
    "split_cor4": _build_split,
}

_AUTO_ORDER = ("beta", "gap_maximal", "gap_cycles", "alpha", "inflate_full")


def rid_build(H: SignedHypergraph,
              strategy: Strategy = Strategy()) -> ExtendedFormulation:
    """Recursive inflate-and-decompose: build an extended formulation.

    Inflates edges per the chosen strategy until leaf peeling applies, then
    emits one block per peeled node plus the link equalities. ``auto``
    tries beta, gap_maximal, gap_cycles, alpha, inflate_full in order.
    """
    kinds = (strategy.kind,) if strategy.kind != "auto" else _AUTO_ORDER
    failures = []
    for kind in kinds:
        b = _Builder(H)
        b.steps.append(f"strategy {kind}")
        try:
            bound_vars, bound_rows = _STRATEGY_BUILDERS[kind](b, H, strategy)
        except (StrategyInapplicable, CapExceeded) as exc:
            failures.append(f"{kind}: {exc}")
            continue
        return b.finish(kind, bound_vars, bound_rows)
    raise StrategyInapplicable("; ".join(failures))


# ---------------------------------------------------------------------------
# Lifting binary points
# ---------------------------------------------------------------------------

def lift_binary_point(EF: ExtendedFormulation, z: Mapping) -> dict[VarId, int]:
    """Extend a pseudo-Boolean point to every formulation variable.

    ``z`` maps each node and each input edge to {0,1} (a PBSPoint's values
    mapping works directly). Every variable has product semantics, so the
    lift is evaluation; the result satisfies all rows exactly.
    """
    assignment = {v: z[v] for v in EF.H.nodes}
    if any(val not in (0, 1) for val in assignment.values()):
        raise ValueError("node values must be binary")
    for s in EF.H.edges:
        if z[s] != s.evaluate(assignment):
            raise ValueError(
                f"value of edge {s.compact()} violates its product equation")
    values: dict[VarId, int] = {}
    for var in EF.variables:
        if var.kind == "node":
            values[var] = assignment[var.key]
        elif var.kind == "edge":
            values[var] = var.key.evaluate(assignment)
        else:
            pivot, base = var.key
            values[var] = assignment[pivot] * values[base]
    return values
