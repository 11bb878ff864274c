"""Signed hypergraphs and the elementary operations on them.

Nodes are identified by strings; their lexicographic order fixes every
canonical order used elsewhere, so identical inputs always produce
bit-identical outputs.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Mapping

NodeId = str

POSITIVE = 1
NEGATIVE = -1


@dataclass(frozen=True, order=True)
class SignedEdge:
    """A node subset with a +1/-1 sign per node, stored in node order.

    Two signed edges are *parallel* if they have the same underlying node
    set and *identical* if the signs agree as well; identical edges compare
    equal.
    """

    items: tuple[tuple[NodeId, int], ...]

    def __post_init__(self) -> None:
        if len(self.items) < 2:
            raise ValueError("signed edge needs at least two nodes")
        nodes = [v for v, _ in self.items]
        if nodes != sorted(nodes) or len(set(nodes)) != len(nodes):
            raise ValueError("signed edge items must be sorted and distinct")
        if any(sign not in (POSITIVE, NEGATIVE) for _, sign in self.items):
            raise ValueError("signs must be +1 or -1")

    @staticmethod
    def make(signs: Mapping[NodeId, int]) -> "SignedEdge":
        return SignedEdge(tuple(sorted(signs.items())))

    @property
    def nodes(self) -> tuple[NodeId, ...]:
        return tuple(v for v, _ in self.items)

    @property
    def underlying(self) -> frozenset[NodeId]:
        return frozenset(v for v, _ in self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, v: NodeId) -> bool:
        return any(u == v for u, _ in self.items)

    def sign(self, v: NodeId) -> int:
        for u, sign in self.items:
            if u == v:
                return sign
        raise KeyError(v)

    def signs(self) -> dict[NodeId, int]:
        return dict(self.items)

    def minus(self, v: NodeId) -> tuple[tuple[NodeId, int], ...]:
        """Items of this edge with node ``v`` removed (may drop below size 2)."""
        if v not in self:
            raise KeyError(v)
        return tuple(item for item in self.items if item[0] != v)

    def restrict(self, v: NodeId) -> "SignedEdge":
        """The signed edge obtained by removing ``v``; requires size >= 3."""
        return SignedEdge(self.minus(v))

    def extend(self, v: NodeId, sign: int) -> "SignedEdge":
        if v in self:
            raise ValueError(f"node {v!r} already in edge")
        return SignedEdge(tuple(sorted(self.items + ((v, sign),))))

    def flip(self, v: NodeId) -> "SignedEdge":
        """Flip the sign of ``v``."""
        return SignedEdge(
            tuple((u, -s if u == v else s) for u, s in self.items)
        )

    def evaluate(self, assignment: Mapping[NodeId, int]) -> int:
        """Product of the signed literals at a binary node assignment."""
        out = 1
        for v, sign in self.items:
            lit = assignment[v] if sign == POSITIVE else 1 - assignment[v]
            if lit == 0:
                return 0
            out *= lit
        return out

    def compact(self) -> str:
        return "{" + ",".join(
            f"{v}{'+' if s == POSITIVE else '-'}" for v, s in self.items
        ) + "}"

    def __repr__(self) -> str:
        return f"SignedEdge({self.compact()})"


@dataclass(frozen=True)
class Hypergraph:
    """A plain hypergraph: node set plus a set of edges of cardinality >= 2."""

    nodes: tuple[NodeId, ...]
    edges: frozenset[frozenset[NodeId]]

    def __post_init__(self) -> None:
        if tuple(sorted(set(self.nodes))) != self.nodes:
            raise ValueError("nodes must be sorted and distinct")
        node_set = set(self.nodes)
        for e in self.edges:
            if len(e) < 2:
                raise ValueError("edges need at least two nodes")
            if not e <= node_set:
                raise ValueError(f"edge {sorted(e)} references unknown nodes")

    @staticmethod
    def make(nodes: Iterable[NodeId], edges: Iterable[Iterable[NodeId]]) -> "Hypergraph":
        return Hypergraph(
            tuple(sorted(set(nodes))),
            frozenset(frozenset(e) for e in edges),
        )

    def incident(self, v: NodeId) -> list[frozenset[NodeId]]:
        return sorted((e for e in self.edges if v in e), key=_edge_key)

    def remove_node(self, v: NodeId) -> "Hypergraph":
        if v not in self.nodes:
            raise KeyError(v)
        kept = {e - {v} for e in self.edges}
        return Hypergraph(
            tuple(u for u in self.nodes if u != v),
            frozenset(e for e in kept if len(e) >= 2),
        )


def _edge_key(e: frozenset[NodeId]) -> tuple[int, tuple[NodeId, ...]]:
    return (len(e), tuple(sorted(e)))


@dataclass(frozen=True)
class SignedHypergraph:
    """Node set plus a set of signed edges; identical edges are merged."""

    nodes: tuple[NodeId, ...]
    edges: frozenset[SignedEdge]

    def __post_init__(self) -> None:
        if tuple(sorted(set(self.nodes))) != self.nodes:
            raise ValueError("nodes must be sorted and distinct")
        node_set = set(self.nodes)
        for s in self.edges:
            if not s.underlying <= node_set:
                raise ValueError(f"edge {s.compact()} references unknown nodes")

    @staticmethod
    def make(
        nodes: Iterable[NodeId], edges: Iterable[SignedEdge]
    ) -> "SignedHypergraph":
        return SignedHypergraph(tuple(sorted(set(nodes))), frozenset(edges))

    def sorted_edges(self) -> list[SignedEdge]:
        return sorted(self.edges)

    def incident(self, v: NodeId) -> list[SignedEdge]:
        return sorted(s for s in self.edges if v in s)

    def __repr__(self) -> str:
        edges = ", ".join(s.compact() for s in self.sorted_edges())
        return f"SignedHypergraph(nodes={list(self.nodes)}, edges=[{edges}])"


@dataclass(frozen=True)
class SignedTermExpansion:
    """Multilinear expansion of a product of signed literals.

    ``constant`` plus the signed sum of the monomials evaluates to the
    product of the edge's literals at every binary point.
    """

    constant: int
    monomials: tuple[tuple[frozenset[NodeId], int], ...]

    def evaluate(self, assignment: Mapping[NodeId, int]) -> int:
        val = self.constant
        for support, coeff in self.monomials:
            term = coeff
            for v in support:
                term *= assignment[v]
            val += term
        return val


def remove_node(H: SignedHypergraph, v: NodeId) -> SignedHypergraph:
    """Remove a node; truncated edges of size one are dropped, identical merged."""
    if v not in H.nodes:
        raise KeyError(f"unknown node {v!r}")
    new_edges = set()
    for s in H.edges:
        if v not in s:
            new_edges.add(s)
            continue
        items = s.minus(v)
        if len(items) >= 2:
            new_edges.add(SignedEdge(items))
    return SignedHypergraph(
        tuple(u for u in H.nodes if u != v), frozenset(new_edges)
    )


def underlying_hypergraph(H: SignedHypergraph) -> Hypergraph:
    """Drop signs and collapse parallel edges."""
    return Hypergraph(H.nodes, frozenset(s.underlying for s in H.edges))


def rank(H: SignedHypergraph | Hypergraph) -> int:
    """Maximum edge cardinality; 0 for an empty edge set."""
    if not H.edges:
        return 0
    return max(len(s) for s in H.edges)


def expand_signed_term(s: SignedEdge) -> SignedTermExpansion:
    """Expand the product of signed literals into monomials over plain variables.

    Each subset t of the negatively signed nodes contributes the monomial on
    (positive nodes) | t with coefficient (-1)^|t|; the empty support becomes
    the constant term.
    """
    positives = frozenset(v for v, sign in s.items if sign == POSITIVE)
    negatives = sorted(v for v, sign in s.items if sign == NEGATIVE)
    constant = 0
    monomials: list[tuple[frozenset[NodeId], int]] = []
    for size in range(len(negatives) + 1):
        for t in itertools.combinations(negatives, size):
            support = positives | frozenset(t)
            coeff = -1 if size % 2 else 1
            if support:
                monomials.append((support, coeff))
            else:
                constant += coeff
    monomials.sort(key=lambda m: (len(m[0]), tuple(sorted(m[0]))))
    return SignedTermExpansion(constant, tuple(monomials))


def multilinear_hypergraph(H: SignedHypergraph) -> Hypergraph:
    """The hypergraph whose edges are the monomial supports of all expansions."""
    edges: set[frozenset[NodeId]] = set()
    for s in H.edges:
        for support, _ in expand_signed_term(s).monomials:
            if len(support) >= 2:
                edges.add(support)
    return Hypergraph(H.nodes, frozenset(edges))


def to_multilinear_problem(
    H: SignedHypergraph, c: Mapping[NodeId | SignedEdge, object]
) -> tuple[Hypergraph, dict[NodeId | frozenset[NodeId], object], object]:
    """Rewrite an objective over nodes and signed edges as a multilinear one.

    Returns the multilinear hypergraph, an objective over nodes and plain
    edges, and the constant offset; the two objectives agree on every binary
    node assignment up to that constant.
    """
    mh = multilinear_hypergraph(H)
    objective: dict[NodeId | frozenset[NodeId], object] = {}
    constant = 0
    for key, weight in c.items():
        if isinstance(key, SignedEdge):
            if key not in H.edges:
                raise KeyError(f"objective edge {key.compact()} not in hypergraph")
            expansion = expand_signed_term(key)
            constant = constant + weight * expansion.constant
            for support, coeff in expansion.monomials:
                target: NodeId | frozenset[NodeId]
                target = next(iter(support)) if len(support) == 1 else support
                objective[target] = objective.get(target, 0) + weight * coeff
        else:
            if key not in H.nodes:
                raise KeyError(f"objective node {key!r} not in hypergraph")
            objective[key] = objective.get(key, 0) + weight
    objective = {k: w for k, w in objective.items() if w != 0}
    return mh, objective, constant


# ---------------------------------------------------------------------------
# JSON instance format
# ---------------------------------------------------------------------------

def signed_hypergraph_from_json(text: str) -> SignedHypergraph:
    """Parse ``{"nodes": [...], "edges": [{"a": 1, "b": -1}, ...]}``.

    Duplicate identical edge objects are rejected; the error names the edge.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or "nodes" not in data or "edges" not in data:
        raise ValueError('expected an object with "nodes" and "edges" fields')
    nodes = data["nodes"]
    if not isinstance(nodes, list) or not all(isinstance(v, str) for v in nodes):
        raise ValueError('"nodes" must be a list of strings')
    if len(set(nodes)) != len(nodes):
        raise ValueError("duplicate node names")
    edges: list[SignedEdge] = []
    seen: set[SignedEdge] = set()
    for i, raw in enumerate(data["edges"]):
        if not isinstance(raw, dict):
            raise ValueError(f'edge #{i}: expected an object mapping node to sign')
        try:
            edge = SignedEdge.make({str(v): int(sign) for v, sign in raw.items()})
        except ValueError as exc:
            raise ValueError(f"edge #{i}: {exc}") from exc
        if edge in seen:
            raise ValueError(f"duplicate identical edge {edge.compact()}")
        seen.add(edge)
        edges.append(edge)
    return SignedHypergraph.make(nodes, edges)


def signed_hypergraph_to_json(H: SignedHypergraph) -> str:
    payload = {
        "nodes": list(H.nodes),
        "edges": [dict(s.items) for s in H.sorted_edges()],
    }
    return json.dumps(payload, indent=2, sort_keys=False)
