"""Acyclicity analysis for hypergraphs.

Provides leaf detection, greedy elimination orders for the two acyclicity
notions used by the formulation builder, capped enumeration of the cyclic
obstructions, gap computation, and the connected components spanned by
those obstructions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import Hypergraph, NodeId, _edge_key


class CapExceeded(Exception):
    """Raised when cycle enumeration would produce more than ``cap`` cycles."""

    def __init__(self, count: int):
        super().__init__(f"cycle count exceeds cap ({count})")
        self.count = count


@dataclass(frozen=True)
class EliminationOrder:
    """Result of greedy leaf elimination.

    ``witnesses`` records, for each eliminated node, the incident edge that
    certified it as a leaf (the maximum incident edge); it is ``None`` for
    isolated nodes and for chain-based elimination steps where no single
    witness is needed.
    """

    order: tuple[NodeId, ...]
    complete: bool
    witnesses: tuple[Optional[frozenset[NodeId]], ...] = ()

    def __post_init__(self) -> None:
        if self.witnesses and len(self.witnesses) != len(self.order):
            raise ValueError("one witness slot per eliminated node")


@dataclass(frozen=True)
class BetaCycle:
    """A cyclic obstruction: nodes v_1..v_q and edges e_1..e_q, q >= 3.

    Node v_i lies in e_{i-1} and e_i (cyclically) and in no other edge of
    the cycle; nodes and edges are distinct.
    """

    nodes: tuple[NodeId, ...]
    edges: tuple[frozenset[NodeId], ...]

    def __post_init__(self) -> None:
        q = len(self.nodes)
        if q < 3 or len(self.edges) != q:
            raise ValueError("cycle needs q >= 3 nodes and q edges")
        if len(set(self.nodes)) != q or len(set(self.edges)) != q:
            raise ValueError("cycle nodes and edges must be distinct")
        for i, v in enumerate(self.nodes):
            for j, e in enumerate(self.edges):
                expected = j in (i, (i - 1) % q)
                if (v in e) != expected:
                    raise ValueError(
                        f"node {v!r} membership in edge #{j} violates the "
                        "cycle incidence pattern"
                    )

    @property
    def length(self) -> int:
        return len(self.nodes)

    @property
    def support_nodes(self) -> frozenset[NodeId]:
        return frozenset().union(*self.edges)


@dataclass(frozen=True)
class GapReport:
    """Gap of an edge family: union size minus the smallest member's size."""

    edge_subset: frozenset[frozenset[NodeId]]
    union_size: int
    min_violator: frozenset[NodeId]
    gap: int


def _is_chain(edges: Iterable[frozenset[NodeId]]) -> bool:
    ordered = sorted(edges, key=len)
    return all(a <= b for a, b in itertools.pairwise(ordered))


def find_beta_leaf(G: Hypergraph) -> Optional[NodeId]:
    """Smallest node whose incident edges are totally ordered by inclusion."""
    for v in G.nodes:
        if _is_chain(e for e in G.edges if v in e):
            return v
    return None


def _find_alpha_leaf(
    G: Hypergraph,
) -> Optional[tuple[NodeId, Optional[frozenset[NodeId]]]]:
    """Smallest node whose incident edges have a maximum element, with it."""
    for v in G.nodes:
        incident = [e for e in G.edges if v in e]
        if not incident:
            return v, None
        union = frozenset().union(*incident)
        if union in G.edges:
            return v, union
    return None


def beta_elimination_order(G: Hypergraph) -> EliminationOrder:
    """Greedily eliminate chain-incidence leaves; complete iff acyclic."""
    order: list[NodeId] = []
    witnesses: list[Optional[frozenset[NodeId]]] = []
    while G.nodes:
        v = find_beta_leaf(G)
        if v is None:
            break
        order.append(v)
        witnesses.append(None)
        G = G.remove_node(v)
    return EliminationOrder(tuple(order), not G.nodes, tuple(witnesses))


def alpha_elimination_order(G: Hypergraph) -> EliminationOrder:
    """Greedily eliminate maximum-incident-edge leaves, recording witnesses."""
    order: list[NodeId] = []
    witnesses: list[Optional[frozenset[NodeId]]] = []
    while G.nodes:
        found = _find_alpha_leaf(G)
        if found is None:
            break
        v, witness = found
        order.append(v)
        witnesses.append(witness)
        G = G.remove_node(v)
    return EliminationOrder(tuple(order), not G.nodes, tuple(witnesses))


def enumerate_beta_cycles(G: Hypergraph, cap: int = 10_000) -> list[BetaCycle]:
    """All cycles up to circular permutation and reversal, capped.

    Canonical form: v_1 is the smallest cycle node and v_2 < v_q fixes the
    orientation. Raises :class:`CapExceeded` past ``cap`` cycles.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    edges = sorted(G.edges, key=_edge_key)
    found: list[BetaCycle] = []

    def extend(nodes: list[NodeId], path_edges: list[frozenset[NodeId]]) -> None:
        v1, v_cur = nodes[0], nodes[-1]
        for e in edges:
            if v_cur not in e or e in path_edges:
                continue
            # Interior edges must avoid all earlier cycle nodes; an edge
            # containing v_1 can only be the closing edge.
            if any(u in e for u in nodes[1:-1]):
                continue
            if v1 in e:
                if len(nodes) >= 3 and nodes[1] < nodes[-1]:
                    cycle = BetaCycle(tuple(nodes), tuple(path_edges + [e]))
                    found.append(cycle)
                    if len(found) > cap:
                        raise CapExceeded(cap)
                continue
            for v_next in sorted(e):
                if v_next <= v1 or v_next in nodes:
                    continue
                if any(v_next in f for f in path_edges):
                    continue
                extend(nodes + [v_next], path_edges + [e])

    for v1 in G.nodes:
        for e1 in edges:
            if v1 not in e1:
                continue
            for v2 in sorted(e1):
                if v2 > v1:
                    extend([v1, v2], [e1])
    found.sort(key=lambda c: (c.length, c.nodes, tuple(map(_edge_key, c.edges))))
    return found


def gap(edges: Iterable[frozenset[NodeId]]) -> GapReport:
    """Union size minus the minimum edge size over a nonempty edge family."""
    edge_set = frozenset(frozenset(e) for e in edges)
    if not edge_set:
        raise ValueError("gap of an empty edge family is undefined")
    union = frozenset().union(*edge_set)
    min_violator = min(edge_set, key=_edge_key)
    return GapReport(edge_set, len(union), min_violator,
                     len(union) - len(min_violator))


def beta_cycle_support_components(
    G: Hypergraph, cap: int = 10_000
) -> list[tuple[frozenset[NodeId], frozenset[frozenset[NodeId]]]]:
    """Connected components of the union of all cycle supports.

    The support of a cycle is the sub-hypergraph on its edges and their
    nodes; components are taken under shared-edge connectivity. Returns a
    sorted list of (node set, edge set) pairs; empty when acyclic.
    """
    cycles = enumerate_beta_cycles(G, cap)
    support_edges: set[frozenset[NodeId]] = set()
    for c in cycles:
        support_edges.update(c.edges)
    if not support_edges:
        return []
    # Union-find over nodes via shared edges.
    parent: dict[NodeId, NodeId] = {}

    def find(v: NodeId) -> NodeId:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in support_edges:
        for v in e:
            parent.setdefault(v, v)
        vs = sorted(e)
        for u in vs[1:]:
            parent[find(u)] = find(vs[0])
    groups: dict[NodeId, set[NodeId]] = {}
    for v in parent:
        groups.setdefault(find(v), set()).add(v)
    components = []
    for nodes in groups.values():
        comp_edges = frozenset(e for e in support_edges if e <= nodes)
        components.append((frozenset(nodes), comp_edges))
    components.sort(key=lambda c: tuple(sorted(c[0])))
    return components
