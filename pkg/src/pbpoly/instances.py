"""Showcase instances and seeded random instance generators.

Node names are zero-padded (``v01``, ``v02``, ...) so lexicographic order
equals numeric order everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

from .acyclicity import alpha_elimination_order, beta_elimination_order
from .core import (Hypergraph, NodeId, SignedEdge, SignedHypergraph,
                   underlying_hypergraph)
from .oracle import SplitMix64


def _v(i: int) -> NodeId:
    return f"v{i:02d}"


def _positive(nodes) -> SignedEdge:
    return SignedEdge.make({v: 1 for v in nodes})


@dataclass(frozen=True)
class LadderCycle:
    """A 2n-node hypergraph built from a long cycle of small edges, each
    pair covered by one larger rung edge.

    All signs positive. The small edges f_i, g_i sit inside the rungs e_i,
    so inflating each small edge into its rung removes the long cycle.
    """

    H: SignedHypergraph
    e: tuple[frozenset, ...]
    f: tuple[frozenset, ...]
    g: tuple[frozenset, ...]


def ladder_cycle(n: int) -> LadderCycle:
    if n < 3:
        raise ValueError("need n >= 3")
    e = [frozenset({_v(1), _v(2), _v(3)})]
    for i in range(2, n):
        e.append(frozenset({_v(2 * i - 2), _v(2 * i - 1),
                            _v(2 * i), _v(2 * i + 1)}))
    e.append(frozenset({_v(2 * n - 2), _v(2 * n - 1), _v(2 * n)}))
    f = [frozenset({_v(1), _v(2)})]
    for i in range(2, n + 1):
        f.append(frozenset({_v(2 * i - 2), _v(2 * i)}))
    g = []
    for i in range(1, n):
        g.append(frozenset({_v(2 * i - 1), _v(2 * i + 1)}))
    g.append(frozenset({_v(2 * n - 1), _v(2 * n)}))
    nodes = [_v(i) for i in range(1, 2 * n + 1)]
    H = SignedHypergraph.make(nodes, [_positive(x) for x in e + f + g])
    return LadderCycle(H, tuple(e), tuple(f), tuple(g))


def two_cycle_components(n: int = 12) -> SignedHypergraph:
    """One big edge over all n >= 12 nodes plus two local clusters of
    cycling small edges (a triangle-like cluster on four nodes and one on
    five nodes); all signs positive."""
    if n < 12:
        raise ValueError("need n >= 12")
    nodes = [_v(i) for i in range(1, n + 1)]
    edges = [
        nodes,
        [_v(1), _v(2)], [_v(2), _v(3)],
        [_v(4), _v(5)], [_v(5), _v(6)], [_v(4), _v(7)], [_v(6), _v(7)],
        [_v(4), _v(5), _v(6)],
        [_v(8), _v(9)], [_v(9), _v(10)], [_v(8), _v(10)],
        [_v(9), _v(11), _v(12)], [_v(10), _v(11), _v(12)],
    ]
    return SignedHypergraph.make(nodes, [_positive(x) for x in edges])


def mixed_sign_chain(n: int) -> SignedHypergraph:
    """Four signed edges on two overlapping (n-1)-node windows whose
    underlying hypergraph is chain-free of cycles (two parallel pairs with
    one negative literal each)."""
    if n < 4:
        raise ValueError("need n >= 4")
    nodes = [_v(i) for i in range(1, n + 1)]
    left = [_v(i) for i in range(1, n)]
    right = [_v(i) for i in range(2, n + 1)]
    s1 = SignedEdge.make({v: (-1 if v == _v(n - 1) else 1) for v in left})
    s2 = SignedEdge.make({v: (-1 if v == _v(2) else 1) for v in left})
    s3 = SignedEdge.make({v: (-1 if v == _v(n - 1) else 1) for v in right})
    s4 = SignedEdge.make({v: (-1 if v == _v(2) else 1) for v in right})
    return SignedHypergraph.make(nodes, [s1, s2, s3, s4])


def non_tu_nested() -> SignedHypergraph:
    """A 12-edge nested hypergraph on four nodes whose hull description's
    constraint matrix has a 5x5 submatrix of determinant 2 (so it is not
    totally unimodular)."""
    v1, v2, v3, v4 = _v(1), _v(2), _v(3), _v(4)
    sign_maps = [
        {v1: 1, v2: 1}, {v1: -1, v2: 1}, {v1: 1, v2: -1}, {v1: -1, v2: -1},
        {v1: 1, v2: 1, v3: 1}, {v1: 1, v2: 1, v3: -1},
        {v1: -1, v2: 1, v3: -1}, {v1: -1, v2: 1, v3: 1},
        {v1: 1, v2: 1, v3: -1, v4: 1}, {v1: 1, v2: 1, v3: -1, v4: -1},
        {v1: -1, v2: 1, v3: 1, v4: 1}, {v1: -1, v2: 1, v3: 1, v4: -1},
    ]
    return SignedHypergraph.make(
        [v1, v2, v3, v4], [SignedEdge.make(m) for m in sign_maps])


def non_tu_witness_edges() -> tuple[SignedEdge, ...]:
    """The five edge variables (s5, s6, s8, s9, s11) of the determinant-2
    submatrix of non_tu_nested()'s hull description."""
    v1, v2, v3, v4 = _v(1), _v(2), _v(3), _v(4)
    return (
        SignedEdge.make({v1: 1, v2: 1, v3: 1}),
        SignedEdge.make({v1: 1, v2: 1, v3: -1}),
        SignedEdge.make({v1: -1, v2: 1, v3: 1}),
        SignedEdge.make({v1: 1, v2: 1, v3: -1, v4: 1}),
        SignedEdge.make({v1: -1, v2: 1, v3: 1, v4: 1}),
    )


# -- random generators --------------------------------------------------------

def _random_signed_hypergraph(rng: SplitMix64, n_nodes: int, n_edges: int,
                              max_rank: int) -> SignedHypergraph:
    nodes = [_v(i) for i in range(1, n_nodes + 1)]
    edges: set[SignedEdge] = set()
    attempts = 0
    while len(edges) < n_edges and attempts < 50 * n_edges:
        attempts += 1
        size = rng.randint(2, min(max_rank, n_nodes))
        chosen: list[NodeId] = []
        pool = list(nodes)
        for _ in range(size):
            chosen.append(pool.pop(rng.randint(0, len(pool) - 1)))
        signs = {v: (1 if rng.randint(0, 1) else -1) for v in chosen}
        edges.add(SignedEdge.make(signs))
    return SignedHypergraph.make(nodes, edges)


def random_beta_acyclic(rng: SplitMix64, max_nodes: int = 8,
                        max_edges: int = 12,
                        max_rank: int = 5) -> SignedHypergraph:
    """Seeded random signed hypergraph whose underlying hypergraph admits a
    full chain-incidence leaf elimination (rejection sampled)."""
    while True:
        n = rng.randint(2, max_nodes)
        m = rng.randint(1, max_edges)
        H = _random_signed_hypergraph(rng, n, m, max_rank)
        if beta_elimination_order(underlying_hypergraph(H)).complete:
            return H


def random_alpha_acyclic(rng: SplitMix64, max_nodes: int = 8,
                         max_edges: int = 10,
                         max_rank: int = 4) -> SignedHypergraph:
    """Seeded random signed hypergraph admitting a full maximum-incident-
    edge leaf elimination (rejection sampled)."""
    while True:
        n = rng.randint(2, max_nodes)
        m = rng.randint(1, max_edges)
        H = _random_signed_hypergraph(rng, n, m, max_rank)
        if alpha_elimination_order(underlying_hypergraph(H)).complete:
            return H


def random_hypergraph(rng: SplitMix64, max_nodes: int = 8,
                      max_edges: int = 10, max_rank: int = 5) -> Hypergraph:
    """Seeded random plain hypergraph (no acyclicity constraint)."""
    n = rng.randint(2, max_nodes)
    m = rng.randint(1, max_edges)
    nodes = [_v(i) for i in range(1, n + 1)]
    edges: set[frozenset] = set()
    attempts = 0
    while len(edges) < m and attempts < 50 * m:
        attempts += 1
        size = rng.randint(2, min(max_rank, n))
        pool = list(nodes)
        chosen = []
        for _ in range(size):
            chosen.append(pool.pop(rng.randint(0, len(pool) - 1)))
        edges.add(frozenset(chosen))
    return Hypergraph.make(nodes, edges)
