"""Line graphs, Whitney root reconstruction, and line-pattern algebra.

The root finder searches for a Krausz partition: the edge set split
into cliques with every vertex in at most two of them.  Each clique
becomes a star center in the root; vertices in a single clique receive
a private ray endpoint.  Connected triangle components take the claw
as root (the one Whitney-ambiguous case; the claw is the bipartite
choice), so roots of König graphs are always bipartite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .canon import automorphism_count, is_isomorphic
from .errors import BudgetExceeded, NotALineGraph
from .graphs import (
    Graph,
    bipartition,
    complete_graph,
    disjoint_union,
    quotient,
    spasm_partitions,
    star_graph,
)
from .quantum import QuantumGraph, partition_mobius

Edge = tuple[int, int]


def line_graph(g: Graph) -> tuple[Graph, tuple[Edge, ...]]:
    """L(g) plus the vertex labels: L-vertex i is edge labels[i] of g."""
    if not g.is_simple:
        raise ValueError("line graphs are defined for simple graphs here")
    labels = tuple(sorted(g.edges))
    edges = [
        (i, j)
        for i, j in combinations(range(len(labels)), 2)
        if set(labels[i]) & set(labels[j])
    ]
    return Graph.build(len(labels), edges), labels


def krausz_partition(l: Graph) -> list[frozenset[int]]:
    """Partition E(l) into cliques with every vertex in at most 2 cliques.

    Raises NotALineGraph when no such partition exists.  Isolated
    vertices do not appear in any clique.
    """
    if not l.is_simple:
        raise NotALineGraph("loops are never line graphs of simple graphs")
    edge_order = l.edge_list()
    owner: dict[Edge, int] = {}
    cliques: list[frozenset[int]] = []
    count = [0] * l.vertex_count

    def uncovered_at(w: int) -> bool:
        return any(
            (min(w, x), max(w, x)) not in owner for x in l.adj[w]
        )

    def candidate_cliques(u: int, v: int) -> list[frozenset[int]]:
        common = [
            w
            for w in sorted(l.adj[u] & l.adj[v])
            if count[w] <= 1
            and (min(u, w), max(u, w)) not in owner
            and (min(v, w), max(v, w)) not in owner
        ]
        found: list[frozenset[int]] = []

        def grow(base: list[int], pool: list[int]):
            found.append(frozenset({u, v, *base}))
            for idx, w in enumerate(pool):
                if all(
                    l.has_edge(w, x) and (min(w, x), max(w, x)) not in owner
                    for x in base
                ):
                    grow(base + [w], pool[idx + 1 :])

        grow([], common)
        # larger cliques first: line graphs usually need the maximal choice
        return sorted(found, key=len, reverse=True)

    def place(S: frozenset[int]) -> list[Edge]:
        placed = []
        for x, y in combinations(sorted(S), 2):
            owner[(x, y)] = len(cliques)
            placed.append((x, y))
        for w in S:
            count[w] += 1
        cliques.append(S)
        return placed

    def unplace(placed: list[Edge], S: frozenset[int]):
        for e in placed:
            del owner[e]
        for w in S:
            count[w] -= 1
        cliques.pop()

    def rec() -> bool:
        pivot = next((e for e in edge_order if e not in owner), None)
        if pivot is None:
            return True
        u, v = pivot
        if count[u] >= 2 or count[v] >= 2:
            return False
        for S in candidate_cliques(u, v):
            placed = place(S)
            # saturated vertices must have no uncovered edges left
            if all(not (count[w] == 2 and uncovered_at(w)) for w in S):
                if rec():
                    return True
            unplace(placed, S)
        return False

    if not rec():
        raise NotALineGraph("no Krausz clique partition exists")
    return cliques


@dataclass(frozen=True)
class RootWitness:
    root: Graph  # no isolated vertices
    edge_map: tuple[Edge, ...]  # L-vertex -> edge of root
    bipartite: bool
    two_coloring: Optional[tuple[int, ...]]

    def validate(self, l: Graph) -> None:
        rebuilt, labels = line_graph(self.root)
        if len(self.edge_map) != l.vertex_count:
            raise AssertionError("edge map size mismatch")
        index = {e: i for i, e in enumerate(labels)}
        perm = [index[tuple(sorted(e))] for e in self.edge_map]
        if len(set(perm)) != len(perm):
            raise AssertionError("edge map is not a bijection")
        for u, v in l.edges:
            if not rebuilt.has_edge(perm[u], perm[v]):
                raise AssertionError("edge map does not preserve adjacency")
        for u, v in rebuilt.edges:
            back = {perm.index(u), perm.index(v)}
            x, y = sorted(back)
            if not l.has_edge(x, y):
                raise AssertionError("edge map misses line-graph adjacency")


def _component_root(l: Graph, comp: list[int]) -> tuple[Graph, list[Edge]]:
    """Root of one connected component, vertices of comp in sorted order."""
    sub = l.induced(comp)
    if sub.vertex_count == 1:
        return complete_graph(2), [(0, 1)]
    if sub.vertex_count == 3 and sub.edge_count == 3:
        # triangle: take the claw, the bipartite root
        return star_graph(3), [(0, 1), (0, 2), (0, 3)]
    cliques = krausz_partition(sub)
    clique_of: list[list[int]] = [[] for _ in range(sub.vertex_count)]
    for ci, S in enumerate(cliques):
        for w in S:
            clique_of[w].append(ci)
    n_nodes = len(cliques)
    edge_map: list[Edge] = []
    edges: list[Edge] = []
    for w in range(sub.vertex_count):
        owners = clique_of[w]
        if len(owners) == 2:
            e = (owners[0], owners[1])
        elif len(owners) == 1:
            e = (owners[0], n_nodes)
            n_nodes += 1
        else:
            e = (n_nodes, n_nodes + 1)
            n_nodes += 2
        edges.append(e)
        edge_map.append(e)
    return Graph.build(n_nodes, edges), edge_map


def root_graph(l: Graph) -> RootWitness:
    """Whitney inverse: the root graph without isolated vertices.

    Raises NotALineGraph when l admits no Krausz partition.
    """
    comps = l.components()
    parts: list[Graph] = []
    maps: list[list[Edge]] = []
    for comp in comps:
        g, m = _component_root(l, comp)
        parts.append(g)
        maps.append(m)
    union, offsets = disjoint_union(parts)
    edge_map: list[Edge] = [(0, 0)] * l.vertex_count
    for comp, m, off in zip(comps, maps, offsets):
        for local, v in enumerate(comp):
            a, b = m[local]
            edge_map[v] = (a + off, b + off)
    coloring = bipartition(union)
    return RootWitness(
        union,
        tuple(edge_map),
        bipartite=coloring is not None,
        two_coloring=coloring,
    )


def is_koenig(g: Graph) -> bool:
    """Line graph of a bipartite graph?"""
    try:
        return root_graph(g).bipartite
    except NotALineGraph:
        return False


def decide_hom_to_line(h: Graph, l: Graph) -> bool:
    """Decide hom existence from h into the line graph l.

    Components whose size is at most the root's maximum degree embed
    into the corresponding clique of l; the rest are settled by an
    anchored bounded search.
    """
    witness = root_graph(l)
    if not h.is_simple:
        raise ValueError("pattern must be simple")
    if h.vertex_count == 0:
        return True
    d = max(
        (witness.root.degree(v) for v in witness.root.vertices()), default=0
    )
    k = h.vertex_count
    for comp in h.components():
        if d >= k:
            continue
        if not _component_hom_exists(h, comp, l):
            return False
    return True


def _component_hom_exists(h: Graph, comp: list[int], g: Graph) -> bool:
    order = [comp[0]]
    seen = {comp[0]}
    i = 0
    while i < len(order):
        for w in sorted(h.adj[order[i]]):
            if w not in seen:
                seen.add(w)
                order.append(w)
        i += 1
    pos = {v: i for i, v in enumerate(order)}
    img = [0] * len(order)

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        cands: Optional[set[int]] = None
        for u in h.adj[v]:
            if pos.get(u, len(order)) < i:
                s = g.adj[img[pos[u]]]
                cands = set(s) if cands is None else cands & s
        pool = cands if cands is not None else g.vertices()
        for c in pool:
            img[i] = c
            if rec(i + 1):
                return True
        return False

    # anchor every candidate image of the component root
    for anchor in g.vertices():
        img[0] = anchor
        if rec(1):
            return True
    return False


def line_pattern_quantum(h: Graph, budget: int = 6) -> QuantumGraph:
    """Quantum graph Q with #Hom(h, L(G)) = #Hom(Q, G) for bipartite G.

    Triple sum: spasm partitions of h, edge supersets that are König
    graphs (checked via root reconstruction and root bipartiteness),
    and spasm partitions of each root F, weighted by
    #Aut(superset) * mu(bottom, delta) / #Aut(F).
    """
    if not h.is_simple:
        raise ValueError("pattern must be simple")
    if h.vertex_count > budget:
        raise BudgetExceeded(f"{h.vertex_count} > {budget} vertices")
    terms: list[tuple[Graph, Fraction]] = []
    for rho in spasm_partitions(h):
        k = quotient(h, rho)
        for sup in _edge_supersets(k):
            try:
                witness = root_graph(sup)
            except NotALineGraph:
                continue
            if not witness.bipartite:
                continue
            f = witness.root
            aut_sup = automorphism_count(sup)
            aut_f = automorphism_count(f)
            for delta in spasm_partitions(f):
                terms.append(
                    (
                        quotient(f, delta),
                        Fraction(aut_sup, aut_f) * partition_mobius(delta),
                    )
                )
    return QuantumGraph.from_terms(terms)


def _edge_supersets(g: Graph):
    missing = [
        (u, v)
        for u, v in combinations(range(g.vertex_count), 2)
        if not g.has_edge(u, v)
    ]
    for r in range(len(missing) + 1):
        for extra in combinations(missing, r):
            yield g.with_extra_edges(extra)
