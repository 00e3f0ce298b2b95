"""Deterministic graph family constructors.

Kneser graphs, square grids, paths, and the bit-string-to-graph encoding
together with its inverse.  All vertex orders are fixed and reproducible:
Kneser vertices enumerate s-subsets of [r] lexicographically, grids are
row-major, encodings list paths by increasing length.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional

from .errors import BudgetExceeded, DecodeFailure
from .graphs import Graph, VertexColoring, complete_graph, disjoint_union, path_graph

KNESER_VERTEX_BUDGET = 50_000


@dataclass(frozen=True)
class KneserParams:
    """Parameters of K(r, s); family_index n marks members K(n) of the
    doubly-indexed family r = (2n+1)(n-2), s = n(n-2)."""

    r: int
    s: int
    family_index: Optional[int] = None

    def __post_init__(self):
        if self.s < 1 or self.r < self.s:
            raise ValueError("need r >= s >= 1")
        if self.family_index is not None:
            n = self.family_index
            if n < 3:
                raise ValueError("family index starts at 3")
            if self.r != (2 * n + 1) * (n - 2) or self.s != n * (n - 2):
                raise ValueError("parameters do not match the family formula")

    @staticmethod
    def from_family_index(n: int) -> "KneserParams":
        return KneserParams((2 * n + 1) * (n - 2), n * (n - 2), n)


@dataclass(frozen=True)
class KneserGraph:
    graph: Graph
    params: KneserParams
    labels: tuple[frozenset[int], ...]
    coloring: VertexColoring  # proper coloring with r - 2s + 2 colors

    @property
    def color_count(self) -> int:
        return self.params.r - 2 * self.params.s + 2


def kneser(params: KneserParams, vertex_budget: int = KNESER_VERTEX_BUDGET) -> KneserGraph:
    """K(r, s): s-subsets of [r] with disjointness adjacency.

    The witness coloring assigns set S the color min(min(S), r-2s+2);
    it is proper by pigeonhole and uses exactly r-2s+2 colors when
    r >= 2s.
    """
    r, s = params.r, params.s
    n_vertices = comb(r, s)
    if n_vertices > vertex_budget:
        raise BudgetExceeded(f"K({r},{s}) has {n_vertices} vertices > budget {vertex_budget}")
    subsets = [frozenset(c) for c in combinations(range(1, r + 1), s)]
    index = {sub: i for i, sub in enumerate(subsets)}
    edges = []
    universe = frozenset(range(1, r + 1))
    for i, sub in enumerate(subsets):
        rest = sorted(universe - sub)
        for other in combinations(rest, s):
            j = index[frozenset(other)]
            if i < j:
                edges.append((i, j))
    g = Graph.build(n_vertices, edges)
    top = max(r - 2 * s + 2, 1)
    colors = tuple(min(min(sub), top) - 1 for sub in subsets)
    coloring = VertexColoring(g, complete_graph(max(colors) + 1 if subsets else 0), colors)
    return KneserGraph(g, params, tuple(subsets), coloring)


def kneser_family(n: int, vertex_budget: int = KNESER_VERTEX_BUDGET) -> KneserGraph:
    """The member K(n) = K((2n+1)(n-2), n(n-2)) of the doubly-indexed family."""
    return kneser(KneserParams.from_family_index(n), vertex_budget)


@dataclass(frozen=True)
class GridGraph:
    graph: Graph
    k: int
    coords: tuple[tuple[int, int], ...]  # vertex -> (row, column), 1-based

    def vertex_at(self, i: int, j: int) -> int:
        return (i - 1) * self.k + (j - 1)


def grid(k: int) -> GridGraph:
    """The k x k square grid; (i,j) ~ (i',j') iff |i-i'| + |j-j'| = 1."""
    if k < 1:
        raise ValueError("k must be positive")
    coords = tuple((i, j) for i in range(1, k + 1) for j in range(1, k + 1))
    edges = []
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            v = (i - 1) * k + (j - 1)
            if j < k:
                edges.append((v, v + 1))
            if i < k:
                edges.append((v, v + k))
    return GridGraph(Graph.build(k * k, edges), k, coords)


def encode_string(x: str) -> Graph:
    """Disjoint union of paths P_i for every set bit x[i] (1-indexed,
    P_i has i edges) plus |x| isolated vertices."""
    if not x or any(c not in "01" for c in x):
        raise ValueError("x must be a non-empty bit string")
    parts = [path_graph(i) for i, bit in enumerate(x, start=1) if bit == "1"]
    parts.extend(Graph.build(1) for _ in x)
    g, _ = disjoint_union(parts)
    return g


def decode_string(g: Graph) -> str:
    """Inverse of encode_string.

    Raises DecodeFailure exactly when g is not an encoding image: a
    component that is neither a path nor an isolated vertex, a duplicate
    path length, or a path longer than the isolated-vertex count allows.
    A graph of isolated vertices only decodes to the all-zero string.
    """
    if g.loops:
        raise DecodeFailure("non-path-component")
    isolated = 0
    lengths: set[int] = set()
    for comp in g.components():
        if len(comp) == 1:
            isolated += 1
            continue
        length = _path_length(g, comp)
        if length is None:
            raise DecodeFailure("non-path-component")
        if length in lengths:
            raise DecodeFailure("duplicate-path")
        lengths.add(length)
    if isolated == 0 and not lengths:
        raise DecodeFailure("empty")
    if lengths and max(lengths) > isolated:
        raise DecodeFailure("path-too-long")
    return "".join("1" if i in lengths else "0" for i in range(1, isolated + 1))


def _path_length(g: Graph, comp: list[int]) -> Optional[int]:
    # comp is a connected component, so adjacency stays inside it; a
    # connected graph with max degree 2 and two degree-1 endpoints is a path
    degs = sorted(len(g.adj[v]) for v in comp)
    if degs[-1] > 2 or degs.count(1) != 2:
        return None
    return len(comp) - 1
