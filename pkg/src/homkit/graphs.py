"""Core graph representation and structural probes.

Graphs are finite, simple, and undirected, over dense vertex indices
0..n-1, with an optional self-loop flag per vertex.  Loops only matter
for edge membership (a pattern edge may map onto a looped vertex); no
operation ever produces multi-edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .errors import ExactnessUnavailable, InvalidColoring, SelfLoopRejection

Edge = tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with optional per-vertex self-loops."""

    vertex_count: int
    edges: frozenset[Edge]
    loops: frozenset[int] = frozenset()

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise ValueError("vertex_count must be non-negative")
        for u, v in self.edges:
            if not (0 <= u < v < n):
                raise ValueError(f"bad edge ({u},{v}) for n={n}")
        for u in self.loops:
            if not (0 <= u < n):
                raise ValueError(f"bad loop {u} for n={n}")

    @staticmethod
    def build(n: int, edges: Iterable[Sequence[int]] = (), loops: Iterable[int] = ()) -> "Graph":
        """Normalize arbitrary edge pairs; u==v pairs become loops."""
        es = set()
        ls = set(loops)
        for u, v in edges:
            if u == v:
                ls.add(u)
            else:
                es.add(_norm_edge(u, v))
        return Graph(n, frozenset(es), frozenset(ls))

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbr: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nbr[u].add(v)
            nbr[v].add(u)
        return tuple(frozenset(s) for s in nbr)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def is_simple(self) -> bool:
        return not self.loops

    def has_edge(self, u: int, v: int) -> bool:
        """Adjacency including loops: has_edge(u, u) iff u carries a loop."""
        if u == v:
            return u in self.loops
        return _norm_edge(u, v) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edge_list(self) -> list[Edge]:
        return sorted(self.edges)

    def vertices(self) -> range:
        return range(self.vertex_count)

    def components(self) -> list[list[int]]:
        seen = [False] * self.vertex_count
        out = []
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            q = deque([s])
            while q:
                u = q.popleft()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        q.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.vertex_count <= 1 or len(self.components()) == 1

    def relabeled(self, perm: Sequence[int]) -> "Graph":
        """Apply vertex relabeling v -> perm[v]."""
        return Graph.build(
            self.vertex_count,
            [(perm[u], perm[v]) for u, v in self.edges],
            [perm[u] for u in self.loops],
        )

    def induced(self, keep: Iterable[int]) -> "Graph":
        """Induced subgraph on ``keep``, reindexed in sorted order."""
        keep = sorted(set(keep))
        idx = {v: i for i, v in enumerate(keep)}
        ks = set(keep)
        return Graph.build(
            len(keep),
            [(idx[u], idx[v]) for u, v in self.edges if u in ks and v in ks],
            [idx[u] for u in self.loops if u in ks],
        )

    def without_vertices(self, drop: Iterable[int]) -> "Graph":
        ds = set(drop)
        return self.induced(v for v in self.vertices() if v not in ds)

    def with_all_loops(self) -> "Graph":
        return Graph(self.vertex_count, self.edges, frozenset(self.vertices()))

    def without_loops(self) -> "Graph":
        return Graph(self.vertex_count, self.edges, frozenset())

    def with_extra_edges(self, extra: Iterable[Sequence[int]]) -> "Graph":
        return Graph.build(
            self.vertex_count, list(self.edges) + [tuple(e) for e in extra], self.loops
        )


# ---------------------------------------------------------------------------
# named small graphs


def empty_graph(n: int = 0) -> Graph:
    return Graph.build(n)


def complete_graph(n: int) -> Graph:
    return Graph.build(n, combinations(range(n), 2))


def path_graph(num_edges: int) -> Graph:
    """Path with ``num_edges`` edges (num_edges + 1 vertices)."""
    return Graph.build(num_edges + 1, [(i, i + 1) for i in range(num_edges)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.build(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(rays: int) -> Graph:
    """K_{1,rays}: vertex 0 is the center."""
    return Graph.build(rays + 1, [(0, i) for i in range(1, rays + 1)])


# ---------------------------------------------------------------------------
# vertex colorings


@dataclass(frozen=True)
class VertexColoring:
    """A homomorphism from ``target`` into ``pattern`` (an H-coloring)."""

    target: Graph
    pattern: Graph
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.target.vertex_count:
            raise InvalidColoring("assignment length != target vertex count")
        for c in self.assignment:
            if not (0 <= c < self.pattern.vertex_count):
                raise InvalidColoring(f"color {c} out of range")
        for u, v in self.target.edges:
            if not self.pattern.has_edge(self.assignment[u], self.assignment[v]):
                raise InvalidColoring(
                    f"target edge ({u},{v}) maps to non-edge "
                    f"({self.assignment[u]},{self.assignment[v]})"
                )
        for u in self.target.loops:
            if self.assignment[u] not in self.pattern.loops:
                raise InvalidColoring(f"target loop {u} maps to non-loop")

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        """Vertices of the target grouped by color (index = pattern vertex)."""
        cls: list[list[int]] = [[] for _ in range(self.pattern.vertex_count)]
        for v, c in enumerate(self.assignment):
            cls[c].append(v)
        return tuple(tuple(c) for c in cls)

    def color_of(self, v: int) -> int:
        return self.assignment[v]


# ---------------------------------------------------------------------------
# set partitions


@dataclass(frozen=True)
class SetPartition:
    """A partition of {0..n-1} into non-empty disjoint blocks."""

    ground_size: int
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise ValueError("empty block")
            if b & seen:
                raise ValueError("blocks overlap")
            seen |= b
        if seen != set(range(self.ground_size)):
            raise ValueError("blocks do not cover the ground set")

    @staticmethod
    def from_blocks(ground_size: int, blocks: Iterable[Iterable[int]]) -> "SetPartition":
        bs = sorted((frozenset(b) for b in blocks), key=lambda b: min(b))
        return SetPartition(ground_size, tuple(bs))

    @staticmethod
    def singletons(n: int) -> "SetPartition":
        return SetPartition.from_blocks(n, [[i] for i in range(n)])

    def block_of(self, v: int) -> int:
        for i, b in enumerate(self.blocks):
            if v in b:
                return i
        raise KeyError(v)

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def is_discrete(self) -> bool:
        return self.block_count == self.ground_size


def set_partitions(n: int) -> Iterator[SetPartition]:
    """All partitions of {0..n-1} in restricted-growth-string lexicographic order."""
    if n == 0:
        yield SetPartition(0, ())
        return

    def rec(i: int, rgs: list[int], mx: int):
        if i == n:
            blocks: list[list[int]] = [[] for _ in range(mx + 1)]
            for v, b in enumerate(rgs):
                blocks[b].append(v)
            yield SetPartition.from_blocks(n, blocks)
            return
        for b in range(mx + 2):
            rgs.append(b)
            yield from rec(i + 1, rgs, max(mx, b))
            rgs.pop()

    yield from rec(1, [0], 0)


# ---------------------------------------------------------------------------
# algebraic constructions


def tensor_product(g: Graph, a: Graph) -> Graph:
    """Categorical product: (u,x) ~ (v,y) iff u~v in g and x~y in a.

    Vertex order is row-major with the g-index major.  A product vertex
    carries a loop iff both factors loop the corresponding side.
    """
    na = a.vertex_count
    edges = []
    for u, v in g.edges:
        for x, y in a.edges:
            edges.append((u * na + x, v * na + y))
            edges.append((u * na + y, v * na + x))
    for u, v in g.edges:
        for x in a.loops:
            edges.append((u * na + x, v * na + x))
    for x, y in a.edges:
        for u in g.loops:
            edges.append((u * na + x, u * na + y))
    loops = [u * na + x for u in g.loops for x in a.loops]
    return Graph.build(g.vertex_count * na, edges, loops)


def disjoint_union(parts: Sequence[Graph]) -> tuple[Graph, list[int]]:
    """Union with vertices relabeled by cumulative offsets.

    Returns the union and the offset table (one entry per part) so that
    components can be re-extracted.
    """
    offsets = []
    total = 0
    edges: list[Edge] = []
    loops: list[int] = []
    for p in parts:
        offsets.append(total)
        edges.extend((u + total, v + total) for u, v in p.edges)
        loops.extend(u + total for u in p.loops)
        total += p.vertex_count
    return Graph.build(total, edges, loops), offsets


def quotient(g: Graph, rho: SetPartition) -> Graph:
    """Identify vertices blockwise; multi-edges collapse.

    Raises SelfLoopRejection if a block contains an adjacent pair (the
    quotient would not be a spasm).
    """
    if rho.ground_size != g.vertex_count:
        raise ValueError("partition ground size mismatch")
    if not g.is_simple:
        raise ValueError("quotient requires a simple graph")
    block_idx = {}
    for i, b in enumerate(rho.blocks):
        for v in b:
            block_idx[v] = i
    edges = set()
    for u, v in g.edges:
        bu, bv = block_idx[u], block_idx[v]
        if bu == bv:
            raise SelfLoopRejection(f"block {bu} contains adjacent pair ({u},{v})")
        edges.add(_norm_edge(bu, bv))
    return Graph(rho.block_count, frozenset(edges))


def spasm_partitions(g: Graph) -> Iterator[SetPartition]:
    """Partitions whose quotient is loop-free (every block independent in g)."""
    for rho in set_partitions(g.vertex_count):
        ok = True
        for b in rho.blocks:
            if len(b) > 1:
                bl = sorted(b)
                if any(g.has_edge(u, v) for u, v in combinations(bl, 2)):
                    ok = False
                    break
        if ok:
            yield rho


# ---------------------------------------------------------------------------
# structural probes


def bipartition(g: Graph) -> Optional[tuple[int, ...]]:
    """A proper 2-coloring of g, or None if g has an odd closed walk."""
    if g.loops:
        return None
    color = [-1] * g.vertex_count
    for s in g.vertices():
        if color[s] >= 0:
            continue
        color[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for w in g.adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    q.append(w)
                elif color[w] == color[u]:
                    return None
    return tuple(color)


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def _walk_to_odd_cycle(walk: list[int]) -> list[int]:
    # walk is a closed odd walk (first == last); cut at repeated vertices
    # until simple.  One of the two closed sub-walks at a repeat is odd.
    walk = walk[:-1]
    while True:
        pos: dict[int, int] = {}
        rep = None
        for i, v in enumerate(walk):
            if v in pos:
                rep = (pos[v], i)
                break
            pos[v] = i
        if rep is None:
            return walk
        i, j = rep
        inner = walk[i:j]
        outer = walk[:i] + walk[j:]
        walk = inner if len(inner) % 2 == 1 else outer


def odd_girth(
    g: Graph,
    single_source: bool = False,
    with_witness: bool = False,
):
    """Length of the shortest odd cycle, or None if bipartite.

    ``single_source=True`` runs one BFS from vertex 0 only; this equals the
    true odd girth when the caller asserts the graph is vertex-transitive.
    With ``with_witness=True`` returns (length, cycle-vertex-list).
    """
    if g.loops:
        raise ValueError("odd_girth requires a simple graph")
    n = g.vertex_count
    best: Optional[int] = None
    best_cycle: Optional[list[int]] = None
    sources = [0] if (single_source and n > 0) else list(range(n))
    for s in sources:
        dist = [-1] * n
        parent = [-1] * n
        dist[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
        for u, v in g.edges:
            if dist[u] >= 0 and dist[u] == dist[v]:
                length = 2 * dist[u] + 1
                if best is None or length < best:
                    best = length
                    if with_witness:
                        best_cycle = _extract_cycle(u, v, parent)
        if best == 3:
            break
    if best is None:
        return (None, None) if with_witness else None
    return (best, best_cycle) if with_witness else best


def _extract_cycle(u: int, v: int, parent: list[int]) -> list[int]:
    # closed odd walk: tree path s..u, edge u-v, tree path v..s
    pu = []
    x = u
    while x != -1:
        pu.append(x)
        x = parent[x]
    pv = []
    x = v
    while x != -1:
        pv.append(x)
        x = parent[x]
    # pu[::-1] runs s..u, pv runs v..s: already a closed odd walk
    return _walk_to_odd_cycle(pu[::-1] + pv)


def verify_odd_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    """Check that ``cycle`` is a simple odd cycle in g."""
    k = len(cycle)
    if k < 3 or k % 2 == 0 or len(set(cycle)) != k:
        return False
    return all(g.has_edge(cycle[i], cycle[(i + 1) % k]) for i in range(k))


@dataclass(frozen=True)
class ChromaticResult:
    value: int
    witness: tuple[int, ...]
    exact: bool


def _greedy_clique(g: Graph) -> list[int]:
    order = sorted(g.vertices(), key=g.degree, reverse=True)
    clique: list[int] = []
    for v in order:
        if all(g.has_edge(v, u) for u in clique):
            clique.append(v)
    return clique


def _k_coloring(g: Graph, k: int) -> Optional[tuple[int, ...]]:
    n = g.vertex_count
    order = sorted(g.vertices(), key=g.degree, reverse=True)
    color = [-1] * n

    def rec(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        banned = {color[u] for u in g.adj[v] if color[u] >= 0}
        for c in range(min(used + 1, k)):
            if c in banned:
                continue
            color[v] = c
            if rec(i + 1, max(used, c + 1)):
                return True
            color[v] = -1
        return False

    return tuple(color) if rec(0, 0) else None


def chromatic_number(
    g: Graph,
    upper_hint: Optional[Sequence[int]] = None,
    exact_threshold: int = 20,
) -> ChromaticResult:
    """Exact chromatic number below the threshold; witness-validated bound above.

    Above the threshold, a supplied hint coloring is validated and returned
    as an upper bound; the bound is certified exact when it matches a cheap
    lower bound (<= 2, or 3 with bipartiteness failing).
    """
    if g.loops:
        raise ValueError("chromatic_number requires a loop-free graph")
    n = g.vertex_count
    if n == 0:
        return ChromaticResult(0, (), True)
    if not g.edges:
        return ChromaticResult(1, (0,) * n, True)
    bip = bipartition(g)
    if bip is not None:
        return ChromaticResult(2, bip, True)
    if n <= exact_threshold:
        lb = max(3, len(_greedy_clique(g)))
        k = lb
        while True:
            w = _k_coloring(g, k)
            if w is not None:
                return ChromaticResult(k, w, True)
            k += 1
    if upper_hint is None:
        raise ExactnessUnavailable(
            f"graph has {n} > {exact_threshold} vertices and no hint coloring"
        )
    hint = tuple(upper_hint)
    for u, v in g.edges:
        if hint[u] == hint[v]:
            raise InvalidColoring(f"hint colors edge ({u},{v}) monochromatically")
    ub = len(set(hint))
    return ChromaticResult(ub, hint, exact=(ub == 3))


def is_core(h: Graph, budget: int = 10) -> bool:
    """True iff every endomorphism of h is bijective (brute-force search)."""
    from .errors import BudgetExceeded

    if not h.is_simple:
        raise ValueError("is_core requires a simple graph")
    n = h.vertex_count
    if n > budget:
        raise BudgetExceeded(f"is_core budget {budget} < {n} vertices")
    if n == 0:
        return True
    order: list[int] = []
    seen: set[int] = set()
    for comp in h.components():
        s = comp[0]
        seen.add(s)
        order.append(s)
        q = deque([s])
        while q:
            u = q.popleft()
            for w in sorted(h.adj[u]):
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    q.append(w)
    img = [-1] * n

    def rec(i: int) -> bool:
        # returns True iff a non-bijective endomorphism exists in this branch
        if i == n:
            return len(set(img)) != n
        v = order[i]
        placed = [u for u in h.adj[v] if img[u] >= 0]
        for c in h.vertices():
            if all(h.has_edge(img[u], c) for u in placed):
                img[v] = c
                if rec(i + 1):
                    return True
                img[v] = -1
        return False

    return not rec(0)
