"""Executable reduction constructions.

Four pieces of machinery:

* clique counting re-expressed as color-prescribed grid homomorphisms
  (with a connectifying preprocessing step),
* the crown gadget turning a grid-colored graph into a König graph with
  a constructive bipartite witness, plus the colorful-count pipeline
  that recovers clique numbers through it,
* the universality encoding of (instance, parameter) pairs into graph
  pairs over an antichain family, with the eight-step decoder,
* no-homomorphism certificates from odd-girth and chromatic gaps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Optional, Union

from .canon import automorphism_count, is_isomorphic
from .counting import MapKind, colorful_incl_excl, count_maps
from .errors import BudgetExceeded, DecodeFailure, InvalidColoring
from .generators import decode_string, encode_string, grid, kneser_family
from .graphs import (
    Graph,
    VertexColoring,
    bipartition,
    chromatic_number,
    complete_graph,
    cycle_graph,
    disjoint_union,
    odd_girth,
    path_graph,
    verify_odd_cycle,
)

Edge = tuple[int, int]

# ---------------------------------------------------------------------------
# clique -> color-prescribed grid homomorphisms


def connectify_clique(g: Graph, k: int) -> tuple[Graph, int]:
    """Connected instance with the same clique count.

    k=1 and k=2 reroute to 2-clique counting on paths (vertex and edge
    counts become path edge counts); for k>=3 components are chained by
    bridge edges, which cannot create or destroy k-cliques.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return path_graph(g.vertex_count), 2
    if k == 2:
        return path_graph(g.edge_count), 2
    comps = g.components()
    if len(comps) <= 1:
        return g, k
    bridges = [(comps[i][0], comps[i + 1][0]) for i in range(len(comps) - 1)]
    return g.with_extra_edges(bridges), k


@dataclass(frozen=True)
class GridColoredInstance:
    k: int
    graph: Graph
    coloring: VertexColoring  # into grid(k)
    normalizer: Fraction

    def __post_init__(self):
        if self.coloring.target is not self.graph and self.coloring.target != self.graph:
            raise InvalidColoring("coloring target mismatch")


def clique_to_cpgrid(g: Graph, k: int) -> GridColoredInstance:
    """Color-prescribed grid instance whose cp-hom count is k! times the
    k-clique count of g.

    Diagonal classes hold vertex pairs (v,v); off-diagonal classes hold
    both orientations of every edge.  Edges join grid-adjacent classes
    when the coordinate of the shared grid index agrees (first
    coordinate tracks the row, second the column).
    """
    if k < 3:
        raise ValueError("use connectify_clique rerouting below k=3")
    if not g.is_simple:
        raise ValueError("clique counting requires a simple graph")
    gk = grid(k)
    cells: list[list[tuple[int, int]]] = []
    ordered_edges = sorted(
        [(u, v) for u, v in g.edges] + [(v, u) for u, v in g.edges]
    )
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if i == j:
                cells.append([(v, v) for v in g.vertices()])
            else:
                cells.append(list(ordered_edges))
    offsets = []
    total = 0
    for cell in cells:
        offsets.append(total)
        total += len(cell)
    edges: list[Edge] = []
    for ci in range(k * k):
        i1, j1 = gk.coords[ci]
        for cj in range(ci + 1, k * k):
            i2, j2 = gk.coords[cj]
            if abs(i1 - i2) + abs(j1 - j2) != 1:
                continue
            same_row = i1 == i2
            for a, (r1, c1) in enumerate(cells[ci]):
                for b, (r2, c2) in enumerate(cells[cj]):
                    if (same_row and r1 == r2) or (not same_row and c1 == c2):
                        edges.append((offsets[ci] + a, offsets[cj] + b))
    graph = Graph.build(total, edges)
    assignment = []
    for ci in range(k * k):
        assignment.extend([ci] * len(cells[ci]))
    coloring = VertexColoring(graph, gk.graph, tuple(assignment))
    return GridColoredInstance(k, graph, coloring, Fraction(1, factorial(k)))


# ---------------------------------------------------------------------------
# the crown gadget

RIGHT, LEFT, UP, DOWN, NW, SE = "right", "left", "up", "down", "nw", "se"
DIR_DELTA = {RIGHT: (0, 1), LEFT: (0, -1), UP: (-1, 0), DOWN: (1, 0)}
OPPOSITE = {RIGHT: LEFT, LEFT: RIGHT, UP: DOWN, DOWN: UP}
DIR_ORDER = (RIGHT, LEFT, UP, DOWN, NW, SE)


def _cell_dirs(i: int, j: int, k: int) -> list[str]:
    out = [
        d
        for d in (RIGHT, LEFT, UP, DOWN)
        if 1 <= i + DIR_DELTA[d][0] <= k and 1 <= j + DIR_DELTA[d][1] <= k
    ]
    if 1 < i < k and 1 < j < k:
        out.extend([NW, SE])
    return out


def crown_grid_layout(k: int) -> list[tuple[tuple[int, int], str]]:
    """Canonical vertex order of the crown grid: cells row-major, roles
    in direction order."""
    if k < 2:
        raise ValueError("crown grids start at k=2")
    layout = []
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            for d in DIR_ORDER:
                if d in _cell_dirs(i, j, k):
                    layout.append(((i, j), d))
    return layout


@dataclass(frozen=True)
class CrownOutput:
    k: int
    crown: Graph
    coloring_hat: VertexColoring  # into the looped crown grid
    bipartite_witness: Graph
    witness_edge_map: tuple[Edge, ...]  # crown vertex -> witness edge
    witness_two_coloring: tuple[int, ...]
    gadget_index: tuple[tuple[int, str], ...]  # crown vertex -> (source vertex, role)


def _build_crown_parts(instance: GridColoredInstance):
    """Crown graph, hat assignment, bipartite witness, and gadget metadata.

    Corner and border gadgets are single cliques over the direction
    copies; interior gadgets split into a nw-side clique (left/up) and a
    se-side clique (right/down) joined by one edge.  Each source edge
    contributes one matching edge between opposite copies.  The
    bipartite witness is built directly: gadget cliques become star
    centers, matched ray endpoints merge.
    """
    k = instance.k
    g = instance.graph
    assignment = instance.coloring.assignment
    gk = grid(k)
    layout = crown_grid_layout(k)
    layout_index = {cd: i for i, cd in enumerate(layout)}

    vertices: list[tuple[int, int, str]] = []  # (source v, witness u, role)
    vid: dict[tuple[int, int, str], int] = {}
    gadget_index: list[tuple[int, str]] = []
    hat: list[int] = []

    def add_vertex(v: int, u: int, role: str):
        key = (v, u, role)
        vid[key] = len(vertices)
        vertices.append(key)
        gadget_index.append((v, role))
        cell = gk.coords[assignment[v]]
        hat.append(layout_index[(cell, role)])

    for v in g.vertices():
        i, j = gk.coords[assignment[v]]
        for d in _cell_dirs(i, j, k):
            if d in (NW, SE):
                add_vertex(v, v, d)
            else:
                di, dj = DIR_DELTA[d]
                cell_idx = (i + di - 1) * k + (j + dj - 1)
                for u in sorted(g.adj[v]):
                    if assignment[u] == cell_idx:
                        add_vertex(v, u, d)

    edges: set[Edge] = set()
    cliques: list[list[int]] = []
    clique_of = [-1] * len(vertices)

    def add_clique(members: list[int]):
        if not members:
            return
        ci = len(cliques)
        cliques.append(members)
        for m in members:
            clique_of[m] = ci
        for a in members:
            for b in members:
                if a < b:
                    edges.add((a, b))

    for v in g.vertices():
        i, j = gk.coords[assignment[v]]
        dirs = _cell_dirs(i, j, k)
        copies = {
            d: [vid[key] for key in vertices if key[0] == v and key[2] == d]
            for d in dirs
        }
        if NW in dirs:
            side_nw = copies[NW] + [
                m for d in (LEFT, UP) if d in dirs for m in copies[d]
            ]
            side_se = copies[SE] + [
                m for d in (RIGHT, DOWN) if d in dirs for m in copies[d]
            ]
            add_clique(sorted(side_nw))
            add_clique(sorted(side_se))
        else:
            add_clique(sorted(m for d in dirs for m in copies[d]))

    ray_partner: dict[int, int] = {}

    def add_ray(a: int, b: int):
        edges.add((a, b) if a < b else (b, a))
        ray_partner[a] = b
        ray_partner[b] = a

    for v in g.vertices():
        i, j = gk.coords[assignment[v]]
        if NW in _cell_dirs(i, j, k):
            add_ray(vid[(v, v, NW)], vid[(v, v, SE)])
    for u, v in g.edges:
        cu, cv = gk.coords[assignment[u]], gk.coords[assignment[v]]
        delta = (cv[0] - cu[0], cv[1] - cu[1])
        for d, dd in DIR_DELTA.items():
            if dd == delta:
                add_ray(vid[(u, v, d)], vid[(v, u, OPPOSITE[d])])
                break
        else:
            raise InvalidColoring("source edge joins non-adjacent grid cells")

    crown_graph = Graph.build(len(vertices), edges)

    # bipartite witness: one node per clique, one per matched ray pair,
    # one private endpoint per unmatched crown vertex
    n_nodes = len(cliques)
    pair_node: dict[int, int] = {}
    witness_edges: list[Edge] = []
    edge_map: list[Edge] = []
    for x in range(len(vertices)):
        if x in pair_node:
            endpoint = pair_node[x]
        elif x in ray_partner:
            endpoint = n_nodes
            n_nodes += 1
            pair_node[x] = endpoint
            pair_node[ray_partner[x]] = endpoint
        else:
            endpoint = n_nodes
            n_nodes += 1
            pair_node[x] = endpoint
        e = (clique_of[x], endpoint)
        witness_edges.append(e)
        edge_map.append(e)
    witness = Graph.build(n_nodes, witness_edges)
    two_coloring = tuple(0 if i < len(cliques) else 1 for i in range(n_nodes))
    return crown_graph, tuple(hat), witness, tuple(edge_map), two_coloring, tuple(
        gadget_index
    )


def crown(instance: GridColoredInstance) -> CrownOutput:
    """Replace every vertex of a grid-colored graph by its gadget; see
    _build_crown_parts for the construction."""
    k = instance.k
    crown_graph, hat, witness, edge_map, two_coloring, gadget_index = (
        _build_crown_parts(instance)
    )
    pattern = crown_grid(k, looped=True)
    coloring_hat = VertexColoring(crown_graph, pattern.graph, hat)
    return CrownOutput(
        k,
        crown_graph,
        coloring_hat,
        witness,
        edge_map,
        two_coloring,
        gadget_index,
    )


@dataclass(frozen=True)
class CrownGrid:
    k: int
    graph: Graph
    labels: tuple[tuple[tuple[int, int], str], ...]  # vertex -> (cell, role)


def _identity_grid_instance(k: int) -> GridColoredInstance:
    gk = grid(k)
    coloring = VertexColoring(gk.graph, gk.graph, tuple(range(k * k)))
    return GridColoredInstance(k, gk.graph, coloring, Fraction(1, factorial(k)))


@lru_cache(maxsize=None)
def crown_grid(k: int, looped: bool = False) -> CrownGrid:
    """Crown of the k x k grid under the identity coloring."""
    if k < 2:
        raise ValueError("crown grids start at k=2")
    layout = crown_grid_layout(k)
    g, hat, _, _, _, _ = _build_crown_parts(_identity_grid_instance(k))
    # the construction enumerates grid vertices in layout order, so the
    # self-coloring must be the identity
    assert hat == tuple(range(g.vertex_count))
    if looped:
        g = g.with_all_loops()
    return CrownGrid(k, g, tuple(layout))


def crown_colorful_count(
    crowned: CrownOutput,
    mode: str = "auto",
    hom_oracle: Optional[Callable[[Graph], int]] = None,
    incl_excl_budget: int = 16,
) -> int:
    """Colorful homomorphism count from the loopless crown grid into the
    crown, via subset inclusion-exclusion when the crown grid fits the
    2^n budget, else by exact color-distinct backtracking."""
    pattern = crown_grid(crowned.k, looped=False).graph
    coloring = VertexColoring(
        crowned.crown, pattern.with_all_loops(), crowned.coloring_hat.assignment
    )
    if mode == "auto":
        mode = "incl-excl" if pattern.vertex_count <= incl_excl_budget else "backtracking"
    if mode == "incl-excl":
        oracle = hom_oracle or (
            lambda t: count_maps(MapKind.HOM, pattern, t, budget=pattern.vertex_count)
        )
        return colorful_incl_excl(
            pattern, crowned.crown, coloring, oracle, budget=incl_excl_budget
        )
    if mode == "backtracking":
        return count_maps(MapKind.COLORFUL, pattern, crowned.crown, coloring=coloring)
    raise ValueError(mode)


def koenig_hardness_pipeline(
    g: Graph,
    k: int,
    hom_oracle: Optional[Callable[[Graph], int]] = None,
    colorful_mode: str = "auto",
) -> int:
    """k-clique count recovered through the König-graph chain:
    connectify, grid-color, crown, colorful count, automorphism
    division, k! normalization."""
    g2, k2 = connectify_clique(g, k)
    if k <= 2:
        # the reroute turned the answer into a path edge count
        return g2.edge_count
    instance = clique_to_cpgrid(g2, k2)
    crowned = crown(instance)
    pattern = crown_grid(k, looped=False).graph
    colorful = crown_colorful_count(crowned, mode=colorful_mode, hom_oracle=hom_oracle)
    auts = automorphism_count(pattern)
    cp, r = divmod(colorful, auts)
    if r:
        raise AssertionError("automorphism count does not divide the colorful count")
    cliques, r = divmod(cp, factorial(k))
    if r:
        raise AssertionError("k! does not divide the color-prescribed count")
    return cliques


# ---------------------------------------------------------------------------
# graph families for the universality encoding


def grotzsch_graph() -> Graph:
    """11 vertices, triangle-free, chromatic number 4, odd girth 5."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    for i in range(5):
        edges.append((5 + i, (i + 1) % 5))
        edges.append((5 + i, (i - 1) % 5))
        edges.append((10, 5 + i))
    return Graph.build(11, edges)


class GraphFamily:
    """Index -> graph map used by the universality encoder and decoder.

    Members must be pairwise non-isomorphic, connected, non-bipartite,
    and never paths; recognition inverts the index map.
    """

    name = "abstract"

    def member(self, n: int) -> Graph:
        raise NotImplementedError

    def recognize(self, g: Graph) -> Optional[int]:
        raise NotImplementedError

    def aut_count(self, n: int) -> int:
        raise NotImplementedError


class ToyFamily(GraphFamily):
    """Desk-scale family: 3 -> K_3, 4 -> the 11-vertex triangle-free
    4-chromatic graph, n >= 5 -> C_{2n+1}.

    The pair {3, 4} is a certified homomorphism antichain (chromatic gap
    4 > 3 one way, odd-girth gap 3 < 5 the other).  Higher indices are
    recognition-grade only.  ``kneser_indices`` swaps in the true Kneser
    family member for selected indices.
    """

    name = "toy"

    def __init__(self, kneser_indices: frozenset[int] = frozenset(), max_index: int = 12):
        self.kneser_indices = frozenset(kneser_indices)
        self.max_index = max_index
        self._aut_cache: dict[int, int] = {}

    def member(self, n: int) -> Graph:
        if n < 3 or n > self.max_index:
            raise ValueError(f"index {n} outside 3..{self.max_index}")
        if n in self.kneser_indices:
            return kneser_family(n).graph
        if n == 3:
            return complete_graph(3)
        if n == 4:
            return grotzsch_graph()
        return cycle_graph(2 * n + 1)

    def recognize(self, g: Graph) -> Optional[int]:
        for n in range(3, self.max_index + 1):
            if n in self.kneser_indices:
                if _kneser_fingerprint_matches(g, n):
                    return n
                continue
            m = self.member(n)
            if (
                g.vertex_count == m.vertex_count
                and g.edge_count == m.edge_count
                and is_isomorphic(g, m)
            ):
                return n
        return None

    def aut_count(self, n: int) -> int:
        if n not in self._aut_cache:
            self._aut_cache[n] = automorphism_count(self.member(n))
        return self._aut_cache[n]


class KneserIndexFamily(GraphFamily):
    """The doubly-indexed Kneser family K(n) = K((2n+1)(n-2), n(n-2))."""

    name = "kneser"

    def __init__(self, vertex_budget: int = 50_000, max_index: int = 8):
        self.vertex_budget = vertex_budget
        self.max_index = max_index
        self._aut_cache: dict[int, int] = {}

    def member(self, n: int) -> Graph:
        return kneser_family(n, vertex_budget=self.vertex_budget).graph

    def recognize(self, g: Graph) -> Optional[int]:
        for n in range(3, self.max_index + 1):
            if _kneser_fingerprint_matches(g, n):
                return n
        return None

    def aut_count(self, n: int) -> int:
        if n not in self._aut_cache:
            self._aut_cache[n] = automorphism_count(self.member(n))
        return self._aut_cache[n]


def _kneser_fingerprint_matches(g: Graph, n: int) -> bool:
    """Arithmetic fingerprint, plus full isomorphism up to 100 vertices.

    Sound under the encoder's promise: vertex count C(r,s), regular of
    degree C(r-s,s) with the family parameters for index n.
    """
    r, s = (2 * n + 1) * (n - 2), n * (n - 2)
    if g.vertex_count != comb(r, s):
        return False
    deg = comb(r - s, s)
    if any(g.degree(v) != deg for v in g.vertices()):
        return False
    if g.loops:
        return False
    if g.vertex_count <= 100:
        return is_isomorphic(g, kneser_family(n).graph)
    return True


# ---------------------------------------------------------------------------
# universality encoding / decoding


def pair_encode(x: str, pattern_index: int) -> str:
    """Sentinel 1-bit, unary length of x terminated by 0, x, then the
    pattern index in binary.  The sentinel guarantees a set bit."""
    if not x or any(c not in "01" for c in x):
        raise ValueError("x must be a non-empty bit string")
    if pattern_index < 1:
        raise ValueError("pattern index must be positive")
    return "1" + "1" * len(x) + "0" + x + bin(pattern_index)[2:]


def pair_decode(s: str) -> Optional[tuple[str, int]]:
    if not s or s[0] != "1":
        return None
    i = 1
    while i < len(s) and s[i] == "1":
        i += 1
    if i >= len(s) or s[i] != "0":
        return None
    length = i - 1
    start = i + 1
    x = s[start : start + length]
    if len(x) != length or length == 0:
        return None
    rest = s[start + length :]
    if not rest or rest[0] != "1":
        return None
    return x, int(rest, 2)


def _is_pathlike(g: Graph, comp: list[int]) -> bool:
    if len(comp) == 1:
        return True
    degs = sorted(g.degree(v) for v in comp)
    return degs[-1] <= 2 and degs.count(1) == 2


@dataclass(frozen=True)
class UniversalityInstance:
    """A decoded or to-be-encoded bundle: instance string, parameter,
    even-index pattern, connected pattern-colorable target, non-zero
    normalizer."""

    x: str
    kappa: int
    pattern_index: int
    pattern: Graph
    target: Graph
    target_coloring: tuple[int, ...]
    normalizer: Fraction

    def __post_init__(self):
        if self.kappa < 0:
            raise ValueError("parameter must be non-negative")
        if self.pattern_index % 2 != 0:
            raise ValueError("pattern index must be even")
        if self.normalizer == 0:
            raise ValueError("normalizer must be non-zero")
        if not self.target.is_connected() or self.target.vertex_count == 0:
            raise ValueError("target must be connected and non-empty")
        if _is_pathlike(self.target, list(self.target.vertices())):
            raise ValueError("target must not be a path (decoder ambiguity)")
        VertexColoring(self.target, self.pattern, self.target_coloring)

    @property
    def companion_index(self) -> int:
        return 2 * self.kappa + 3


@dataclass(frozen=True)
class EncodedPair:
    pattern_side: Graph  # H_x union companion
    target_side: Graph  # G_x union enc union companion


def universality_encode(
    inst: UniversalityInstance, family: GraphFamily
) -> EncodedPair:
    """Pattern side: H_x plus the odd companion; target side: G_x plus
    the encoded pair string plus the companion."""
    if family.member(inst.pattern_index).vertex_count != inst.pattern.vertex_count:
        raise ValueError("instance pattern does not match the family member")
    companion = family.member(inst.companion_index)
    hhat, _ = disjoint_union([inst.pattern, companion])
    enc = encode_string(pair_encode(inst.x, inst.pattern_index))
    ghat, _ = disjoint_union([inst.target, enc, companion])
    return EncodedPair(hhat, ghat)


@dataclass(frozen=True)
class DecodeReject:
    step: int
    reason: str


@dataclass(frozen=True)
class DecodedInstance:
    x: str
    kappa: int
    pattern_index: int
    factor: Fraction  # Aut(companion) / g(x)
    target: Graph


DecodeOutcome = Union[DecodedInstance, DecodeReject]


def universality_decode(
    h: Graph,
    g: Graph,
    family: GraphFamily,
    kappa_fn: Callable[[str], int],
    normalizer_fn: Callable[[str], Fraction],
) -> DecodeOutcome:
    """The eight-step decoder; any failed check rejects with its step.

    1. the pattern side splits into an even- and an odd-index member;
    2. the target side splits into paths/isolated vertices plus exactly
       two non-path components;
    3. one of those components matches the odd member;
    4. the path part decodes to a pair (x, pattern index);
    5. the parameter of x matches the odd index;
    6. the decoded pattern index matches the even member;
    7. the normalizer of x is non-zero;
    8. emit x, the parameter, and Aut(companion)/g(x).
    """
    comps_h = [h.induced(c) for c in h.components()]
    if len(comps_h) != 2:
        return DecodeReject(1, f"pattern side has {len(comps_h)} components")
    recognized = [family.recognize(c) for c in comps_h]
    if None in recognized:
        return DecodeReject(1, "unrecognized pattern-side component")
    evens = [n for n in recognized if n % 2 == 0]
    odds = [n for n in recognized if n % 2 == 1]
    if len(evens) != 1 or len(odds) != 1:
        return DecodeReject(1, f"need one even and one odd index, got {recognized}")
    a, b = evens[0], odds[0]

    path_comps: list[list[int]] = []
    other_comps: list[list[int]] = []
    for comp in g.components():
        (path_comps if _is_pathlike(g, comp) else other_comps).append(comp)
    if len(other_comps) != 2:
        return DecodeReject(2, f"target side has {len(other_comps)} non-path components")

    candidates = [g.induced(c) for c in other_comps]
    match = next(
        (i for i, cand in enumerate(candidates) if family.recognize(cand) == b), None
    )
    if match is None:
        return DecodeReject(3, "no component matches the odd member")
    target = candidates[1 - match]

    if not path_comps:
        return DecodeReject(4, "empty path set")
    flat = sorted(v for comp in path_comps for v in comp)
    try:
        s = decode_string(g.induced(flat))
    except DecodeFailure as e:
        return DecodeReject(4, f"string decode failed: {e.reason}")
    if not any(c == "1" for c in s):
        return DecodeReject(4, "empty path set")
    pair = pair_decode(s)
    if pair is None:
        return DecodeReject(4, "pair decode failed")
    x, decoded_index = pair

    kappa = kappa_fn(x)
    if 2 * kappa + 3 != b:
        return DecodeReject(5, f"parameter gives companion {2 * kappa + 3}, found {b}")
    if decoded_index != a:
        return DecodeReject(6, f"encoded pattern index {decoded_index} != {a}")
    gval = normalizer_fn(x)
    if gval == 0:
        return DecodeReject(7, "normalizer is zero")
    factor = Fraction(family.aut_count(b)) / gval
    return DecodedInstance(x, kappa, a, factor, target)


# ---------------------------------------------------------------------------
# a concrete desk-scale problem bundle: counting k-cliques


@dataclass(frozen=True)
class ProblemBundle:
    """Callback bundle modelling an abstract parameterized counting
    problem: parameter, normalizer, and instance construction."""

    family: GraphFamily
    kappa: Callable[[str], int]
    normalizer: Callable[[str], Fraction]
    build: Callable[[str], Optional[UniversalityInstance]]
    answer: Callable[[str], int]  # the ground-truth problem value F(x)


def parse_clique_instance(x: str) -> Optional[tuple[Graph, int]]:
    """Instance format: unary k, then unary n, then C(n,2) adjacency bits."""
    i = 0
    while i < len(x) and x[i] == "1":
        i += 1
    if i == 0 or i >= len(x) or x[i] != "0":
        return None
    k = i
    j = i + 1
    while j < len(x) and x[j] == "1":
        j += 1
    if j >= len(x) or x[j] != "0":
        return None
    n = j - i - 1
    bits = x[j + 1 :]
    if len(bits) != n * (n - 1) // 2:
        return None
    edges = []
    pos = 0
    for u in range(n):
        for v in range(u + 1, n):
            if bits[pos] == "1":
                edges.append((u, v))
            pos += 1
    return Graph.build(n, edges), k


def format_clique_instance(g: Graph, k: int) -> str:
    bits = []
    for u in range(g.vertex_count):
        for v in range(u + 1, g.vertex_count):
            bits.append("1" if g.has_edge(u, v) else "0")
    return "1" * k + "0" + "1" * g.vertex_count + "0" + "".join(bits)


def toy_clique_bundle(family: Optional[GraphFamily] = None) -> ProblemBundle:
    """k-clique counting routed through the grid reduction, wrapped into
    the family encoding: the pattern and target are the index-4 member
    (a core), and the clique count moves into the normalizer."""
    fam = family or ToyFamily()

    def kappa(x: str) -> int:
        parsed = parse_clique_instance(x)
        return parsed[1] if parsed else 0

    def clique_count(x: str) -> int:
        parsed = parse_clique_instance(x)
        if parsed is None:
            return 0
        g, k = parsed
        g2, k2 = connectify_clique(g, k)
        if k <= 2:
            return g2.edge_count
        inst = clique_to_cpgrid(g2, k2)
        cp = count_maps(
            MapKind.CPHOM, grid(k2).graph, inst.graph, coloring=inst.coloring
        )
        count, r = divmod(cp, factorial(k2))
        assert r == 0
        return count

    pattern = fam.member(4)
    pattern_auts = automorphism_count(pattern)

    def normalizer(x: str) -> Fraction:
        return Fraction(clique_count(x), pattern_auts)

    def build(x: str) -> Optional[UniversalityInstance]:
        c = clique_count(x)
        if c == 0:
            return None
        return UniversalityInstance(
            x=x,
            kappa=kappa(x),
            pattern_index=4,
            pattern=pattern,
            target=pattern,
            target_coloring=tuple(range(pattern.vertex_count)),
            normalizer=Fraction(c, pattern_auts),
        )

    return ProblemBundle(fam, kappa, normalizer, build, clique_count)


# ---------------------------------------------------------------------------
# no-homomorphism certificates


@dataclass(frozen=True)
class ChromaticGap:
    pattern_lower: int
    target_upper: int
    pattern_lower_source: str  # "exact" | "trusted"
    target_witness: tuple[int, ...]


@dataclass(frozen=True)
class OddGirthGap:
    pattern_odd_girth: int
    pattern_cycle: tuple[int, ...]
    target_odd_girth: Optional[int]  # None encodes infinity (bipartite target)


Certificate = Union[ChromaticGap, OddGirthGap]


def no_hom_certificate(
    h: Graph,
    g: Graph,
    target_coloring_hint: Optional[tuple[int, ...]] = None,
    pattern_chromatic_lower_trusted: Optional[int] = None,
    target_vertex_transitive: bool = False,
    chromatic_threshold: int = 20,
) -> Optional[Certificate]:
    """A sound, independently checkable witness that no homomorphism
    h -> g exists, or None (inconclusive).

    Odd-girth gap: an explicit odd cycle in h shorter than the exact odd
    girth of g.  Chromatic gap: a verified (or caller-trusted) lower
    bound on the pattern's chromatic number exceeding a validated proper
    coloring of the target.
    """
    og_h, cycle = odd_girth(h, with_witness=True)
    if og_h is not None:
        og_g = odd_girth(g, single_source=target_vertex_transitive)
        if og_g is None or og_h < og_g:
            assert verify_odd_cycle(h, cycle)
            return OddGirthGap(og_h, tuple(cycle), og_g)

    upper: Optional[int] = None
    witness: Optional[tuple[int, ...]] = None
    if target_coloring_hint is not None:
        VertexColoring(g, complete_graph(max(target_coloring_hint) + 1), target_coloring_hint)
        upper = len(set(target_coloring_hint))
        witness = tuple(target_coloring_hint)
    elif g.vertex_count <= chromatic_threshold:
        res = chromatic_number(g, exact_threshold=chromatic_threshold)
        upper, witness = res.value, res.witness

    lower: Optional[int] = None
    source = "exact"
    if pattern_chromatic_lower_trusted is not None:
        lower = pattern_chromatic_lower_trusted
        source = "trusted"
    elif h.vertex_count <= chromatic_threshold:
        lower = chromatic_number(h, exact_threshold=chromatic_threshold).value

    if lower is not None and upper is not None and lower > upper:
        return ChromaticGap(lower, upper, source, witness)
    return None


def verify_certificate(cert: Certificate, h: Graph, g: Graph) -> bool:
    """Re-check the checkable parts of a certificate."""
    if isinstance(cert, OddGirthGap):
        if not verify_odd_cycle(h, list(cert.pattern_cycle)):
            return False
        if len(cert.pattern_cycle) != cert.pattern_odd_girth:
            return False
        return cert.target_odd_girth is None or (
            cert.pattern_odd_girth < cert.target_odd_girth
        )
    if isinstance(cert, ChromaticGap):
        try:
            VertexColoring(
                g, complete_graph(max(cert.target_witness) + 1), cert.target_witness
            )
        except InvalidColoring:
            return False
        if len(set(cert.target_witness)) > cert.target_upper:
            return False
        return cert.pattern_lower > cert.target_upper
    return False
