"""Canonical forms, isomorphism testing, and automorphism counting.

Small graphs (n <= 8) are canonicalized by an exhaustive minimum
adjacency string over all vertex permutations.  Larger graphs use
individualization-refinement: stable color refinement, branching on
every vertex of the first non-singleton cell, taking the minimum leaf
string.  The leaf set is isomorphism-invariant, so equal forms are
equivalent to isomorphism in both regimes.
"""

from __future__ import annotations

from itertools import permutations
from typing import Optional, Sequence

from .graphs import Graph

EXHAUSTIVE_THRESHOLD = 8

CanonicalForm = bytes


def _leaf_string(g: Graph, order: Sequence[int]) -> bytes:
    """Adjacency bytes of g relabeled so that order[i] becomes vertex i."""
    n = g.vertex_count
    bits = bytearray()
    bits.extend(n.to_bytes(4, "big"))
    acc = 0
    count = 0
    # pack upper-triangle adjacency row by row, then loop flags
    for i in range(n):
        vi = order[i]
        for j in range(i + 1, n):
            acc = (acc << 1) | (1 if g.has_edge(vi, order[j]) else 0)
            count += 1
            if count == 8:
                bits.append(acc)
                acc = count = 0
    for i in range(n):
        acc = (acc << 1) | (1 if order[i] in g.loops else 0)
        count += 1
        if count == 8:
            bits.append(acc)
            acc = count = 0
    if count:
        bits.append(acc << (8 - count))
    return bytes(bits)


def _refine(g: Graph, colors: list[int]) -> list[int]:
    """Stable 1-WL refinement; color values are canonical (signature-sorted)."""
    n = g.vertex_count
    while True:
        sigs = []
        for v in range(n):
            nbr = sorted(colors[w] for w in g.adj[v])
            sigs.append((colors[v], v in g.loops, tuple(nbr)))
        ordered = sorted(set(sigs))
        remap = {s: i for i, s in enumerate(ordered)}
        new = [remap[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _cells(colors: list[int]) -> list[list[int]]:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    return [cells[c] for c in sorted(cells)]


def _canonical_refinement(g: Graph) -> bytes:
    n = g.vertex_count
    best: Optional[bytes] = None

    def rec(colors: list[int]):
        nonlocal best
        cells = _cells(colors)
        target = next((c for c in cells if len(c) > 1), None)
        if target is None:
            order = [v for c in cells for v in c]
            leaf = _leaf_string(g, order)
            if best is None or leaf < best:
                best = leaf
            return
        for v in target:
            branched = list(colors)
            # individualize: give v a color just below its cell
            branched[v] = branched[v] * 2 + 1
            for w in range(n):
                if w != v:
                    branched[w] = branched[w] * 2 + 2
            rec(_refine(g, branched))

    rec(_refine(g, [0] * n))
    assert best is not None
    return best


def canonical_form(g: Graph) -> CanonicalForm:
    """Byte string identifying g's isomorphism class (loops included)."""
    n = g.vertex_count
    if n == 0:
        return (0).to_bytes(4, "big")
    if n <= EXHAUSTIVE_THRESHOLD:
        return min(_leaf_string(g, p) for p in permutations(range(n)))
    return _canonical_refinement(g)


def _quick_invariants(g: Graph):
    degs = sorted(len(g.adj[v]) for v in g.vertices())
    return (g.vertex_count, g.edge_count, len(g.loops), tuple(degs))


def _search_isomorphisms(g: Graph, a: Graph, count_all: bool) -> int:
    """Backtracking search for adjacency-preserving-and-reflecting bijections.

    Returns the number found (stops at 1 when count_all is False).
    """
    n = g.vertex_count
    if n == 0:
        return 1
    gc = _refine(g, [0] * n)
    ac = _refine(a, [0] * n)
    if sorted(gc) != sorted(ac):
        return 0
    cand = [frozenset(w for w in a.vertices() if ac[w] == gc[v]) for v in g.vertices()]
    # order: smallest candidate set first, then prefer vertices adjacent to placed
    order: list[int] = []
    placed = set()
    remaining = set(g.vertices())
    while remaining:
        adj_choices = [v for v in remaining if g.adj[v] & placed]
        pool = adj_choices or list(remaining)
        v = min(pool, key=lambda x: (len(cand[x]), x))
        order.append(v)
        placed.add(v)
        remaining.remove(v)

    img = [-1] * n
    used = [False] * a.vertex_count
    found = 0

    def rec(i: int) -> bool:
        nonlocal found
        if i == n:
            found += 1
            return not count_all
        v = order[i]
        anchors = [(u, img[u]) for u in g.adj[v] if img[u] >= 0]
        non_anchors = [img[u] for u in order[:i] if u not in g.adj[v]]
        for c in cand[v]:
            if used[c]:
                continue
            if any(not a.has_edge(iu, c) for _, iu in anchors):
                continue
            if any(a.has_edge(x, c) for x in non_anchors):
                continue
            if (v in g.loops) != (c in a.loops):
                continue
            img[v] = c
            used[c] = True
            if rec(i + 1):
                return True
            img[v] = -1
            used[c] = False
        return False

    rec(0)
    return found


def is_isomorphic(g: Graph, a: Graph) -> bool:
    if _quick_invariants(g) != _quick_invariants(a):
        return False
    return _search_isomorphisms(g, a, count_all=False) > 0


def find_isomorphism(g: Graph, a: Graph) -> Optional[list[int]]:
    """An explicit isomorphism g -> a as an image list, or None."""
    if _quick_invariants(g) != _quick_invariants(a):
        return None
    n = g.vertex_count
    result: Optional[list[int]] = None

    # reuse the search but capture the first complete map
    gc = _refine(g, [0] * n)
    ac = _refine(a, [0] * n)
    if sorted(gc) != sorted(ac):
        return None
    cand = [frozenset(w for w in a.vertices() if ac[w] == gc[v]) for v in g.vertices()]
    ordered: list[int] = []
    placed: set[int] = set()
    remaining = set(g.vertices())
    while remaining:
        adj_choices = [v for v in remaining if g.adj[v] & placed]
        pool = adj_choices or list(remaining)
        v = min(pool, key=lambda x: (len(cand[x]), x))
        ordered.append(v)
        placed.add(v)
        remaining.remove(v)
    img = [-1] * n
    used = [False] * a.vertex_count

    def rec(i: int) -> bool:
        nonlocal result
        if i == n:
            result = list(img)
            return True
        v = ordered[i]
        anchors = [img[u] for u in g.adj[v] if img[u] >= 0]
        non_anchors = [img[u] for u in ordered[:i] if u not in g.adj[v]]
        for c in cand[v]:
            if used[c]:
                continue
            if any(not a.has_edge(x, c) for x in anchors):
                continue
            if any(a.has_edge(x, c) for x in non_anchors):
                continue
            if (v in g.loops) != (c in a.loops):
                continue
            img[v] = c
            used[c] = True
            if rec(i + 1):
                return True
            img[v] = -1
            used[c] = False
        return False

    rec(0)
    return result


def automorphism_count(g: Graph) -> int:
    """Order of Aut(g), counted by exhaustive pruned search."""
    return _search_isomorphisms(g, g, count_all=True)
