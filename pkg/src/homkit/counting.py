"""Exact counters for maps and patterns.

Brute-force backtracking counters for homomorphisms, embeddings, strong
embeddings, automorphisms, color-prescribed and colorful homomorphisms,
plus the derived subgraph counters, the colorful inclusion-exclusion,
desk-scale matching number, and the tractable-instance router for
colorable targets.
"""

from __future__ import annotations

import warnings
from enum import Enum
from typing import Callable, Optional, Sequence

from . import canon
from .errors import BudgetExceeded, InvalidWitness, NotACore
from .graphs import Graph, VertexColoring, is_core

DEFAULT_PATTERN_BUDGET = 10


class MapKind(Enum):
    HOM = "hom"
    EMB = "emb"
    STREMB = "stremb"
    AUT = "aut"
    CPHOM = "cphom"
    COLORFUL = "colorful"


class PatternKind(Enum):
    SUB = "sub"
    INDSUB = "indsub"


def _adjacency_with_loops(g: Graph) -> list[frozenset[int]]:
    return [
        g.adj[v] | ({v} if v in g.loops else frozenset()) for v in g.vertices()
    ]


def _component_order(h: Graph, comp: Sequence[int]) -> list[int]:
    # BFS order so every non-root vertex has an earlier neighbor
    order = [comp[0]]
    seen = {comp[0]}
    i = 0
    while i < len(order):
        for w in sorted(h.adj[order[i]]):
            if w not in seen:
                seen.add(w)
                order.append(w)
        i += 1
    return order


def _count_homs(h: Graph, g: Graph) -> int:
    adjx = _adjacency_with_loops(g)
    all_targets = frozenset(g.vertices())
    looped = frozenset(g.loops)
    total = 1
    for comp in h.components():
        order = _component_order(h, comp)
        pos = {v: i for i, v in enumerate(order)}
        earlier = [
            [pos[u] for u in h.adj[v] if pos.get(u, len(order)) < i]
            for i, v in enumerate(order)
        ]
        loops_at = [order[i] in h.loops for i in range(len(order))]
        img = [0] * len(order)

        def rec(i: int) -> int:
            if i == len(order):
                return 1
            cands = all_targets
            for j in earlier[i]:
                cands = cands & adjx[img[j]]
                if not cands:
                    return 0
            if loops_at[i]:
                cands = cands & looped
            sub = 0
            for c in cands:
                img[i] = c
                sub += rec(i + 1)
            return sub

        total *= rec(0)
        if total == 0:
            return 0
    return total


def _count_injective(h: Graph, g: Graph, reflect: bool) -> int:
    n = h.vertex_count
    if n > g.vertex_count:
        return 0
    adjx = _adjacency_with_loops(g)
    all_targets = frozenset(g.vertices())
    looped = frozenset(g.loops)
    order: list[int] = []
    for comp in h.components():
        order.extend(_component_order(h, comp))
    pos = {v: i for i, v in enumerate(order)}
    img = [0] * n
    used = [False] * g.vertex_count

    def rec(i: int) -> int:
        if i == n:
            return 1
        v = order[i]
        cands = all_targets
        for u in h.adj[v]:
            if pos[u] < i:
                cands = cands & adjx[img[pos[u]]]
        if v in h.loops:
            cands = cands & looped
        sub = 0
        nonneighbors = (
            [pos[u] for u in order[:i] if u not in h.adj[v]] if reflect else ()
        )
        for c in cands:
            if used[c]:
                continue
            if reflect:
                if any(g.has_edge(img[j], c) for j in nonneighbors):
                    continue
                if (v in h.loops) != (c in g.loops):
                    continue
            img[i] = c
            used[c] = True
            sub += rec(i + 1)
            used[c] = False
        return sub

    return rec(0)


def _require_class_coloring(h: Graph, coloring: Optional[VertexColoring]) -> VertexColoring:
    if coloring is None:
        raise ValueError("this map kind requires a VertexColoring")
    if coloring.pattern.vertex_count != h.vertex_count:
        raise ValueError("coloring pattern vertex count must match the pattern graph")
    return coloring


def _count_class_restricted(h: Graph, g: Graph, coloring: VertexColoring) -> int:
    """Color-prescribed homs: pattern vertex v maps inside color class v."""
    classes = coloring.classes
    total = 1
    adjx = _adjacency_with_loops(g)
    looped = frozenset(g.loops)
    for comp in h.components():
        order = _component_order(h, comp)
        pos = {v: i for i, v in enumerate(order)}
        img = [0] * len(order)

        def rec(i: int) -> int:
            if i == len(order):
                return 1
            v = order[i]
            cands = set(classes[v])
            for u in h.adj[v]:
                if pos.get(u, len(order)) < i:
                    cands &= adjx[img[pos[u]]]
            if v in h.loops:
                cands &= looped
            sub = 0
            for c in sorted(cands):
                img[i] = c
                sub += rec(i + 1)
            return sub

        total *= rec(0)
        if total == 0:
            return 0
    return total


def _count_colorful(h: Graph, g: Graph, coloring: VertexColoring) -> int:
    """Homs whose image meets every color class.

    With exactly |V(h)| classes an image meeting all classes uses each
    class exactly once, so branches reusing a class are pruned.
    """
    n = h.vertex_count
    class_of = coloring.assignment
    adjx = _adjacency_with_loops(g)
    all_targets = frozenset(g.vertices())
    looped = frozenset(g.loops)
    order: list[int] = []
    for comp in h.components():
        order.extend(_component_order(h, comp))
    pos = {v: i for i, v in enumerate(order)}
    img = [0] * n
    used_class = [False] * coloring.pattern.vertex_count

    def rec(i: int) -> int:
        if i == n:
            return 1
        v = order[i]
        cands = all_targets
        for u in h.adj[v]:
            if pos[u] < i:
                cands = cands & adjx[img[pos[u]]]
        if v in h.loops:
            cands = cands & looped
        sub = 0
        for c in cands:
            cls = class_of[c]
            if used_class[cls]:
                continue
            img[i] = c
            used_class[cls] = True
            sub += rec(i + 1)
            used_class[cls] = False
        return sub

    return rec(0)


def count_maps(
    kind: MapKind,
    h: Graph,
    g: Graph,
    coloring: Optional[VertexColoring] = None,
    budget: Optional[int] = None,
) -> int:
    """Exact count of maps of the given kind from pattern h into target g.

    The pattern budget (default 10 vertices) applies to HOM, EMB, STREMB
    and AUT; class-restricted kinds tolerate larger inputs because the
    color classes bound the branching.
    """
    if kind in (MapKind.HOM, MapKind.EMB, MapKind.STREMB, MapKind.AUT):
        limit = DEFAULT_PATTERN_BUDGET if budget is None else budget
        if kind is MapKind.HOM:
            # hom counts factor over components, so the budget binds per component
            largest = max((len(c) for c in h.components()), default=0)
            if largest > limit:
                raise BudgetExceeded(
                    f"pattern component has {largest} > {limit} vertices"
                )
        elif h.vertex_count > limit:
            raise BudgetExceeded(
                f"pattern has {h.vertex_count} > {limit} vertices"
            )
    if kind is MapKind.HOM:
        return _count_homs(h, g)
    if kind is MapKind.EMB:
        return _count_injective(h, g, reflect=False)
    if kind is MapKind.STREMB:
        return _count_injective(h, g, reflect=True)
    if kind is MapKind.AUT:
        return canon.automorphism_count(h)
    if kind is MapKind.CPHOM:
        return _count_class_restricted(h, g, _require_class_coloring(h, coloring))
    if kind is MapKind.COLORFUL:
        col = _require_class_coloring(h, coloring)
        if len({c for c in col.assignment}) > h.vertex_count:
            raise ValueError("more occupied classes than pattern vertices")
        return _count_colorful(h, g, col)
    raise ValueError(kind)


def count_patterns(
    kind: PatternKind, h: Graph, g: Graph, budget: Optional[int] = None
) -> int:
    """#Sub = #Emb / #Aut and #IndSub = #StrEmb / #Aut, divisions exact."""
    if not (h.is_simple and g.is_simple):
        raise ValueError("pattern counting requires simple graphs")
    auts = count_maps(MapKind.AUT, h, h, budget=budget)
    if kind is PatternKind.SUB:
        embs = count_maps(MapKind.EMB, h, g, budget=budget)
        q, r = divmod(embs, auts)
    else:
        strembs = count_maps(MapKind.STREMB, h, g, budget=budget)
        q, r = divmod(strembs, auts)
    if r:
        raise AssertionError(
            f"automorphism count {auts} does not divide the embedding count"
        )
    return q


def colorful_incl_excl(
    h: Graph,
    g: Graph,
    coloring: VertexColoring,
    hom_oracle: Callable[[Graph], int],
    budget: int = 16,
) -> int:
    """Colorful hom count as sum over color subsets J of
    (-1)^|J| * #Hom(h, g minus the J-colored vertices)."""
    col = _require_class_coloring(h, coloring)
    n = h.vertex_count
    if n > budget:
        raise BudgetExceeded(f"2^{n} subset loop exceeds budget 2^{budget}")
    classes = col.classes
    total = 0
    for mask in range(1 << n):
        drop = [v for j in range(n) if mask >> j & 1 for v in classes[j]]
        sign = -1 if bin(mask).count("1") % 2 else 1
        total += sign * hom_oracle(g.without_vertices(drop))
    return total


def matching_number(g: Graph, budget: int = 64) -> int:
    """Exact maximum matching size by memoized augment-or-skip branching."""
    if not g.is_simple:
        raise ValueError("matching number requires a simple graph")
    n = g.vertex_count
    if n > budget:
        raise BudgetExceeded(f"matching budget {budget} < {n} vertices")
    adj_masks = [0] * n
    for u, v in g.edges:
        adj_masks[u] |= 1 << v
        adj_masks[v] |= 1 << u
    memo: dict[int, int] = {}

    def rec(active: int) -> int:
        if active == 0:
            return 0
        got = memo.get(active)
        if got is not None:
            return got
        # lowest active vertex with an active neighbor
        m = active
        v = None
        while m:
            cand = (m & -m).bit_length() - 1
            if adj_masks[cand] & active:
                v = cand
                break
            m &= m - 1
        if v is None:
            memo[active] = 0
            return 0
        bit = 1 << v
        best = rec(active & ~bit)
        nbrs = adj_masks[v] & active
        while nbrs:
            u = (nbrs & -nbrs).bit_length() - 1
            nbrs &= nbrs - 1
            best = max(best, 1 + rec(active & ~bit & ~(1 << u)))
        memo[active] = best
        return best

    return rec((1 << n) - 1)


def cphoms_via_automorphisms(
    h: Graph,
    g: Graph,
    coloring: VertexColoring,
    budget: Optional[int] = None,
) -> int:
    """#CpHom = #Hom / #Aut for core patterns; division must be exact."""
    core_budget = max(h.vertex_count, DEFAULT_PATTERN_BUDGET if budget is None else budget)
    if not is_core(h, budget=core_budget):
        raise NotACore("pattern is not a core")
    _require_class_coloring(h, coloring)
    homs = count_maps(MapKind.HOM, h, g, budget=budget)
    auts = count_maps(MapKind.AUT, h, h, budget=budget)
    q, r = divmod(homs, auts)
    if r:
        raise AssertionError(f"#Aut {auts} does not divide #Hom {homs}")
    return q


def solve_fcolored_instance(
    h: Graph,
    g: Graph,
    f: Graph,
    width_budget: int,
    f_coloring: Sequence[int],
    budget: Optional[int] = None,
) -> int:
    """Route a promised-colorable instance: treewidth DP when the pattern
    is narrow, zero when the pattern does not map into f, else a warned
    brute-force fallback (unreachable under the promise)."""
    from .treewidth import count_homs_td, tree_decomposition

    try:
        VertexColoring(g, f, tuple(f_coloring))
    except Exception as e:
        raise InvalidWitness(f"target coloring into f is invalid: {e}") from e
    if not h.is_simple:
        raise ValueError("pattern must be loop-free")
    td = tree_decomposition(h)
    if td.width <= width_budget:
        return count_homs_td(h, td, g)
    if count_maps(MapKind.HOM, h, f, budget=budget) == 0:
        return 0
    warnings.warn(
        "pattern is wide yet maps into f; promise violated, falling back to brute force"
    )
    return count_maps(MapKind.HOM, h, g, budget=budget)
