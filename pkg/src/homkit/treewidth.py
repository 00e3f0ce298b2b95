"""Tree decompositions and the width-parameterized homomorphism counter.

Exact treewidth for small graphs by dynamic programming over eliminated
vertex subsets; a min-fill heuristic (flagged non-exact) beyond that.
The counting routine runs the standard dynamic program over a rooted
decomposition, joining child tables on shared bag vertices.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .errors import InvalidDecomposition
from .graphs import Graph

EXACT_TREEWIDTH_THRESHOLD = 15


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    parents: tuple[int, ...]  # -1 marks the root
    width: int
    exact: bool

    def validate(self, g: Graph) -> None:
        n_nodes = len(self.bags)
        if n_nodes == 0 or len(self.parents) != n_nodes:
            raise InvalidDecomposition("empty or inconsistent node list")
        roots = [i for i, p in enumerate(self.parents) if p == -1]
        if len(roots) != 1:
            raise InvalidDecomposition("decomposition must have exactly one root")
        for i, p in enumerate(self.parents):
            if p != -1 and not (0 <= p < n_nodes):
                raise InvalidDecomposition("bad parent index")
        # acyclicity / reachability toward the root
        for i in range(n_nodes):
            seen = set()
            j = i
            while j != -1:
                if j in seen:
                    raise InvalidDecomposition("parent links contain a cycle")
                seen.add(j)
                j = self.parents[j]
        if self.width != max(len(b) for b in self.bags) - 1:
            raise InvalidDecomposition("stored width mismatch")
        covered = set()
        for b in self.bags:
            for v in b:
                if not (0 <= v < g.vertex_count):
                    raise InvalidDecomposition("bag vertex out of range")
            covered |= b
        if covered != set(g.vertices()):
            raise InvalidDecomposition("bags do not cover every vertex")
        for u, v in g.edges:
            if not any(u in b and v in b for b in self.bags):
                raise InvalidDecomposition(f"edge ({u},{v}) not covered")
        for v in g.vertices():
            nodes = {i for i, b in enumerate(self.bags) if v in b}
            tops = 0
            for i in nodes:
                if self.parents[i] not in nodes:
                    tops += 1
            if tops != 1:
                raise InvalidDecomposition(f"vertex {v} spans a disconnected subtree")


def _elimination_width(adj_masks: list[int], prefix: int, v: int) -> int:
    # vertices outside prefix+{v} adjacent to v or reachable through prefix
    seen = 1 << v
    stack = [v]
    out = 0
    while stack:
        u = stack.pop()
        m = adj_masks[u] & ~seen
        while m:
            w = (m & -m).bit_length() - 1
            bit = 1 << w
            m &= m - 1
            seen |= bit
            if prefix & bit:
                stack.append(w)
            else:
                out |= bit
    return bin(out).count("1")


def _exact_elimination_order(g: Graph) -> tuple[list[int], int]:
    n = g.vertex_count
    adj_masks = [0] * n
    for u, v in g.edges:
        adj_masks[u] |= 1 << v
        adj_masks[v] |= 1 << u
    full = (1 << n) - 1
    dp = {0: -1}
    # ascending popcount so dp[S - v] is always present
    by_count: list[list[int]] = [[] for _ in range(n + 1)]
    for s in range(1 << n):
        by_count[bin(s).count("1")].append(s)
    for size in range(1, n + 1):
        for s in by_count[size]:
            best = None
            m = s
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                prev = s & ~(1 << v)
                cand = max(dp[prev], _elimination_width(adj_masks, prev, v))
                if best is None or cand < best:
                    best = cand
            dp[s] = best
    # recover order: pick the last-eliminated vertex at each suffix
    order_rev = []
    s = full
    while s:
        m = s
        pick = None
        pick_val = None
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            prev = s & ~(1 << v)
            cand = max(dp[prev], _elimination_width(adj_masks, prev, v))
            if pick_val is None or cand < pick_val or (cand == pick_val and v < pick):
                pick, pick_val = v, cand
        order_rev.append(pick)
        s &= ~(1 << pick)
    return order_rev[::-1], dp[full]


def _min_fill_order(g: Graph) -> list[int]:
    work = {v: set(g.adj[v]) for v in g.vertices()}
    order = []
    remaining = set(g.vertices())
    while remaining:
        best_v, best_fill = None, None
        for v in sorted(remaining):
            nbrs = work[v] & remaining
            fill = sum(
                1
                for u in nbrs
                for w in nbrs
                if u < w and w not in work[u]
            )
            if best_fill is None or fill < best_fill:
                best_v, best_fill = v, fill
        nbrs = work[best_v] & remaining
        for u in nbrs:
            for w in nbrs:
                if u < w:
                    work[u].add(w)
                    work[w].add(u)
        order.append(best_v)
        remaining.remove(best_v)
    return order


def _decomposition_from_order(g: Graph, order: list[int], exact: bool) -> TreeDecomposition:
    n = g.vertex_count
    if n == 0:
        return TreeDecomposition((frozenset(),), (-1,), -1, exact)
    position = {v: i for i, v in enumerate(order)}
    work = {v: set(g.adj[v]) for v in g.vertices()}
    bags: list[frozenset[int]] = []
    later_neighbors: list[list[int]] = []
    for v in order:
        nbrs = {u for u in work[v] if position[u] > position[v]}
        bags.append(frozenset({v} | nbrs))
        later_neighbors.append(sorted(nbrs, key=lambda u: position[u]))
        for u in nbrs:
            for w in nbrs:
                if u != w:
                    work[u].add(w)
    parents = []
    for i, v in enumerate(order):
        if later_neighbors[i]:
            parents.append(position[later_neighbors[i][0]])
        elif i < n - 1:
            # isolated at elimination time: hang below the final root
            parents.append(n - 1)
        else:
            parents.append(-1)
    width = max(len(b) for b in bags) - 1
    return TreeDecomposition(tuple(bags), tuple(parents), width, exact)


def tree_decomposition(
    g: Graph, exact_threshold: int = EXACT_TREEWIDTH_THRESHOLD
) -> TreeDecomposition:
    """Exact subset-DP decomposition up to the threshold; min-fill beyond."""
    if not g.is_simple:
        raise ValueError("tree decompositions are for simple graphs")
    if g.vertex_count == 0:
        return TreeDecomposition((frozenset(),), (-1,), -1, True)
    if g.vertex_count <= exact_threshold:
        order, width = _exact_elimination_order(g)
        td = _decomposition_from_order(g, order, exact=True)
        assert td.width == width
        return td
    return _decomposition_from_order(g, _min_fill_order(g), exact=False)


def count_homs_td(h: Graph, td: TreeDecomposition, g: Graph) -> int:
    """#Hom(h, g) by dynamic programming over the decomposition of h."""
    if not h.is_simple:
        raise ValueError("pattern must be loop-free")
    td.validate(h)
    children = defaultdict(list)
    root = -1
    for i, p in enumerate(td.parents):
        if p == -1:
            root = i
        else:
            children[p].append(i)
    ng = g.vertex_count
    # adjacency including loops so loopy targets count like the brute counter
    adj = [
        g.adj[v] | ({v} if v in g.loops else frozenset()) for v in g.vertices()
    ]

    def assignments(bag: list[int]):
        # backtracking enumeration of maps bag -> V(g) respecting h-edges in the bag
        k = len(bag)
        img = [0] * k
        internal = [
            [j for j in range(i) if h.has_edge(bag[i], bag[j])] for i in range(k)
        ]

        def rec(i: int):
            if i == k:
                yield tuple(img)
                return
            earlier = internal[i]
            if earlier:
                cands = set(adj[img[earlier[0]]])
                for j in earlier[1:]:
                    cands &= adj[img[j]]
            else:
                cands = range(ng)
            for c in cands:
                img[i] = c
                yield from rec(i + 1)

        yield from rec(0)

    def table(t: int) -> dict[tuple[int, ...], int]:
        bag = sorted(td.bags[t])
        index = {v: i for i, v in enumerate(bag)}
        aggs = []
        for c in children[t]:
            child_bag = sorted(td.bags[c])
            shared = [v for v in child_bag if v in index]
            child_tab = table(c)
            agg: dict[tuple[int, ...], int] = defaultdict(int)
            sh_pos = [child_bag.index(v) for v in shared]
            for phi, cnt in child_tab.items():
                agg[tuple(phi[j] for j in sh_pos)] += cnt
            aggs.append(([index[v] for v in shared], dict(agg)))
        out: dict[tuple[int, ...], int] = {}
        for phi in assignments(bag):
            val = 1
            for positions, agg in aggs:
                val *= agg.get(tuple(phi[j] for j in positions), 0)
                if val == 0:
                    break
            if val:
                out[phi] = out.get(phi, 0) + val
        return out

    return sum(table(root).values())
