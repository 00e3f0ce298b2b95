"""Independent brute-force oracles.

Everything here is deliberately naive and shares no code paths with the
library implementations it checks.
"""

from itertools import combinations, permutations, product

from homkit.graphs import Graph


def iter_maps(nh, ng):
    return product(range(ng), repeat=nh)


def is_hom(h: Graph, g: Graph, img) -> bool:
    for u, v in h.edges:
        if not g.has_edge(img[u], img[v]):
            return False
    for u in h.loops:
        if img[u] not in g.loops:
            return False
    return True


def brute_homs(h: Graph, g: Graph) -> int:
    return sum(1 for img in iter_maps(h.vertex_count, g.vertex_count) if is_hom(h, g, img))


def brute_embs(h: Graph, g: Graph) -> int:
    total = 0
    for img in permutations(range(g.vertex_count), h.vertex_count):
        if is_hom(h, g, img):
            total += 1
    return total


def brute_strembs(h: Graph, g: Graph) -> int:
    total = 0
    for img in permutations(range(g.vertex_count), h.vertex_count):
        if not is_hom(h, g, img):
            continue
        if all(
            g.has_edge(img[u], img[v]) == h.has_edge(u, v)
            for u, v in combinations(range(h.vertex_count), 2)
        ):
            total += 1
    return total


def brute_auts(h: Graph) -> int:
    n = h.vertex_count
    total = 0
    for img in permutations(range(n)):
        if is_hom(h, h, img) and all(
            h.has_edge(img[u], img[v]) == h.has_edge(u, v)
            for u, v in combinations(range(n), 2)
        ):
            total += 1
    return total


def brute_isomorphic(g: Graph, a: Graph) -> bool:
    if g.vertex_count != a.vertex_count or g.edge_count != a.edge_count:
        return False
    if len(g.loops) != len(a.loops):
        return False
    n = g.vertex_count
    for img in permutations(range(n)):
        ok = all(
            a.has_edge(img[u], img[v]) == g.has_edge(u, v)
            for u, v in combinations(range(n), 2)
        )
        if ok and all((img[u] in a.loops) == (u in g.loops) for u in range(n)):
            return True
    return n == 0


def brute_subs(h: Graph, g: Graph) -> int:
    """Distinct subgraphs of g isomorphic to h, via embedding images."""
    images = set()
    for img in permutations(range(g.vertex_count), h.vertex_count):
        if is_hom(h, g, img):
            vs = frozenset(img)
            es = frozenset(
                (min(img[u], img[v]), max(img[u], img[v])) for u, v in h.edges
            )
            images.add((vs, es))
    return len(images)


def brute_indsubs(h: Graph, g: Graph) -> int:
    total = 0
    for vs in combinations(range(g.vertex_count), h.vertex_count):
        if brute_isomorphic(g.induced(vs), h):
            total += 1
    return total


def brute_cliques(g: Graph, k: int) -> int:
    return sum(
        1
        for vs in combinations(range(g.vertex_count), k)
        if all(g.has_edge(u, v) for u, v in combinations(vs, 2))
    )


def brute_odd_girth(g: Graph, max_len: int = 11):
    """Smallest odd cycle length by explicit cycle enumeration."""
    n = g.vertex_count
    for length in range(3, max_len + 1, 2):
        for start in range(n):
            stack = [(start, [start])]
            while stack:
                u, path = stack.pop()
                if len(path) == length:
                    if g.has_edge(u, start):
                        return length
                    continue
                for w in g.adj[u]:
                    if w > start and w not in path:
                        stack.append((w, path + [w]))
    return None


def brute_cp_homs(h: Graph, g: Graph, assignment) -> int:
    """Color-prescribed homs: assignment maps target vertices to pattern vertices."""
    total = 0
    for img in iter_maps(h.vertex_count, g.vertex_count):
        if is_hom(h, g, img) and all(assignment[img[v]] == v for v in range(h.vertex_count)):
            total += 1
    return total


def brute_colorful_homs(h: Graph, g: Graph, assignment) -> int:
    total = 0
    classes = set(range(h.vertex_count))
    for img in iter_maps(h.vertex_count, g.vertex_count):
        if is_hom(h, g, img) and {assignment[x] for x in img} == classes:
            total += 1
    return total


def recursive_mobius(blocks):
    """Mobius value mu(bottom, rho) by the recursive lattice definition."""
    blocks = tuple(tuple(sorted(b)) for b in blocks)
    if all(len(b) == 1 for b in blocks):
        return 1
    total = 0
    for finer in _proper_refinements(blocks):
        total += recursive_mobius(finer)
    return -total


def _partitions_of(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in _partitions_of(rest):
        for i in range(len(sub)):
            yield sub[:i] + [[first] + sub[i]] + sub[i + 1 :]
        yield [[first]] + sub


def _proper_refinements(blocks):
    """All partitions strictly refining ``blocks`` (blockwise products)."""
    per_block = [list(_partitions_of(list(b))) for b in blocks]

    def rec(i):
        if i == len(per_block):
            yield []
            return
        for choice in per_block[i]:
            for tail in rec(i + 1):
                yield [tuple(sorted(p)) for p in choice] + tail

    orig = {frozenset(b) for b in blocks}
    for combo in rec(0):
        if {frozenset(b) for b in combo} != orig:
            yield tuple(combo)


def random_graph(rng, n, p=0.5) -> Graph:
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return Graph.build(n, edges)


def random_connected_graph(rng, n, p=0.5) -> Graph:
    while True:
        g = random_graph(rng, n, p)
        if g.is_connected():
            return g


def random_bipartite_graph(rng, n, p=0.5) -> Graph:
    sides = [rng.randrange(2) for _ in range(n)]
    edges = [
        (u, v)
        for u, v in combinations(range(n), 2)
        if sides[u] != sides[v] and rng.random() < p
    ]
    return Graph.build(n, edges)
