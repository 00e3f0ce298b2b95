import random
from fractions import Fraction

import pytest

from homkit.canon import is_isomorphic
from homkit.counting import MapKind, PatternKind, count_maps, count_patterns
from homkit.errors import NotALineGraph
from homkit.generators import KneserParams, kneser
from homkit.graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    path_graph,
    star_graph,
)
from homkit.linegraph import (
    decide_hom_to_line,
    is_koenig,
    krausz_partition,
    line_graph,
    line_pattern_quantum,
    root_graph,
)
from homkit.quantum import evaluate_quantum_int

import oracles


def test_line_graph_claw_is_triangle():
    lg, labels = line_graph(star_graph(3))
    assert is_isomorphic(lg, complete_graph(3))
    assert len(labels) == 3


def test_line_graph_cycle_self():
    lg, _ = line_graph(cycle_graph(8))
    assert is_isomorphic(lg, cycle_graph(8))


def test_line_graph_p2():
    lg, _ = line_graph(path_graph(2))
    assert is_isomorphic(lg, path_graph(1))


def test_root_of_triangle_is_claw():
    w = root_graph(complete_graph(3))
    assert is_isomorphic(w.root, star_graph(3))
    assert w.bipartite
    w.validate(complete_graph(3))


def test_root_of_petersen_fails():
    petersen = kneser(KneserParams(5, 2)).graph
    with pytest.raises(NotALineGraph):
        root_graph(petersen)


def test_root_of_claw_fails():
    with pytest.raises(NotALineGraph):
        root_graph(star_graph(3))


def test_whitney_roundtrip_random():
    rng = random.Random(31)
    done = 0
    while done < 100:
        n = rng.randrange(3, 8)
        g = oracles.random_connected_graph(rng, n, 0.45)
        if g.edge_count < 2 or is_isomorphic(g, complete_graph(3)):
            continue
        if any(g.degree(v) == 0 for v in g.vertices()):
            continue
        done += 1
        lg, _ = line_graph(g)
        w = root_graph(lg)
        assert is_isomorphic(w.root, g)
        w.validate(lg)


def test_krausz_partition_validity():
    rng = random.Random(32)
    for _ in range(30):
        g = oracles.random_connected_graph(rng, rng.randrange(3, 8), 0.5)
        lg, _ = line_graph(g)
        if lg.vertex_count == 0:
            continue
        cliques = krausz_partition(lg)
        counts = [0] * lg.vertex_count
        covered = set()
        for S in cliques:
            for w in S:
                counts[w] += 1
            for a in S:
                for b in S:
                    if a < b:
                        assert lg.has_edge(a, b)
                        assert (a, b) not in covered
                        covered.add((a, b))
        assert covered == set(lg.edge_list())
        assert all(c <= 2 for c in counts)


def test_line_graphs_closed_under_induced_subgraphs():
    rng = random.Random(33)
    for _ in range(20):
        g = oracles.random_connected_graph(rng, rng.randrange(4, 8), 0.5)
        lg, _ = line_graph(g)
        if lg.vertex_count < 2:
            continue
        keep = sorted(
            rng.sample(range(lg.vertex_count), rng.randrange(1, lg.vertex_count))
        )
        sub = lg.induced(keep)
        root_graph(sub)  # must not raise


def test_is_koenig():
    assert is_koenig(complete_graph(3))  # L(K_{1,3})
    lg, _ = line_graph(complete_graph(4))
    assert not is_koenig(lg)  # root K_4 is unique and odd
    lg2, _ = line_graph(cycle_graph(6))
    assert is_koenig(lg2)


def test_disconnected_roots_unioned():
    from homkit.graphs import disjoint_union

    l, _ = disjoint_union([complete_graph(3), path_graph(1)])
    w = root_graph(l)
    assert w.bipartite
    comps = [w.root.induced(c) for c in w.root.components()]
    # triangle component -> claw; single-edge component -> two-edge path
    assert sorted(c.vertex_count for c in comps) == [3, 4]
    assert any(is_isomorphic(c, star_graph(3)) for c in comps)
    assert any(is_isomorphic(c, path_graph(2)) for c in comps)
    w.validate(l)


# --- decision algorithm -------------------------------------------------------


def test_decide_clique_branch():
    l, _ = line_graph(star_graph(5))  # K_5
    assert is_isomorphic(l, complete_graph(5))
    assert decide_hom_to_line(complete_graph(3), l)


def test_decide_odd_cycle_into_even_cycle():
    assert not decide_hom_to_line(cycle_graph(5), cycle_graph(8))


def test_decide_k1():
    assert decide_hom_to_line(complete_graph(1), path_graph(1))


def test_decide_agrees_with_brute_force():
    rng = random.Random(34)
    done = 0
    while done < 100:
        h = oracles.random_graph(rng, rng.randrange(1, 6), 0.5)
        root = oracles.random_connected_graph(rng, rng.randrange(2, 9), 0.4)
        if all(root.degree(v) == 0 for v in root.vertices()):
            continue
        l, _ = line_graph(root)
        done += 1
        expected = oracles.brute_homs(h, l) > 0
        assert decide_hom_to_line(h, l) == expected


# --- the line-pattern quantum graph -------------------------------------------


def hom_backend(a, b):
    return count_maps(MapKind.HOM, a, b, budget=max(10, a.vertex_count))


def test_q_k1_counts_edges():
    q = line_pattern_quantum(complete_graph(1))
    rng = random.Random(35)
    for _ in range(10):
        g = oracles.random_bipartite_graph(rng, rng.randrange(1, 7))
        assert evaluate_quantum_int(q, g, hom_backend) == g.edge_count


def test_q_k3_on_claw():
    q = line_pattern_quantum(complete_graph(3))
    val = evaluate_quantum_int(q, star_graph(3), hom_backend)
    lg, _ = line_graph(star_graph(3))
    assert val == count_maps(MapKind.HOM, complete_graph(3), lg) == 6


def test_q_identity_on_random_bipartite():
    rng = random.Random(36)
    patterns = [path_graph(2), cycle_graph(4), complete_graph(3), path_graph(3)]
    qs = {id(p): line_pattern_quantum(p) for p in patterns}
    for _ in range(25):
        g = oracles.random_bipartite_graph(rng, rng.randrange(1, 8))
        lg, _ = line_graph(g)
        for p in patterns:
            lhs = count_maps(MapKind.HOM, p, lg)
            rhs = evaluate_quantum_int(qs[id(p)], g, hom_backend)
            assert lhs == rhs, (p, sorted(g.edges))


def test_indsub_line_identity():
    # induced copies of L(F) in L(G) match subgraph copies of F in G for
    # König patterns, and vanish for line graphs of odd roots
    rng = random.Random(37)
    fs = [path_graph(2), star_graph(3), path_graph(3), cycle_graph(4)]
    for f in fs:
        lf, _ = line_graph(f)
        for _ in range(10):
            g = oracles.random_bipartite_graph(rng, rng.randrange(2, 8))
            lg, _ = line_graph(g)
            lhs = (
                count_patterns(PatternKind.INDSUB, lf, lg)
                if lf.vertex_count <= lg.vertex_count
                else 0
            )
            assert lhs == oracles.brute_subs(f, g)
    # line graph of K_4 has a non-bipartite unique root
    lk4, _ = line_graph(complete_graph(4))
    for _ in range(5):
        g = oracles.random_bipartite_graph(rng, rng.randrange(4, 8))
        lg, _ = line_graph(g)
        if lk4.vertex_count <= lg.vertex_count:
            assert count_patterns(PatternKind.INDSUB, lk4, lg) == 0
