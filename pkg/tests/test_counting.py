import random
from itertools import combinations

import pytest

from homkit.counting import (
    MapKind,
    PatternKind,
    colorful_incl_excl,
    count_maps,
    count_patterns,
    cphoms_via_automorphisms,
    matching_number,
    solve_fcolored_instance,
)
from homkit.errors import BudgetExceeded, InvalidDecomposition, InvalidWitness, NotACore
from homkit.graphs import (
    Graph,
    VertexColoring,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    star_graph,
)
from homkit.treewidth import count_homs_td, tree_decomposition, TreeDecomposition

import oracles


def test_hom_k1_counts_vertices():
    rng = random.Random(1)
    for _ in range(10):
        g = oracles.random_graph(rng, rng.randrange(0, 7))
        assert count_maps(MapKind.HOM, complete_graph(1), g) == g.vertex_count


def test_hom_triangle_and_aut():
    k3 = complete_graph(3)
    assert count_maps(MapKind.HOM, k3, k3) == 6
    assert count_maps(MapKind.AUT, k3, k3) == 6


def test_hom_odd_cycles():
    assert count_maps(MapKind.HOM, cycle_graph(5), cycle_graph(7)) == 0


def test_empty_pattern_has_one_hom():
    rng = random.Random(2)
    for _ in range(5):
        g = oracles.random_graph(rng, rng.randrange(0, 6))
        assert count_maps(MapKind.HOM, empty_graph(), g) == 1


def test_count_maps_matches_brute_force():
    rng = random.Random(3)
    for _ in range(60):
        h = oracles.random_graph(rng, rng.randrange(1, 5))
        g = oracles.random_graph(rng, rng.randrange(1, 6))
        assert count_maps(MapKind.HOM, h, g) == oracles.brute_homs(h, g)
        assert count_maps(MapKind.EMB, h, g) == oracles.brute_embs(h, g)
        assert count_maps(MapKind.STREMB, h, g) == oracles.brute_strembs(h, g)


def test_count_maps_with_loops():
    rng = random.Random(4)
    for _ in range(40):
        nh, ng = rng.randrange(1, 4), rng.randrange(1, 5)
        h = oracles.random_graph(rng, nh)
        g = oracles.random_graph(rng, ng)
        h = Graph(h.vertex_count, h.edges, frozenset(v for v in range(nh) if rng.random() < 0.3))
        g = Graph(g.vertex_count, g.edges, frozenset(v for v in range(ng) if rng.random() < 0.3))
        assert count_maps(MapKind.HOM, h, g) == oracles.brute_homs(h, g)


def test_aut_equals_bijective_strembs():
    rng = random.Random(5)
    for _ in range(25):
        h = oracles.random_graph(rng, rng.randrange(1, 6))
        assert count_maps(MapKind.AUT, h, h) == oracles.brute_auts(h)


def test_pattern_budget():
    with pytest.raises(BudgetExceeded):
        count_maps(MapKind.HOM, complete_graph(11), complete_graph(3))
    # proper 3-colorings of an odd cycle: 2^11 - 2
    assert count_maps(MapKind.HOM, cycle_graph(11), complete_graph(3), budget=11) == 2046


def test_sub_counts():
    assert count_patterns(PatternKind.SUB, path_graph(1), complete_graph(4)) == 6
    assert count_patterns(PatternKind.SUB, path_graph(2), complete_graph(4)) == 12
    assert count_patterns(PatternKind.INDSUB, complete_graph(3), star_graph(3)) == 0


def test_pattern_counts_match_brute_force():
    rng = random.Random(6)
    for _ in range(40):
        h = oracles.random_graph(rng, rng.randrange(1, 5))
        g = oracles.random_graph(rng, rng.randrange(1, 6))
        assert count_patterns(PatternKind.SUB, h, g) == oracles.brute_subs(h, g)
        assert count_patterns(PatternKind.INDSUB, h, g) == oracles.brute_indsubs(h, g)


def test_species_identities_exhaustive():
    # #Emb = #Aut * #Sub and #StrEmb = #Aut * #IndSub on all (h, g) pairs
    graphs_h = []
    for n in range(1, 5):
        pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            graphs_h.append(Graph.build(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1]))
    rng = random.Random(7)
    targets = [oracles.random_graph(rng, 5) for _ in range(3)]
    for h in graphs_h:
        auts = count_maps(MapKind.AUT, h, h)
        for g in targets:
            embs = count_maps(MapKind.EMB, h, g)
            strembs = count_maps(MapKind.STREMB, h, g)
            assert embs == auts * count_patterns(PatternKind.SUB, h, g)
            assert strembs == auts * count_patterns(PatternKind.INDSUB, h, g)
            assert embs % auts == 0 and strembs % auts == 0


# --- treewidth --------------------------------------------------------------


def test_treewidth_values():
    assert tree_decomposition(path_graph(4)).width == 1
    assert tree_decomposition(complete_graph(5)).width == 4
    star = star_graph(4)
    assert tree_decomposition(star).width == 1
    from homkit.generators import grid

    td = grid(3)
    assert tree_decomposition(td.graph).width == 3


def test_treewidth_decomposition_validates():
    rng = random.Random(8)
    for _ in range(30):
        g = oracles.random_graph(rng, rng.randrange(1, 9), 0.4)
        td = tree_decomposition(g)
        td.validate(g)
        assert td.exact


def test_treewidth_monotone_under_subgraphs():
    rng = random.Random(9)
    for _ in range(20):
        g = oracles.random_graph(rng, 7, 0.5)
        keep = sorted(rng.sample(range(7), 5))
        sub = g.induced(keep)
        assert tree_decomposition(sub).width <= tree_decomposition(g).width


def test_min_fill_heuristic_above_threshold():
    rng = random.Random(10)
    g = oracles.random_graph(rng, 12, 0.3)
    td = tree_decomposition(g, exact_threshold=10)
    td.validate(g)
    assert not td.exact


def test_count_homs_td_examples():
    p3 = path_graph(3)
    k3 = complete_graph(3)
    td = tree_decomposition(p3)
    assert td.width == 1
    assert count_homs_td(p3, td, k3) == 24
    k1 = complete_graph(1)
    rng = random.Random(11)
    for _ in range(5):
        g = oracles.random_graph(rng, rng.randrange(1, 7))
        assert count_homs_td(k1, tree_decomposition(k1), g) == g.vertex_count
    c4 = cycle_graph(4)
    assert count_homs_td(c4, tree_decomposition(c4), c4) == oracles.brute_homs(c4, c4)


def test_count_homs_td_oracle_equivalence():
    rng = random.Random(12)
    for _ in range(200):
        h = oracles.random_graph(rng, rng.randrange(1, 7), 0.5)
        g = oracles.random_graph(rng, rng.randrange(1, 9), 0.5)
        td = tree_decomposition(h)
        assert count_homs_td(h, td, g) == count_maps(MapKind.HOM, h, g)


def test_count_homs_td_rejects_bad_decomposition():
    p2 = path_graph(2)
    bad = TreeDecomposition((frozenset({0, 1}),), (-1,), 1, True)
    with pytest.raises(InvalidDecomposition):
        count_homs_td(p2, bad, complete_graph(3))


# --- colorful / color-prescribed --------------------------------------------


def test_cphom_identity_coloring_triangle():
    k3 = complete_graph(3)
    col = VertexColoring(k3, k3, (0, 1, 2))
    assert count_maps(MapKind.CPHOM, k3, k3, coloring=col) == 1


def test_cphom_matches_brute_force():
    rng = random.Random(13)
    done = 0
    while done < 60:
        h = oracles.random_graph(rng, rng.randrange(1, 4), 0.6)
        g = oracles.random_graph(rng, rng.randrange(1, 6), 0.4)
        assignment = tuple(rng.randrange(h.vertex_count) for _ in range(g.vertex_count))
        try:
            col = VertexColoring(g, h, assignment)
        except Exception:
            continue
        done += 1
        assert count_maps(MapKind.CPHOM, h, g, coloring=col) == oracles.brute_cp_homs(
            h, g, assignment
        )


def test_colorful_k2_identity():
    k2 = complete_graph(2)
    col = VertexColoring(k2, k2, (0, 1))
    assert count_maps(MapKind.COLORFUL, k2, k2, coloring=col) == 2


def test_colorful_matches_brute_force():
    rng = random.Random(14)
    done = 0
    while done < 60:
        h = oracles.random_graph(rng, rng.randrange(1, 4), 0.6)
        g = oracles.random_graph(rng, rng.randrange(1, 6), 0.4)
        assignment = tuple(rng.randrange(h.vertex_count) for _ in range(g.vertex_count))
        try:
            col = VertexColoring(g, h, assignment)
        except Exception:
            continue
        done += 1
        assert count_maps(
            MapKind.COLORFUL, h, g, coloring=col
        ) == oracles.brute_colorful_homs(h, g, assignment)


def test_colorful_incl_excl_matches_direct():
    rng = random.Random(15)
    done = 0
    while done < 100:
        h = oracles.random_graph(rng, rng.randrange(1, 5), 0.6)
        g = oracles.random_graph(rng, rng.randrange(1, 7), 0.4)
        assignment = tuple(rng.randrange(h.vertex_count) for _ in range(g.vertex_count))
        try:
            col = VertexColoring(g, h, assignment)
        except Exception:
            continue
        done += 1
        deletions_colored = colorful_incl_excl(
            h,
            g,
            col,
            lambda sub: oracles.brute_homs(h, sub),
        )
        assert deletions_colored == oracles.brute_colorful_homs(h, g, assignment)


def test_colorful_missing_class_is_zero():
    h = complete_graph(2)
    g = Graph.build(3, [(0, 1), (1, 2), (0, 2)])
    # color everything 0: class 1 empty, so no colorful hom can exist
    col = VertexColoring(g, Graph.build(2, [(0, 1)], loops=[0]), (0, 0, 0))
    assert count_maps(MapKind.COLORFUL, h, g, coloring=col) == 0
    assert (
        colorful_incl_excl(h, g, col, lambda sub: oracles.brute_homs(h, sub)) == 0
    )


def test_colorful_incl_excl_budget():
    h = empty_graph(17)
    g = empty_graph(17)
    col = VertexColoring(g, h, tuple(range(17)))
    with pytest.raises(BudgetExceeded):
        colorful_incl_excl(h, g, col, lambda sub: 1)


# --- matching number --------------------------------------------------------


def test_matching_number_examples():
    assert matching_number(complete_graph(4)) == 2
    assert matching_number(star_graph(5)) == 1
    assert matching_number(cycle_graph(7)) == 3
    assert matching_number(empty_graph(5)) == 0


def test_matching_number_random():
    rng = random.Random(16)
    for _ in range(30):
        g = oracles.random_graph(rng, rng.randrange(1, 8), 0.4)
        best = 0
        edges = g.edge_list()
        for size in range(len(edges), 0, -1):
            from itertools import combinations as C

            if any(
                len({x for e in sel for x in e}) == 2 * size
                for sel in C(edges, size)
            ):
                best = size
                break
        assert matching_number(g) == best


# --- color-prescribed via automorphisms --------------------------------------


def test_cphoms_via_automorphisms_triangle():
    k3 = complete_graph(3)
    col = VertexColoring(k3, k3, (0, 1, 2))
    assert cphoms_via_automorphisms(k3, k3, col) == 1


def test_cphoms_via_automorphisms_requires_core():
    p2 = path_graph(2)
    col = VertexColoring(p2, p2, (0, 1, 2))
    with pytest.raises(NotACore):
        cphoms_via_automorphisms(p2, p2, col)


def test_cphoms_via_automorphisms_matches_brute():
    rng = random.Random(17)
    cores = [complete_graph(2), complete_graph(3), cycle_graph(5), complete_graph(4)]
    done = 0
    while done < 100:
        h = rng.choice(cores)
        g = oracles.random_graph(rng, rng.randrange(2, 7), 0.6)
        assignment = tuple(rng.randrange(h.vertex_count) for _ in range(g.vertex_count))
        try:
            col = VertexColoring(g, h, assignment)
        except Exception:
            continue
        done += 1
        assert cphoms_via_automorphisms(h, g, col) == oracles.brute_cp_homs(
            h, g, assignment
        )


def test_cphom_k2_c6():
    k2 = complete_graph(2)
    c6 = cycle_graph(6)
    col = VertexColoring(c6, k2, (0, 1, 0, 1, 0, 1))
    expected = count_maps(MapKind.HOM, k2, c6) // 2
    assert cphoms_via_automorphisms(k2, c6, col) == expected
    assert expected == oracles.brute_cp_homs(k2, c6, (0, 1, 0, 1, 0, 1))


# --- F-colored router --------------------------------------------------------


def test_fcolored_odd_cycle_into_bipartite_is_zero():
    c5 = cycle_graph(5)
    c6 = cycle_graph(6)
    k2 = complete_graph(2)
    assert solve_fcolored_instance(c5, c6, k2, width_budget=1, f_coloring=(0, 1, 0, 1, 0, 1)) == 0


def test_fcolored_path_uses_dp():
    p3 = path_graph(3)
    c6 = cycle_graph(6)
    k2 = complete_graph(2)
    out = solve_fcolored_instance(p3, c6, k2, width_budget=2, f_coloring=(0, 1, 0, 1, 0, 1))
    assert out == oracles.brute_homs(p3, c6)


def test_fcolored_k1():
    k1 = complete_graph(1)
    rng = random.Random(18)
    g = oracles.random_bipartite_graph(rng, 6)
    from homkit.graphs import bipartition

    col = bipartition(g)
    out = solve_fcolored_instance(k1, g, complete_graph(2), width_budget=3, f_coloring=col)
    assert out == g.vertex_count


def test_fcolored_invalid_witness():
    c5 = cycle_graph(5)
    with pytest.raises(InvalidWitness):
        solve_fcolored_instance(
            c5, cycle_graph(5), complete_graph(2), 2, f_coloring=(0, 1, 0, 1, 0)
        )
