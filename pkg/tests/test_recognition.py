"""Recognition layer: holes, weak chordality, two-pairs, pattern scan."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from timcolor.graph import complement, line_graph, make_graph, square
from timcolor.generators import random_chordal_bipartite, random_weakly_chordal
from timcolor.oracles import brute_is_weakly_chordal, enumerate_chordless_cycles
from timcolor.patterns import (
    MAX_PATTERN_VERTICES,
    PatternError,
    PatternLibrary,
    load_pattern_library,
)
from timcolor.recognition import (
    OracleCapExceeded,
    enumerate_two_pairs,
    find_hole,
    find_two_pair,
    has_forbidden,
    is_chordal_bipartite,
    is_two_pair,
    is_weakly_chordal,
    scan_forbidden,
    stays_weakly_chordal_after_delete,
    stays_weakly_chordal_after_insert,
)
from timcolor.tim import all_unicast_messages, build_conflict_graph

from conftest import fixture_graph


def path(n):
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def clique(n):
    return make_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


class TestFindHole:
    def test_c5_is_its_own_hole(self):
        hole = find_hole(cycle(5))
        assert hole is not None and len(hole) == 5
        assert sorted(hole) == [0, 1, 2, 3, 4]

    def test_c4_has_none(self):
        assert find_hole(cycle(4)) is None

    def test_c6_with_long_chord_keeps_residual_5_hole(self):
        # chord (0,3) splits C_6 into a C_4 and... use C_7 with chord (0,4):
        # residual cycles C_5 (0..4) and C_4 (4,5,6,0).
        g = cycle(7).insert_edge(0, 4)
        hole = find_hole(g)
        assert hole is not None and len(hole) == 5
        assert sorted(hole) == [0, 1, 2, 3, 4]

    def test_returned_cycle_is_chordless(self):
        rng = random.Random(3)
        for _ in range(30):
            g = random_weakly_chordal(9, rng.randint(4, 18), rng)
            # salt with a possible hole by toggling an edge arbitrarily
            hole = find_hole(g)
            if hole is None:
                continue
            for i in range(len(hole)):
                for j in range(i + 2, len(hole)):
                    if i == 0 and j == len(hole) - 1:
                        continue
                    assert not g.has_edge(hole[i], hole[j])


class TestWeaklyChordal:
    def test_c5_false(self):
        assert not is_weakly_chordal(cycle(5))

    def test_c4_true(self):
        assert is_weakly_chordal(cycle(4))

    def test_antihole_detected(self):
        assert not is_weakly_chordal(complement(cycle(7)))

    def test_conflict_graphs_weakly_chordal(self):
        rng = random.Random(5)
        for _ in range(20):
            topo = random_chordal_bipartite(
                rng.randint(3, 6), rng.randint(3, 6), rng.uniform(0.3, 0.7), rng
            )
            cg = square(line_graph(topo.bipartite_graph()))
            assert is_weakly_chordal(cg)

    @given(st.integers(min_value=0, max_value=400), st.integers(6, 10))
    @settings(max_examples=40, deadline=None)
    def test_agrees_with_bruteforce(self, seed, n):
        rng = random.Random(seed)
        g = random_weakly_chordal(n, rng.randint(0, 2 * n), rng)
        # perturb once without the safety check to also produce negatives
        non_edges = [
            (u, v)
            for u in g.vertices
            for v in g.vertices
            if u < v and not g.has_edge(u, v)
        ]
        if non_edges:
            g = g.insert_edge(*rng.choice(non_edges))
        assert is_weakly_chordal(g) == brute_is_weakly_chordal(g)

    def test_incremental_matches_scratch(self):
        rng = random.Random(11)
        for _ in range(40):
            g = random_weakly_chordal(8, rng.randint(3, 14), rng)
            non_edges = [
                (u, v)
                for u in g.vertices
                for v in g.vertices
                if u < v and not g.has_edge(u, v)
            ]
            if non_edges:
                u, v = rng.choice(non_edges)
                assert stays_weakly_chordal_after_insert(g, u, v) == (
                    is_weakly_chordal(g.insert_edge(u, v))
                )
            edges = list(g.edges())
            if edges:
                u, v = rng.choice(edges)
                assert stays_weakly_chordal_after_delete(g, u, v) == (
                    is_weakly_chordal(g.delete_edge(u, v))
                )


class TestChordalBipartite:
    def test_c4(self):
        assert is_chordal_bipartite(cycle(4), ({0, 2}, {1, 3}))

    def test_c6(self):
        assert not is_chordal_bipartite(cycle(6), ({0, 2, 4}, {1, 3, 5}))

    def test_c6_with_splitting_chord(self):
        g = cycle(6).insert_edge(0, 3)
        assert is_chordal_bipartite(g, ({0, 2, 4}, {1, 3, 5}))

    def test_rejects_non_bipartition(self):
        with pytest.raises(ValueError):
            is_chordal_bipartite(cycle(4), ({0, 1}, {2, 3}))

    def test_infers_partition(self):
        assert is_chordal_bipartite(cycle(4))
        assert not is_chordal_bipartite(cycle(6))


class TestTwoPairs:
    def test_c4(self):
        tp = find_two_pair(cycle(4))
        assert tp is not None and frozenset(tp) in (
            frozenset({0, 2}),
            frozenset({1, 3}),
        )

    def test_k4_none(self):
        assert find_two_pair(clique(4)) is None

    def test_p4_never_endpoints(self):
        tp = find_two_pair(path(4))
        assert tp is not None and frozenset(tp) != frozenset({0, 3})
        assert not is_two_pair(path(4), 0, 3)

    def test_enumerate_c4(self):
        pairs = {frozenset(p) for p in enumerate_two_pairs(cycle(4))}
        assert pairs == {frozenset({0, 2}), frozenset({1, 3})}

    def test_enumerate_clique_empty(self):
        assert enumerate_two_pairs(clique(5)) == []

    def test_fig6_contains_paper_pairs(self, fig6):
        pairs = {frozenset(p) for p in enumerate_two_pairs(fig6)}
        # (v2,v5), (v1,v4), (v3,v6) in 0-indexed vertex ids
        assert {frozenset({1, 4}), frozenset({0, 3}), frozenset({2, 5})} <= pairs

    def test_cap_enforced(self):
        with pytest.raises(OracleCapExceeded):
            enumerate_two_pairs(make_graph(15, []))

    def test_hayward_property(self):
        # every weakly chordal non-complete graph has a two-pair
        rng = random.Random(17)
        for n in range(2, 13):
            for _ in range(12):
                g = random_weakly_chordal(n, rng.randint(0, n * 2), rng)
                complete = g.edge_count() == n * (n - 1) // 2
                if complete:
                    assert find_two_pair(g) is None
                else:
                    tp = find_two_pair(g)
                    assert tp is not None
                    assert is_two_pair(g, *tp)

    def test_find_agrees_with_enumeration(self):
        rng = random.Random(23)
        for _ in range(40):
            g = random_weakly_chordal(rng.randint(3, 10), rng.randint(2, 16), rng)
            tp = find_two_pair(g)
            pairs = {frozenset(p) for p in enumerate_two_pairs(g)}
            if tp is None:
                assert not pairs
            else:
                assert frozenset(tp) in pairs


class TestPatternLibrary:
    def test_bundled_library_shape(self):
        lib = load_pattern_library()
        assert len(lib) == 7
        assert all(g.n <= MAX_PATTERN_VERTICES for _, g in lib)
        assert len(set(lib.names)) == 7

    def test_patterns_are_weakly_chordal(self):
        # each forbidden pattern is itself weakly chordal: the scan adds
        # information beyond the hole/antihole check
        for _, g in load_pattern_library():
            assert is_weakly_chordal(g)

    def test_k23_adjacency(self):
        k23 = load_pattern_library().get("K23")
        assert k23.n == 5 and k23.edge_count() == 6
        degs = sorted(k23.degree(v) for v in k23.vertices)
        assert degs == [2, 2, 2, 3, 3]

    def test_rejects_oversized(self):
        with pytest.raises(PatternError):
            PatternLibrary.from_json(
                '[{"name": "big", "n": 9, "edges": []}]'
            )

    def test_rejects_duplicates(self):
        with pytest.raises(PatternError):
            PatternLibrary.from_json(
                '[{"name": "a", "n": 2, "edges": []},'
                ' {"name": "a", "n": 2, "edges": []}]'
            )


class TestScanForbidden:
    def test_identity_embedding(self):
        lib = load_pattern_library()
        k23 = lib.get("K23")
        found = scan_forbidden(k23, [("K23", k23)])
        assert len(found) == 1
        name, image = found[0]
        assert name == "K23" and frozenset(image) == frozenset(k23.vertices)

    def test_c4_clean(self):
        assert scan_forbidden(cycle(4), load_pattern_library()) == []
        assert not has_forbidden(cycle(4), load_pattern_library())

    def test_embedding_is_induced(self):
        lib = load_pattern_library()
        g = complement(path(6))  # equals the coP6 pattern plus nothing
        found = scan_forbidden(g, lib)
        assert any(name == "coP6" for name, _ in found)

    def test_conflict_graphs_clean(self):
        from timcolor.generators import random_convex

        rng = random.Random(29)
        lib = load_pattern_library()
        done = 0
        while done < 25:
            topo = random_convex(rng.randint(3, 7), rng.randint(3, 10), rng)
            try:
                cg = build_conflict_graph(topo, all_unicast_messages(topo))
            except Exception:
                continue
            done += 1
            assert scan_forbidden(cg.graph, lib) == []
