"""Blow-up construction and exponent computation against the no-early-exit oracle."""

from __future__ import annotations

import random
from dataclasses import replace
from itertools import combinations

import pytest

from conftest import naive_contains, naive_exponent
from turantree.blowup import (ExponentProfile, blow_up, exponent_r, verify_profile)
from turantree.embeddings import contains_copy, count_copies
from turantree.errors import ValidationError
from turantree.extremal import nonisomorphic_graphs
from turantree.graphs import Graph, connected_components, serialize_graph


class TestBlowUp:
    def test_identify_everything_returns_h(self, named):
        for name in ("K3", "P4", "C4"):
            H = named[name]
            b = blow_up(H, range(H.n), 4)
            assert b.graph == H
            assert b.phi == tuple(range(H.n))
            assert all(c == 0 for c in b.copy_index)

    def test_empty_u_gives_disjoint_copies(self, named):
        b = blow_up(named["K3"], [], 3)
        assert b.graph.n == 9 and b.graph.edge_count == 9
        assert len(connected_components(b.graph)) == 3
        assert count_copies(b.graph, named["K3"]) == 3

    def test_star_from_path_center(self, named):
        b = blow_up(named["P3"], [1], 3)
        assert b.graph.n == 7 and b.graph.edge_count == 6
        assert b.graph.degree(0) == 6  # identified centre listed first
        assert b.phi[0] == 1

    def test_copy_structure(self, named):
        H = named["P4"]
        b = blow_up(H, [1, 2], 3)
        assert b.graph.n == 2 + 3 * 2
        for i in range(1, 4):
            verts = set(b.u_vertices()) | set(b.copy_vertices(i))
            for a, c in H.edges():
                xs = [x for x in verts if b.phi[x] == a and b.copy_index[x] in (0, i)]
                ys = [y for y in verts if b.phi[y] == c and b.copy_index[y] in (0, i)]
                assert any(b.graph.has_edge(x, y) for x in xs for y in ys)

    def test_vertex_and_edge_arithmetic(self, named):
        rng = random.Random(7)
        for name in ("K3", "P4", "K13", "C4", "K4"):
            H = named[name]
            for _ in range(10):
                size = rng.randrange(0, H.n + 1)
                u = tuple(sorted(rng.sample(range(H.n), size)))
                t = rng.randrange(1, 5)
                b = blow_up(H, u, t)
                inside = sum(1 for a, c in H.edges() if a in u and c in u)
                assert b.graph.n == len(u) + t * (H.n - len(u))
                assert b.graph.edge_count == inside + t * (H.edge_count - inside)

    def test_copy_count_lower_bound(self, named):
        from turantree.graphs import components_within
        for name, u in (("P3", (1,)), ("K3", ()), ("P4", (1,))):
            H = named[name]
            mask = sum(1 << v for v in u)
            comps = len(components_within(H, ((1 << H.n) - 1) & ~mask))
            for t in (2, 3):
                b = blow_up(H, u, t)
                assert count_copies(b.graph, H) >= t ** comps

    def test_nesting_in_t(self, named):
        # once a blow-up catches T, every larger t does too
        for H in (named["P3"], named["K3"], named["P4"], named["K13"]):
            for T in (named["P3"], named["P4"], named["K13"]):
                for size in range(H.n + 1):
                    for u in combinations(range(H.n), size):
                        hit = [contains_copy(blow_up(H, u, t).graph, T) is not None
                               for t in range(1, 6)]
                        assert hit == sorted(hit)

    def test_u_not_subset(self, named):
        with pytest.raises(ValidationError):
            blow_up(named["K3"], [5], 2)
        with pytest.raises(ValidationError):
            blow_up(named["K3"], [0], 0)


class TestExponent:
    def test_pinned_table(self, named):
        cases = [
            ("K2", "P3", "Finite", 1, ()),
            ("P3", "P4", "Finite", 2, (1,)),
            ("K3", "K13", "Finite", 1, ()),
            ("P3", "K13", "Finite", 1, ()),
            ("P4", "P3", "Zero", None, None),
        ]
        for hn, tn, status, r, witness in cases:
            p = exponent_r(named[hn], named[tn])
            assert p.status == status
            assert p.r == r
            if witness is not None:
                assert p.witness_U == witness
            assert verify_profile(named[hn], named[tn], p)

    def test_against_naive_enumeration(self, named):
        patterns = [g for n in range(2, 5) for g in nonisomorphic_graphs(n)
                    if not g.isolated_vertices()]
        trees = [named["P3"], named["P4"], named["K13"]]
        for H in patterns:
            for T in trees:
                got = exponent_r(H, T)
                status, r = naive_exponent(H, T)
                assert got.status == status
                if status == "Finite":
                    assert got.r == r

    def test_against_naive_enumeration_h5(self, named):
        rng = random.Random(61)
        patterns = [g for g in nonisomorphic_graphs(5) if not g.isolated_vertices()]
        p5 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        broom = Graph.from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
        for H in rng.sample(patterns, 8):
            for T in (p5, broom, named["K14"]):
                got = exponent_r(H, T)
                status, r = naive_exponent(H, T)
                assert got.status == status
                if status == "Finite":
                    assert got.r == r

    def test_component_bound(self, named):
        for hn, tn in (("K2", "P3"), ("P3", "P4"), ("K3", "K13"), ("2K2", "P4")):
            p = exponent_r(named[hn], named[tn])
            if p.status == "Finite":
                a = len(connected_components(named[hn]))
                assert a <= p.r <= named[hn].n

    def test_requires_tree(self, named):
        with pytest.raises(ValidationError):
            exponent_r(named["K2"], named["C4"])

    def test_witness_blowup_is_t_free(self, named):
        p = exponent_r(named["P3"], named["P4"])
        b = blow_up(named["P3"], p.witness_U, p.t_used)
        assert not naive_contains(b.graph, named["P4"])
        assert serialize_graph(b.graph)  # sanity: constructible


class TestVerifyProfile:
    def test_correct_profile(self, named):
        p = exponent_r(named["P3"], named["P4"])
        assert verify_profile(named["P3"], named["P4"], p)

    def test_inflated_r(self, named):
        p = exponent_r(named["P3"], named["P4"])
        assert not verify_profile(named["P3"], named["P4"], replace(p, r=3))

    def test_leaf_witness_rejected(self, named):
        bad = ExponentProfile(status="Finite", t_used=4, r=1, witness_U=(1,))
        check = verify_profile(named["P3"], named["K13"], bad)
        assert not check and check.reason

    def test_wrong_status(self, named):
        assert not verify_profile(named["P4"], named["P3"],
                                  ExponentProfile(status="Finite", t_used=3,
                                                  r=1, witness_U=()))
        assert not verify_profile(named["K2"], named["P3"],
                                  ExponentProfile(status="Zero", t_used=3))
