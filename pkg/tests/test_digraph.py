"""Red/blue digraph construction and the source-set selection."""

from __future__ import annotations

from itertools import product

import pytest

from turantree.digraph import colour_digraph, select_A
from turantree.errors import ValidationError
from turantree.extremal import nonisomorphic_graphs


class TestColourDigraph:
    def test_single_edge(self, named):
        d = colour_digraph(named["K2"], [(1, 0)])
        assert d.red == ((1, 0),)
        assert d.blue == ((0, 1),)
        assert d.scc_partition == ((0,), (1,))

    def test_all_blue_path_is_one_scc(self, named):
        d = colour_digraph(named["P3"], [])
        assert d.scc_partition == ((0, 1, 2),)
        assert d.condensation == ()

    def test_blue_path_condensation(self, named):
        d = colour_digraph(named["P3"], [(1, 0), (2, 1)])
        assert d.blue == ((0, 1), (1, 2))
        assert d.scc_partition == ((0,), (1,), (2,))
        assert d.condensation == ((0, 1), (1, 2))

    def test_rejects_non_edge(self, named):
        with pytest.raises(ValidationError):
            colour_digraph(named["P3"], [(0, 2)])

    def test_rejects_both_orientations(self, named):
        with pytest.raises(ValidationError):
            colour_digraph(named["P3"], [(0, 1), (1, 0)])


class TestSelectA:
    def test_path_condensation(self, named):
        sel = select_A(colour_digraph(named["P3"], [(1, 0), (2, 1)]))
        assert sel.A == (0,)
        assert sel.W == (0,)
        assert sel.U == (1, 2)
        assert sel.reach_sum == 3

    def test_everything_red_one_way(self, named):
        # each edge red somewhere: every vertex whose blue in-arcs vanish is a source
        sel = select_A(colour_digraph(named["P3"], [(0, 1), (2, 1)]))
        assert sel.A == (1,)
        assert sel.U == (0, 2)

    def test_all_blue_single_source(self, named):
        sel = select_A(colour_digraph(named["K4"], []))
        assert sel.A == (0,)
        assert sel.W == (0, 1, 2, 3)
        assert sel.U == ()

    def test_exhaustive_small_patterns(self):
        # every pattern on <= 4 vertices, every one-orientation red subset
        patterns = [g for n in range(2, 5) for g in nonisomorphic_graphs(n)
                    if not g.isolated_vertices()]
        assert len(patterns) == 10
        total = 0
        for H in patterns:
            edges = list(H.edges())
            for choice in product((None, 0, 1), repeat=len(edges)):
                red = []
                for c, (u, v) in zip(choice, edges):
                    if c == 0:
                        red.append((u, v))
                    elif c == 1:
                        red.append((v, u))
                d = colour_digraph(H, red)
                sel = select_A(d)   # re-verifies (a)-(c) and (i)-(iii) itself
                _independent_check(H, d, sel)
                total += 1
        assert total == sum(3 ** g.edge_count for g in patterns)


def _independent_check(H, d, sel):
    """Re-derive the selection conditions from plain pair lists."""
    blue = set(d.blue)
    n = H.n

    def reach(srcs):
        seen = set(srcs)
        stack = list(srcs)
        while stack:
            v = stack.pop()
            for (a, b) in blue:
                if a == v and b not in seen:
                    seen.add(b)
                    stack.append(b)
        return seen

    assert reach(sel.A) == set(range(n))
    from itertools import combinations
    for smaller in combinations(range(n), len(sel.A) - 1):
        assert reach(smaller) != set(range(n))
    best = sel.reach_sum
    for other in combinations(range(n), len(sel.A)):
        if reach(other) == set(range(n)):
            assert sum(len(reach([v])) for v in other) <= best
    w = set(sel.W)
    for (a, b) in blue:
        assert not (a not in w and b in w)
