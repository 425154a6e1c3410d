"""Universe enumeration, the brute-force oracle, constructions, and growth."""

from __future__ import annotations

import io
import math

import pytest

from conftest import naive_automorphisms
from turantree.embeddings import automorphism_count, contains_copy, count_copies
from turantree.errors import UnsupportedError, ValidationError
from turantree.extremal import (brute_force_ex, growth_report,
                                lower_bound_construction, nonisomorphic_graphs,
                                oracle_vs_construction)
from turantree.graphs import Graph, canonical_form, serialize_graph

KNOWN_CLASS_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}


def aut_with_isolated(g: Graph) -> int:
    """|Aut| for arbitrary graphs: isolated vertices permute freely."""
    iso = g.isolated_vertices()
    core_vertices = [v for v in range(g.n) if v not in iso]
    relabel = {v: i for i, v in enumerate(core_vertices)}
    core = Graph.from_edges(len(core_vertices),
                            [(relabel[a], relabel[b]) for a, b in g.edges()])
    core_aut = automorphism_count(core) if core.n else 1
    return core_aut * math.factorial(len(iso))


class TestUniverse:
    def test_class_counts(self):
        for n, expected in KNOWN_CLASS_COUNTS.items():
            assert len(nonisomorphic_graphs(n)) == expected

    def test_labelled_sum_oracle(self):
        # sum over classes of n!/|Aut| must recover all labelled graphs
        for n in range(1, 8):
            total = 0
            for g in nonisomorphic_graphs(n):
                aut = naive_automorphisms(g) if n <= 5 else aut_with_isolated(g)
                total += math.factorial(n) // aut
            assert total == 2 ** (n * (n - 1) // 2)

    def test_representatives_are_canonical(self):
        for g in nonisomorphic_graphs(5):
            assert serialize_graph(g) == canonical_form(g)

    def test_cap(self):
        with pytest.raises(UnsupportedError):
            nonisomorphic_graphs(8)


class TestBruteForce:
    def test_matching_identity(self, named):
        for n in range(2, 7):
            r = brute_force_ex(n, named["K2"], named["P3"])
            assert r.max_count == n // 2
            assert contains_copy(r.witness, named["P3"]) is None

    def test_examples(self, named):
        assert brute_force_ex(4, named["K2"], named["P3"]).max_count == 2
        r = brute_force_ex(5, named["P3"], named["P4"])
        assert r.max_count == 6
        assert r.witness.edge_count == 4  # the 4-leaf star
        r = brute_force_ex(6, named["K3"], named["K13"])
        assert r.max_count == 2

    def test_examined_counts(self, named):
        r = brute_force_ex(5, named["K2"], named["P3"])
        assert r.graphs_examined == 34
        assert r.source == "internal-enumeration"

    def test_stream_matches_internal(self, named):
        lines = [serialize_graph(g) for g in nonisomorphic_graphs(5)]
        streamed = brute_force_ex(5, named["P3"], named["P4"], source="stream",
                                  stream=io.StringIO("\n".join(lines) + "\n"))
        internal = brute_force_ex(5, named["P3"], named["P4"])
        assert streamed.max_count == internal.max_count
        assert streamed.source == "graph6-stream"
        assert canonical_form(streamed.witness) == canonical_form(internal.witness)

    def test_stream_wrong_size(self, named):
        with pytest.raises(ValidationError):
            brute_force_ex(4, named["K2"], named["P3"], source="stream",
                           stream=io.StringIO("Bw\n"))

    def test_internal_cap(self, named):
        with pytest.raises(UnsupportedError):
            brute_force_ex(9, named["K2"], named["P3"])

    def test_n8_exhausts_extensions(self, named):
        # n = 8 sweeps every extension of the 7-vertex classes, undeduplicated
        r = brute_force_ex(8, named["K2"], named["P3"])
        assert r.max_count == 4
        assert r.graphs_examined == 1044 * 2 ** 7


class TestConstruction:
    def test_star_for_path_pair(self, named):
        g = lower_bound_construction(named["P3"], named["P4"], 9)
        assert g.n == 9 and g.edge_count == 8
        degs = sorted(g.degree(v) for v in range(9))
        assert degs == [1] * 8 + [8]

    def test_matching(self, named):
        g = lower_bound_construction(named["K2"], named["P3"], 6)
        assert sorted(g.edges()) == [(0, 1), (2, 3), (4, 5)]

    def test_triangles_with_padding(self, named):
        g = lower_bound_construction(named["K3"], named["K13"], 7)
        assert g.n == 7 and g.edge_count == 6
        assert count_copies(g, named["K3"]) == 2

    def test_errors(self, named):
        with pytest.raises(ValidationError, match="Ex = 0"):
            lower_bound_construction(named["P4"], named["P3"], 10)
        with pytest.raises(ValidationError):
            lower_bound_construction(named["P3"], named["P4"], 2)

    def test_t_free_for_all_pairs(self, named):
        pairs = [("K2", "P3"), ("P3", "P4"), ("K3", "K13"), ("P3", "K13")]
        for hn, tn in pairs:
            for n in range(named[hn].n, 20):
                g = lower_bound_construction(named[hn], named[tn], n)
                assert g.n == n
                assert contains_copy(g, named[tn]) is None


class TestGrowth:
    def test_matching_counts(self, named):
        rep = growth_report(named["K2"], named["P3"], [10, 20, 40])
        assert rep.rows == ((10, 5), (20, 10), (40, 20))
        assert rep.slopes == (1.0, 1.0)
        assert rep.r_claimed == 1

    def test_star_counts(self, named):
        # K_{1,2k} at n = 2k+1 padded: counts are C(2k, 2)
        rep = growth_report(named["P3"], named["P4"], [12, 24, 48])
        assert rep.rows == ((12, 45), (24, 231), (48, 1035))
        assert rep.r_claimed == 2
        assert rep.strictly_increasing

    def test_triangle_counts(self, named):
        rep = growth_report(named["K3"], named["K13"], [12, 24, 48])
        assert rep.rows == ((12, 4), (24, 8), (48, 16))
        assert rep.slopes == (1.0, 1.0)

    def test_validation(self, named):
        with pytest.raises(ValidationError):
            growth_report(named["K2"], named["P3"], [10, 10])
        with pytest.raises(ValidationError):
            growth_report(named["K2"], named["P3"], [4, 8])  # below h*t = 6
        with pytest.raises(ValidationError):
            growth_report(named["P4"], named["P3"], [12, 24])


class TestOracleVsConstruction:
    def test_examples(self, named):
        assert oracle_vs_construction(6, named["K2"], named["P3"]) \
            .oracle_count == 3
        rec = oracle_vs_construction(5, named["P3"], named["P4"])
        assert (rec.oracle_count, rec.construction_count) == (6, 6)
        rec = oracle_vs_construction(7, named["K3"], named["K13"])
        assert (rec.oracle_count, rec.construction_count) == (2, 2)
