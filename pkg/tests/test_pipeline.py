"""End-to-end pipeline behaviour."""

from __future__ import annotations

import pytest

from turantree.blowup import blow_up
from turantree.errors import ValidationError
from turantree.graphs import Graph
from turantree.pipeline import PipelineStageError, run_pipeline
from turantree.proof import ProcedureConfig


def star(k):
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


class TestRunPipeline:
    def test_sparse_paper_scale(self, named):
        G = blow_up(named["K3"], [], 4).graph
        rep = run_pipeline(G, named["K3"], named["K13"])
        assert rep.outcome_kind == "Sparse"
        assert rep.sparse.component_count == 1
        assert rep.sparse.r == 1
        assert rep.sparse.a_le_r
        assert rep.sparse.bound_ok
        assert rep.sparse.family_size <= rep.sparse.bound
        assert all(t.ok for t in rep.thresholds)

    def test_not_t_free_input_surfaces_tree(self, named):
        rep = run_pipeline(star(20), named["P3"], named["K13"],
                           ProcedureConfig(constants=(2, 3), t=4))
        assert rep.outcome_kind == "Structured"
        assert any("not T-free" in f for f in rep.flags)
        cert = rep.structured.certificate
        assert cert is not None
        G = star(20)
        for u, w in named["K13"].edges():
            assert G.has_edge(cert.tree_map.map[u], cert.tree_map.map[w])

    def test_zero_copies_vacuous(self, named):
        rep = run_pipeline(Graph.empty(4), named["K3"], named["K13"])
        assert rep.copy_count == 0
        assert any("vacuously" in f for f in rep.flags)
        assert rep.outcome_kind is None

    def test_structured_report_fields(self, named):
        rep = run_pipeline(star(20), named["P3"], named["K13"],
                           ProcedureConfig(constants=(2, 3), t=4))
        s = rep.structured
        assert s.U == (1,)
        assert sorted(s.A) == [0, 2]
        assert s.gamma_n == 1 + 4 * 2
        assert s.gamma_contains_T
        assert len(rep.trace) >= 1

    def test_degeneracy_recorded(self, named):
        rep = run_pipeline(star(20), named["P3"], named["K13"],
                           ProcedureConfig(constants=(2, 3), t=4))
        assert rep.degeneracy == 1     # stars are 1-degenerate

    def test_config_t_mismatch(self, named):
        with pytest.raises(ValidationError):
            run_pipeline(star(5), named["P3"], named["K13"],
                         ProcedureConfig(constants=(2, 3), t=3))

    def test_requires_tree(self, named):
        with pytest.raises(ValidationError):
            run_pipeline(star(5), named["P3"], named["C4"])

    def test_stage_errors_are_named(self, named, monkeypatch):
        import turantree.pipeline as pl

        def boom(*args, **kwargs):
            raise RuntimeError("forced")

        monkeypatch.setattr(pl, "rainbow_partition", boom)
        with pytest.raises(PipelineStageError) as err:
            run_pipeline(star(5), named["P3"], named["K13"],
                         ProcedureConfig(constants=(2, 3), t=4))
        assert err.value.stage == "rainbow"

    def test_never_extracts_trees_from_t_free_hosts(self, named):
        # soundness: a certificate exhibits T inside G, so T-free inputs can
        # end Sparse, with a T-free blow-up, or starved, but never certified
        import random

        from turantree.embeddings import contains_copy
        from turantree.extremal import lower_bound_construction

        rng = random.Random(4242)
        pairs = [("K2", "P3"), ("P3", "P4"), ("K3", "K13"), ("P3", "K13")]
        hosts = []
        for hn, tn in pairs:
            for n in (12, 17, 25):
                hosts.append((lower_bound_construction(named[hn], named[tn], n),
                              named[hn], named[tn]))
        made = 0
        while made < 15:
            n = rng.randrange(6, 16)
            G = Graph.from_edges(n, [(i, j) for i in range(n)
                                     for j in range(i + 1, n)
                                     if rng.random() < 0.25])
            hn, tn = rng.choice(pairs)
            if contains_copy(G, named[tn]) is not None:
                continue
            hosts.append((G, named[hn], named[tn]))
            made += 1
        for G, H, T in hosts:
            e = H.edge_count
            lo = rng.randrange(1, 3)
            rep = run_pipeline(G, H, T,
                               ProcedureConfig(constants=tuple(range(lo, lo + e)),
                                               t=T.n))
            assert not any("not T-free" in f for f in rep.flags)
            if rep.structured is not None:
                assert rep.structured.certificate is None
