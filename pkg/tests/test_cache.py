"""The JSON-lines exponent cache."""

from __future__ import annotations

import json

import pytest

from turantree.cache import cache_lookup_or_compute
from turantree.graphs import Graph


class TestCache:
    def test_compute_then_hit(self, named, tmp_path):
        store = tmp_path / "store.jsonl"
        p1 = cache_lookup_or_compute(named["K2"], named["P3"], store)
        assert p1.r == 1
        assert len(store.read_text().splitlines()) == 1
        p2 = cache_lookup_or_compute(named["K2"], named["P3"], store)
        assert p2 == p1
        assert len(store.read_text().splitlines()) == 1

    def test_isomorphic_inputs_share_entries(self, named, tmp_path):
        store = tmp_path / "store.jsonl"
        cache_lookup_or_compute(named["P3"], named["P4"], store)
        other_p3 = Graph.from_edges(3, [(0, 2), (1, 2)])
        cache_lookup_or_compute(other_p3, named["P4"], store)
        assert len(store.read_text().splitlines()) == 1

    def test_tampered_record_recomputed(self, named, tmp_path):
        store = tmp_path / "store.jsonl"
        cache_lookup_or_compute(named["P3"], named["P4"], store)
        rec = json.loads(store.read_text())
        rec["profile"]["r"] = 9
        store.write_text(json.dumps(rec) + "\n")
        p = cache_lookup_or_compute(named["P3"], named["P4"], store)
        assert p.r == 2
        assert len(store.read_text().splitlines()) == 2  # fresh record appended

    def test_corrupt_line_ignored(self, named, tmp_path):
        store = tmp_path / "store.jsonl"
        store.write_text("not json at all\n")
        p = cache_lookup_or_compute(named["K2"], named["P3"], store)
        assert p.r == 1
        assert len(store.read_text().splitlines()) == 2

    def test_unwritable_store_warns_and_computes(self, named, tmp_path):
        store = tmp_path / "nodir" / "deeper" / "store.jsonl"
        with pytest.warns(UserWarning):
            p = cache_lookup_or_compute(named["K2"], named["P3"], store)
        assert p.r == 1

    def test_zero_profile_cached(self, named, tmp_path):
        store = tmp_path / "store.jsonl"
        p = cache_lookup_or_compute(named["P4"], named["P3"], store)
        assert p.status == "Zero"
        p2 = cache_lookup_or_compute(named["P4"], named["P3"], store)
        assert p2.status == "Zero"
        assert len(store.read_text().splitlines()) == 1
