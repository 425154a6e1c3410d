#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Three workloads mirror the package's hot paths: counting injective maps in
blow-ups and random hosts, the containment filter over the 7-vertex class
universe, and canonical-form computation during universe construction.

    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from turantree import _purecore, kernels
from turantree.blowup import blow_up
from turantree.embeddings import _position_masks
from turantree.extremal import nonisomorphic_graphs
from turantree.graphs import Graph


def _patterns():
    return {
        "P3": Graph.from_edges(3, [(0, 1), (1, 2)]),
        "K3": Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]),
        "P4": Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]),
        "K13": Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)]),
    }


def _timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_counting(backends, repeat):
    pats = _patterns()
    rng = random.Random(1)
    hosts = [blow_up(pats["K3"], [], 40).graph,
             blow_up(pats["P3"], [1], 60).graph]
    for n, p in ((50, 0.15), (80, 0.08), (120, 0.05)):
        hosts.append(Graph.from_edges(
            n, [(i, j) for i in range(n) for j in range(i + 1, n)
                if rng.random() < p]))
    rows = []
    for name, mod in backends:
        def run():
            total = 0
            for host in hosts:
                for pat in pats.values():
                    order, parents, masks = _position_masks(host, pat)
                    total += mod.count_maps(host.adj, masks, parents)
            return total
        rows.append((name, *_timed(run, repeat)))
    return rows


def bench_containment(backends, repeat):
    pats = _patterns()
    universe = nonisomorphic_graphs(7)
    rows = []
    for name, mod in backends:
        def run():
            hits = 0
            for host in universe:
                for pat in (pats["P4"], pats["K13"]):
                    order, parents, masks = _position_masks(host, pat)
                    if mod.find_map(host.adj, masks, parents) is not None:
                        hits += 1
            return hits
        rows.append((name, *_timed(run, repeat)))
    return rows


def bench_canonical(backends, repeat):
    rng = random.Random(2)
    graphs = []
    for _ in range(400):
        n = rng.randrange(4, 9)
        graphs.append(Graph.from_edges(
            n, [(i, j) for i in range(n) for j in range(i + 1, n)
                if rng.random() < 0.5]))
    rows = []
    for name, mod in backends:
        def run():
            acc = 0
            for g in graphs:
                acc ^= mod.canonical_bits(g.n, g.adj)
            return acc
        rows.append((name, *_timed(run, repeat)))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="repetitions per measurement (best is kept)")
    args = parser.parse_args()

    backends = [("python", _purecore)]
    if kernels.compiled_available():
        from turantree import _fastcore
        backends.append(("cython", _fastcore))
    else:
        print("compiled kernels unavailable; benchmarking the fallback only")

    suites = [("count_maps (blow-ups + random hosts)", bench_counting),
              ("find_map (T-filter over 7-vertex classes)", bench_containment),
              ("canonical_bits (400 graphs, n in 4..8)", bench_canonical)]
    for title, bench in suites:
        rows = bench(backends, args.repeat)
        print(f"\n{title}")
        results = {name: result for name, _t, result in rows}
        if len(set(results.values())) != 1:
            print("  RESULT MISMATCH ACROSS BACKENDS:", results)
            raise SystemExit(2)
        base = rows[0][1]
        for name, t, _result in rows:
            speedup = f"  ({base / t:5.1f}x)" if name != "python" else ""
            print(f"  {name:<8} {t * 1000:9.1f} ms{speedup}")


if __name__ == "__main__":
    main()
