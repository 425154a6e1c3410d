"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

import sys
from itertools import combinations, permutations
from pathlib import Path

try:
    import turantree  # noqa: F401
except ImportError:  # running from a checkout without installing
    sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import pytest

from turantree.graphs import Graph


def g_from(n, edges):
    return Graph.from_edges(n, edges)


@pytest.fixture(scope="session")
def named():
    """The small named graphs used throughout the spec examples."""
    return {
        "K1": Graph.empty(1),
        "K2": g_from(2, [(0, 1)]),
        "P3": g_from(3, [(0, 1), (1, 2)]),
        "K3": g_from(3, [(0, 1), (1, 2), (0, 2)]),
        "P4": g_from(4, [(0, 1), (1, 2), (2, 3)]),
        "K13": g_from(4, [(0, 1), (0, 2), (0, 3)]),
        "C4": g_from(4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
        "K4": g_from(4, [(i, j) for i in range(4) for j in range(i + 1, 4)]),
        "C5": g_from(5, [(i, (i + 1) % 5) for i in range(5)]),
        "K14": g_from(5, [(0, i) for i in range(1, 5)]),
        "K15": g_from(6, [(0, i) for i in range(1, 6)]),
        "2K2": g_from(4, [(0, 1), (2, 3)]),
    }


# ---------------------------------------------------------------------------
# independent oracles (no shared code with the kernels)
# ---------------------------------------------------------------------------

def perm_injective_count(host: Graph, pattern: Graph) -> int:
    """Injective hom count by full enumeration of vertex tuples."""
    pedges = list(pattern.edges())
    count = 0
    for img in permutations(range(host.n), pattern.n):
        if all(host.has_edge(img[u], img[w]) for u, w in pedges):
            count += 1
    return count


def naive_contains(host: Graph, pattern: Graph) -> bool:
    """Recursive containment test on plain dict/set structures."""
    pedges = list(pattern.edges())
    nbrs = {u: set() for u in range(pattern.n)}
    for u, w in pedges:
        nbrs[u].add(w)
        nbrs[w].add(u)
    assign = {}
    used = set()

    def rec(u: int) -> bool:
        if u == pattern.n:
            return True
        for v in range(host.n):
            if v in used:
                continue
            if any(w in assign and not host.has_edge(v, assign[w]) for w in nbrs[u]):
                continue
            assign[u] = v
            used.add(v)
            if rec(u + 1):
                return True
            del assign[u]
            used.remove(v)
        return False

    return rec(0)


def naive_automorphisms(g: Graph) -> int:
    """Adjacency-preserving bijections by full enumeration (any graph)."""
    count = 0
    for perm in permutations(range(g.n)):
        if all(g.has_edge(perm[u], perm[v]) == g.has_edge(u, v)
               for u in range(g.n) for v in range(u + 1, g.n)):
            count += 1
    return count


def naive_degeneracy(g: Graph) -> int:
    """Minimum over all orderings of the maximum back-degree (exhaustive)."""
    best = g.n
    for perm in permutations(range(g.n)):
        pos = {v: k for k, v in enumerate(perm)}
        worst = max((sum(1 for w in g.neighbors(v) if pos[w] > pos[v])
                     for v in perm), default=0)
        best = min(best, worst)
    return best


def naive_exponent(H: Graph, T: Graph):
    """No-early-exit enumeration of every subset with direct blow-up tests.

    Returns ("Zero", None) or ("Finite", r).  Blow-ups are built by explicit
    copy-and-identify construction, separate from the library's builder.
    """
    if naive_contains(H, T):
        return ("Zero", None)
    t = T.n
    h = H.n
    best = -1
    for size in range(h + 1):
        for u_set in combinations(range(h), size):
            u_set = set(u_set)
            rest = [v for v in range(h) if v not in u_set]
            ids = {}
            for k, u in enumerate(sorted(u_set)):
                ids[("u", u)] = k
            nxt = len(u_set)
            for i in range(1, t + 1):
                for v in rest:
                    ids[(i, v)] = nxt
                    nxt += 1

            def node(v, i):
                return ids[("u", v)] if v in u_set else ids[(i, v)]

            edges = set()
            for a, b in H.edges():
                for i in range(1, t + 1):
                    x, y = node(a, i), node(b, i)
                    edges.add((min(x, y), max(x, y)))
            blown = Graph.from_edges(nxt, edges)
            if naive_contains(blown, T):
                continue
            remaining = [v for v in range(h) if v not in u_set]
            comps = _naive_components(H, remaining)
            best = max(best, comps)
    return ("Finite", best)


def _naive_components(g: Graph, vertices) -> int:
    vertices = set(vertices)
    seen = set()
    comps = 0
    for start in sorted(vertices):
        if start in seen:
            continue
        comps += 1
        stack = [start]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(w for w in g.neighbors(v) if w in vertices and w not in seen)
    return comps
