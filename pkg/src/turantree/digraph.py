"""Red/blue orientation digraph over a pattern and the source-set selection.

Every pattern edge contributes both orientations; the pairs surviving the
refinement procedure are red, everything else blue.  The selection picks one
representative per source component of the blue condensation: the smallest
set from which everything is blue-reachable, maximising total reachability
among sets of that size.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InternalConsistencyError, ValidationError
from .graphs import Graph, iter_bits, require_pattern


@dataclass(frozen=True)
class ColouredDigraph:
    """Both orientations of every pattern edge, coloured red or blue."""

    n: int
    red: tuple                 # ordered pairs
    blue: tuple                # ordered pairs
    scc_partition: tuple       # blue strongly connected parts, by least vertex
    part_of: tuple             # vertex -> part index
    condensation: tuple        # arcs between distinct parts of the blue digraph

    def blue_adj(self) -> list:
        out = [0] * self.n
        for u, w in self.blue:
            out[u] |= 1 << w
        return out

    def blue_reachable(self, start_mask: int) -> int:
        """Bitset of vertices blue-reachable from the start set (inclusive)."""
        adj = self.blue_adj()
        reach = start_mask
        frontier = start_mask
        while frontier:
            grow = 0
            for v in iter_bits(frontier):
                grow |= adj[v]
            grow &= ~reach
            reach |= grow
            frontier = grow
        return reach


@dataclass(frozen=True)
class ASelection:
    """Chosen source representatives A, their parts' union W, and U = V - W."""

    A: tuple
    W: tuple
    U: tuple
    reach_sum: int


def _tarjan_sccs(n: int, adj: Sequence[int]) -> list:
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list = []
    sccs = []
    counter = [0]

    def strongconnect(v: int) -> None:
        work = [(v, iter(list(iter_bits(adj[v]))))]
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack[v] = True
        while work:
            u, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(list(iter_bits(adj[w])))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[u] = min(low[u], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[u])
            if low[u] == index[u]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == u:
                        break
                sccs.append(tuple(sorted(comp)))

    for v in range(n):
        if index[v] == -1:
            strongconnect(v)
    sccs.sort(key=lambda part: part[0])
    return sccs


def colour_digraph(H: Graph, red_pairs: Iterable) -> ColouredDigraph:
    """Build the two-coloured digraph and its blue condensation."""
    require_pattern(H, "H")
    red = []
    seen = set()
    for u, w in red_pairs:
        if not (0 <= u < H.n and 0 <= w < H.n) or not H.has_edge(u, w):
            raise ValidationError(f"red pair ({u},{w}) is not an H-edge")
        if (w, u) in seen:
            raise ValidationError(f"both orientations of {u}-{w} marked red")
        if (u, w) in seen:
            raise ValidationError(f"duplicate red pair ({u},{w})")
        seen.add((u, w))
        red.append((u, w))
    red = tuple(sorted(red))
    blue = tuple(sorted(
        (u, w)
        for u in range(H.n) for w in iter_bits(H.adj[u])
        if (u, w) not in seen))
    blue_adj = [0] * H.n
    for u, w in blue:
        blue_adj[u] |= 1 << w
    parts = _tarjan_sccs(H.n, blue_adj)
    part_of = [0] * H.n
    for k, part in enumerate(parts):
        for v in part:
            part_of[v] = k
    condensation = tuple(sorted({
        (part_of[u], part_of[w]) for u, w in blue if part_of[u] != part_of[w]}))
    return ColouredDigraph(n=H.n, red=red, blue=blue,
                           scc_partition=tuple(parts), part_of=tuple(part_of),
                           condensation=condensation)


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def select_A(d: ColouredDigraph) -> ASelection:
    """Representatives of source parts, with every claimed property re-verified.

    A has one lowest-index vertex per source part of the blue condensation.
    The re-verification covers: full blue reachability, minimality of |A|
    (no smaller set reaches everything), maximal total reachability among
    minimal sets, at most one vertex per part, no arcs of either colour
    between distinct parts inside W, and no blue arcs from U to W.
    """
    n = d.n
    has_incoming = set(b for _, b in d.condensation)
    sources = [k for k in range(len(d.scc_partition)) if k not in has_incoming]
    A = tuple(sorted(d.scc_partition[k][0] for k in sources))
    W = tuple(sorted(v for k in sources for v in d.scc_partition[k]))
    w_mask = _mask(W)
    U = tuple(v for v in range(n) if not (w_mask >> v) & 1)

    full = (1 << n) - 1
    reach_of = [d.blue_reachable(1 << v) for v in range(n)]

    def covers(vertices) -> bool:
        return d.blue_reachable(_mask(vertices)) == full

    if not covers(A):
        raise InternalConsistencyError("A does not blue-reach every vertex")
    if len(A) > 1:
        for smaller in combinations(range(n), len(A) - 1):
            if covers(smaller):
                raise InternalConsistencyError("a smaller set reaches everything")
    reach_sum = sum(reach_of[v].bit_count() for v in A)
    for other in combinations(range(n), len(A)):
        if covers(other):
            s = sum(reach_of[v].bit_count() for v in other)
            if s > reach_sum:
                raise InternalConsistencyError(
                    "an equal-size covering set has larger reach sum")
    parts_hit = [d.part_of[v] for v in A]
    if len(set(parts_hit)) != len(A):
        raise InternalConsistencyError("A repeats a part")
    for u, w in d.red + d.blue:
        pu, pw = d.part_of[u], d.part_of[w]
        if pu != pw and (w_mask >> u) & 1 and (w_mask >> w) & 1:
            raise InternalConsistencyError(
                f"arc ({u},{w}) joins distinct parts inside W")
    for u, w in d.blue:
        if not (w_mask >> u) & 1 and (w_mask >> w) & 1:
            raise InternalConsistencyError(f"blue arc ({u},{w}) runs from U into W")
    return ASelection(A=A, W=W, U=U, reach_sum=reach_sum)
