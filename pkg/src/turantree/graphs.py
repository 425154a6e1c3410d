"""Graph representation, graph6/edge-list codecs, and structural primitives.

Vertices are 0-based ints.  Adjacency is a tuple of bitset rows (Python
ints), which keeps neighbourhood intersection, component sweeps and degree
counts cheap for hosts up to the 65,536-vertex cap while staying hashable
and immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import kernels
from .errors import InternalConsistencyError, ParseError, UnsupportedError, ValidationError

MAX_HOST_VERTICES = 65536
MAX_PATTERN_VERTICES = 10


def iter_bits(x: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while x:
        low = x & -x
        x ^= low
        yield low.bit_length() - 1


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph: vertex count plus bitset adjacency rows."""

    n: int
    adj: tuple

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError("vertex count must be nonnegative")
        if self.n > MAX_HOST_VERTICES:
            raise UnsupportedError(f"graphs are capped at {MAX_HOST_VERTICES} vertices")
        if len(self.adj) != self.n:
            raise ValidationError("adjacency must have one row per vertex")
        for u, row in enumerate(self.adj):
            if row >> self.n:
                raise ValidationError(f"row {u} refers to a vertex >= n")
            if (row >> u) & 1:
                raise ValidationError(f"self-loop at vertex {u}")
            rest = row >> (u + 1)
            while rest:
                low = rest & -rest
                rest ^= low
                v = low.bit_length() + u
                if not (self.adj[v] >> u) & 1:
                    raise ValidationError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge ({u},{v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, u: int) -> Iterator[int]:
        return iter_bits(self.adj[u])

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> Iterator[tuple]:
        for u in range(self.n):
            rest = self.adj[u] >> (u + 1)
            while rest:
                low = rest & -rest
                rest ^= low
                yield (u, low.bit_length() + u)

    def isolated_vertices(self) -> list:
        return [u for u in range(self.n) if not self.adj[u]]


@dataclass(frozen=True)
class VertexOrdering:
    """A vertex order together with its verified maximum back-degree.

    ``bound`` is the largest number of neighbours any vertex has after itself
    in ``order``.
    """

    order: tuple
    bound: int


@dataclass(frozen=True)
class ComponentPartition:
    """Disjoint connected parts covering the vertex set, sorted by least index."""

    parts: tuple

    def __len__(self) -> int:
        return len(self.parts)


def require_pattern(g: Graph, name: str = "pattern") -> None:
    """Gate for graphs used as patterns: small, nonempty, no isolated vertices."""
    if g.n == 0:
        raise ValidationError(f"{name} must be nonempty")
    if g.n > MAX_PATTERN_VERTICES:
        raise UnsupportedError(f"{name} exceeds the {MAX_PATTERN_VERTICES}-vertex pattern cap")
    bad = g.isolated_vertices()
    if bad:
        raise ValidationError(f"{name} has isolated vertices {bad}")


# ---------------------------------------------------------------------------
# graph6 codec
# ---------------------------------------------------------------------------

def _g6_header(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    raise UnsupportedError(f"graph6 size {n} beyond supported range")


def _g6_parse_header(text: str) -> tuple:
    """Returns (n, offset of first body byte)."""
    if not text:
        raise ParseError("empty graph6 string", 0)
    c0 = ord(text[0])
    if c0 == 126:
        if len(text) >= 2 and ord(text[1]) == 126:
            start, width = 2, 6
        else:
            start, width = 1, 3
        if len(text) < start + width:
            raise ParseError("truncated graph6 size prefix", len(text))
        n = 0
        for k in range(width):
            c = ord(text[start + k])
            if not 63 <= c <= 126:
                raise ParseError("invalid graph6 byte in size prefix", start + k)
            n = (n << 6) | (c - 63)
        return n, start + width
    if not 63 <= c0 <= 126:
        raise ParseError("invalid graph6 header byte", 0)
    return c0 - 63, 1


def _g6_body_bits(g: Graph) -> tuple:
    """Upper-triangle bit vector in column-major pair order, MSB first."""
    nbits = g.n * (g.n - 1) // 2
    x = 0
    k = 0
    for j in range(1, g.n):
        col = g.adj[j] & ((1 << j) - 1)
        for i in range(j):
            k += 1
            if (col >> i) & 1:
                x |= 1 << (nbits - k)
    return x, nbits


def _pack_bits(x: int, nbits: int) -> str:
    ngroups = (nbits + 5) // 6
    if ngroups == 0:
        return ""
    x <<= ngroups * 6 - nbits
    return "".join(chr(63 + ((x >> (6 * (ngroups - 1 - k))) & 63)) for k in range(ngroups))


def _g6_encode(g: Graph) -> str:
    x, nbits = _g6_body_bits(g)
    return _g6_header(g.n) + _pack_bits(x, nbits)


def _g6_decode(text: str) -> Graph:
    n, body_at = _g6_parse_header(text)
    if n > MAX_HOST_VERTICES:
        raise UnsupportedError(f"graph6 declares {n} vertices, above the host cap")
    nbits = n * (n - 1) // 2
    ngroups = (nbits + 5) // 6
    if len(text) != body_at + ngroups:
        off = min(len(text), body_at + ngroups)
        raise ParseError(
            f"graph6 body length {len(text) - body_at}, expected {ngroups}", off)
    x = 0
    for k in range(ngroups):
        c = ord(text[body_at + k])
        if not 63 <= c <= 126:
            raise ParseError("invalid graph6 body byte", body_at + k)
        x = (x << 6) | (c - 63)
    pad = ngroups * 6 - nbits
    if pad and x & ((1 << pad) - 1):
        raise ParseError("nonzero graph6 padding bits", body_at + ngroups - 1)
    x >>= pad
    rows = [0] * n
    k = nbits
    for j in range(1, n):
        for i in range(j):
            k -= 1
            if (x >> k) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, tuple(rows))


# ---------------------------------------------------------------------------
# edge-list codec
# ---------------------------------------------------------------------------

def _edgelist_decode(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    n_explicit = None
    if lines and lines[0].startswith("n="):
        try:
            n_explicit = int(lines[0][2:])
        except ValueError:
            raise ParseError(f"bad vertex count line {lines[0]!r}", 0)
        if n_explicit < 0:
            raise ValidationError("vertex count must be nonnegative")
        lines = lines[1:]
    edges = []
    seen = set()
    for ln in lines:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"edge line {ln!r} is not 'u v'", 0)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer endpoint in {ln!r}", 0)
        if u < 0 or v < 0:
            raise ValidationError(f"negative vertex index in {ln!r}")
        if u == v:
            raise ValidationError(f"self-loop {u}-{v}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValidationError(f"duplicate edge {u}-{v}")
        seen.add(key)
        edges.append((u, v))
    n = n_explicit
    if n is None:
        n = 1 + max((max(u, v) for u, v in edges), default=-1)
    return Graph.from_edges(n, edges)


def _edgelist_encode(g: Graph) -> str:
    lines = [f"n={g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines)


FORMATS = ("graph6", "edge-list")


def parse_graph(text: str, format: str = "graph6") -> Graph:
    """Decode a graph; graph6 per the standard format, or the edge-list format."""
    if format == "graph6":
        return _g6_decode(text.strip())
    if format == "edge-list":
        return _edgelist_decode(text)
    raise ValidationError(f"unknown format {format!r}")


def serialize_graph(g: Graph, format: str = "graph6") -> str:
    if format == "graph6":
        return _g6_encode(g)
    if format == "edge-list":
        return _edgelist_encode(g)
    raise ValidationError(f"unknown format {format!r}")


# ---------------------------------------------------------------------------
# structural primitives
# ---------------------------------------------------------------------------

def connected_components(g: Graph) -> ComponentPartition:
    return ComponentPartition(components_within(g, (1 << g.n) - 1))


def components_within(g: Graph, universe: int) -> tuple:
    """Connected components of the induced subgraph on the ``universe`` bitset."""
    parts = []
    remaining = universe
    while remaining:
        low = remaining & -remaining
        comp = low
        frontier = low
        while frontier:
            grow = 0
            for v in iter_bits(frontier):
                grow |= g.adj[v]
            grow &= remaining & ~comp
            comp |= grow
            frontier = grow
        parts.append(tuple(iter_bits(comp)))
        remaining &= ~comp
    return tuple(parts)


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.edge_count == g.n - 1 and len(connected_components(g)) == 1


def max_back_degree(g: Graph, order: Sequence[int]) -> int:
    """Largest number of neighbours following a vertex in ``order``."""
    later = 0
    worst = 0
    for u in reversed(order):
        d = (g.adj[u] & later).bit_count()
        if d > worst:
            worst = d
        later |= 1 << u
    return worst


def degeneracy_ordering(g: Graph) -> VertexOrdering:
    """Min-degree removal order; its maximum back-degree is the degeneracy."""
    import heapq

    n = g.n
    if n == 0:
        return VertexOrdering((), 0)
    deg = [g.degree(v) for v in range(n)]
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    removed = 0
    order = []
    bound = 0
    while heap:
        d, v = heapq.heappop(heap)
        if (removed >> v) & 1 or d != deg[v]:
            continue
        if d > bound:
            bound = d
        removed |= 1 << v
        order.append(v)
        for w in iter_bits(g.adj[v] & ~removed):
            deg[w] -= 1
            heapq.heappush(heap, (deg[w], w))
    ordering = VertexOrdering(tuple(order), bound)
    if max_back_degree(g, ordering.order) != bound:
        raise InternalConsistencyError("degeneracy ordering failed self-check")
    return ordering


def permute_graph(g: Graph, perm: Sequence[int]) -> Graph:
    """Relabel: vertex u becomes perm[u]."""
    if sorted(perm) != list(range(g.n)):
        raise ValidationError("perm is not a permutation of the vertex set")
    rows = [0] * g.n
    for u in range(g.n):
        row = 0
        for v in iter_bits(g.adj[u]):
            row |= 1 << perm[v]
        rows[perm[u]] = row
    return Graph(g.n, tuple(rows))


def pad_with_isolated(g: Graph, n_total: int) -> Graph:
    if n_total < g.n:
        raise ValidationError("cannot pad to fewer vertices")
    return Graph(n_total, g.adj + (0,) * (n_total - g.n))


def canonical_form(g: Graph) -> str:
    """Lexicographically smallest graph6 string over all relabellings.

    Isomorphic graphs map to equal strings; capped at 10 vertices since the
    search is factorial in the worst case.
    """
    if g.n > MAX_PATTERN_VERTICES:
        raise UnsupportedError(
            f"canonical_form is capped at {MAX_PATTERN_VERTICES} vertices")
    bits = kernels.canonical_bits(g.n, g.adj)
    return _g6_header(g.n) + _pack_bits(bits, g.n * (g.n - 1) // 2)
