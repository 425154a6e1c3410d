"""Subgraph containment, injective homomorphism counting, and copy listing.

A "copy" of a pattern in a host is a subgraph (not necessarily induced)
isomorphic to the pattern, counted up to pattern automorphism; an injective
homomorphism is a labelled edge-preserving injection.  The backtracking
kernel explores pattern vertices in a BFS order from the highest-degree
vertex of each component and host candidates in index order, pruning by
degree and by bitset intersection of already-placed neighbours.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from . import kernels
from .errors import InternalConsistencyError, ValidationError
from .graphs import Graph, iter_bits, require_pattern


@dataclass(frozen=True)
class Embedding:
    """Injective edge-preserving map; ``map[u]`` is the host image of pattern vertex u."""

    map: tuple

    def image_mask(self) -> int:
        m = 0
        for v in self.map:
            m |= 1 << v
        return m

    def image_edges(self, pattern: Graph) -> frozenset:
        out = []
        for u, w in pattern.edges():
            a, b = self.map[u], self.map[w]
            out.append((a, b) if a < b else (b, a))
        return frozenset(out)

    def valid_for(self, host: Graph, pattern: Graph) -> bool:
        if len(self.map) != pattern.n or len(set(self.map)) != pattern.n:
            return False
        if any(not 0 <= v < host.n for v in self.map):
            return False
        return all(host.has_edge(self.map[u], self.map[w]) for u, w in pattern.edges())


@dataclass(frozen=True)
class CopyFamily:
    """A set of pattern copies in a host, one embedding per copy.

    When ``label_partition`` is present (one host-vertex class per pattern
    vertex), every embedding is rainbow: pattern vertex u lands in class u.
    """

    host: Graph
    pattern: Graph
    embeddings: tuple
    label_partition: Optional[tuple] = None
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.embeddings)

    def union_graph(self) -> Graph:
        rows = [0] * self.host.n
        for emb in self.embeddings:
            for u, w in self.pattern.edges():
                a, b = emb.map[u], emb.map[w]
                rows[a] |= 1 << b
                rows[b] |= 1 << a
        return Graph(self.host.n, tuple(rows))

    def subfamily(self, embeddings: Sequence[Embedding]) -> "CopyFamily":
        return CopyFamily(self.host, self.pattern, tuple(embeddings),
                          self.label_partition, self.truncated)

    def validate(self) -> None:
        seen = set()
        classes = None
        if self.label_partition is not None:
            classes = [0] * self.pattern.n
            for u, cls in enumerate(self.label_partition):
                for v in cls:
                    classes[u] |= 1 << v
        for emb in self.embeddings:
            if not emb.valid_for(self.host, self.pattern):
                raise InternalConsistencyError(f"invalid embedding {emb.map}")
            if classes is not None:
                for u, v in enumerate(emb.map):
                    if not (classes[u] >> v) & 1:
                        raise InternalConsistencyError(
                            f"embedding {emb.map} breaks the rainbow condition at {u}")
            key = emb.image_edges(self.pattern)
            if key in seen:
                raise InternalConsistencyError("two embeddings share an image edge set")
            seen.add(key)


# ---------------------------------------------------------------------------
# search plans
# ---------------------------------------------------------------------------

@lru_cache(maxsize=256)
def _search_plan(pattern: Graph) -> tuple:
    """(order, parents, degs): BFS order from the highest-degree vertex of
    each component; parents[k] = earlier positions adjacent to position k."""
    n = pattern.n
    visited = 0
    order = []
    while visited.bit_count() < n:
        root = max((v for v in range(n) if not (visited >> v) & 1),
                   key=lambda v: (pattern.degree(v), -v))
        queue = [root]
        visited |= 1 << root
        while queue:
            u = queue.pop(0)
            order.append(u)
            for w in iter_bits(pattern.adj[u] & ~visited):
                visited |= 1 << w
                queue.append(w)
    pos = {u: k for k, u in enumerate(order)}
    parents = tuple(
        tuple(pos[w] for w in iter_bits(pattern.adj[u]) if pos[w] < k)
        for k, u in enumerate(order))
    degs = tuple(pattern.degree(u) for u in order)
    return tuple(order), parents, degs


def _position_masks(host: Graph, pattern: Graph,
                    class_masks: Optional[Sequence[int]] = None) -> tuple:
    """Candidate masks per search position (degree pruning plus labels)."""
    order, parents, degs = _search_plan(pattern)
    deg_mask_cache = {}
    masks = []
    for k, u in enumerate(order):
        d = degs[k]
        if d not in deg_mask_cache:
            m = 0
            for v in range(host.n):
                if host.degree(v) >= d:
                    m |= 1 << v
            deg_mask_cache[d] = m
        m = deg_mask_cache[d]
        if class_masks is not None:
            m &= class_masks[u]
        masks.append(m)
    return order, parents, tuple(masks)


def _to_pattern_indexing(order: Sequence[int], img: Sequence[int]) -> tuple:
    out = [0] * len(order)
    for k, u in enumerate(order):
        out[u] = img[k]
    return tuple(out)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def contains_copy(host: Graph, pattern: Graph) -> Optional[Embedding]:
    """One embedding of ``pattern`` into ``host`` if any exists, else None."""
    require_pattern(pattern)
    if pattern.n > host.n:
        return None
    order, parents, masks = _position_masks(host, pattern)
    img = kernels.find_map(host.adj, masks, parents)
    if img is None:
        return None
    return Embedding(_to_pattern_indexing(order, img))


def count_injective_homs(host: Graph, pattern: Graph) -> int:
    """Exact number of injective edge-preserving maps pattern -> host."""
    require_pattern(pattern)
    if pattern.n > host.n:
        return 0
    order, parents, masks = _position_masks(host, pattern)
    return kernels.count_maps(host.adj, masks, parents)


def automorphism_count(pattern: Graph) -> int:
    require_pattern(pattern)
    return count_injective_homs(pattern, pattern)


def count_copies(host: Graph, pattern: Graph) -> int:
    """Number of distinct subgraph copies of ``pattern`` in ``host``."""
    homs = count_injective_homs(host, pattern)
    aut = automorphism_count(pattern)
    q, r = divmod(homs, aut)
    if r:
        raise InternalConsistencyError("injective hom count not divisible by |Aut|")
    return q


@lru_cache(maxsize=256)
def _identity_plan(pattern: Graph) -> tuple:
    parents = tuple(
        tuple(w for w in iter_bits(pattern.adj[u]) if w < u)
        for u in range(pattern.n))
    return parents


def _minimal_variant(host_edges: frozenset, pattern: Graph) -> tuple:
    """Lexicographically smallest vertex map onto a fixed image edge set.

    The image subgraph has exactly e(pattern) edges, so any injective hom of
    the pattern into it is an automorphic variant of the copy; a find-first
    search in pattern-index order with ascending candidates returns the
    minimum.
    """
    verts = sorted({v for e in host_edges for v in e})
    back = {v: i for i, v in enumerate(verts)}
    rows = [0] * len(verts)
    for a, b in host_edges:
        rows[back[a]] |= 1 << back[b]
        rows[back[b]] |= 1 << back[a]
    parents = _identity_plan(pattern)
    degs = [pattern.degree(u) for u in range(pattern.n)]
    masks = tuple(
        sum(1 << i for i in range(len(verts)) if rows[i].bit_count() >= degs[u])
        for u in range(pattern.n))
    img = kernels.find_map(tuple(rows), masks, parents)
    if img is None:
        raise InternalConsistencyError("copy image lost its own pattern")
    return tuple(verts[i] for i in img)


def _class_masks(host: Graph, pattern: Graph, label_partition: Sequence) -> tuple:
    if len(label_partition) != pattern.n:
        raise ValidationError("label partition needs one class per pattern vertex")
    masks = []
    seen = 0
    for cls in label_partition:
        m = 0
        for v in cls:
            if not 0 <= v < host.n:
                raise ValidationError(f"class vertex {v} out of range")
            m |= 1 << v
        if m & seen:
            raise ValidationError("label partition classes are not disjoint")
        seen |= m
        masks.append(m)
    if seen != (1 << host.n) - 1:
        raise ValidationError("label partition does not cover the host")
    return tuple(masks)


def list_copies(host: Graph, pattern: Graph,
                label_partition: Optional[Sequence] = None,
                cap: Optional[int] = None) -> CopyFamily:
    """Enumerate copies, one canonical embedding each.

    Without a partition the representative is the lexicographically smallest
    vertex map among the automorphic variants of each copy.  With a partition
    only rainbow embeddings are produced, and each copy admits at most one,
    so no deduplication is needed.  Enumeration stops (``truncated=True``)
    once ``cap`` copies are collected.
    """
    require_pattern(pattern)
    part = None
    cmasks = None
    if label_partition is not None:
        part = tuple(tuple(sorted(cls)) for cls in label_partition)
        cmasks = _class_masks(host, pattern, part)
    out = []
    truncated = False
    if pattern.n <= host.n:
        order, parents, masks = _position_masks(host, pattern, cmasks)
        if cmasks is not None:
            for img in kernels.iter_maps(host.adj, masks, parents):
                out.append(Embedding(_to_pattern_indexing(order, img)))
                if cap is not None and len(out) >= cap:
                    truncated = True
                    break
        else:
            seen = set()
            for img in kernels.iter_maps(host.adj, masks, parents):
                emb = Embedding(_to_pattern_indexing(order, img))
                key = emb.image_edges(pattern)
                if key in seen:
                    continue
                seen.add(key)
                out.append(Embedding(_minimal_variant(key, pattern)))
                if cap is not None and len(out) >= cap:
                    truncated = True
                    break
    out.sort(key=lambda e: e.map)
    fam = CopyFamily(host, pattern, tuple(out), part, truncated)
    fam.validate()
    return fam
