"""Inductive extraction of a tree copy from nested rainbow families.

Given a tree embedded in a blow-up, the tree splits into maximal blocks
living either on the identified vertex set U or inside a single copy.
Blocks are replayed in BFS order over the block tree: a U-block extends the
partial image through any next-family copy containing the attachment vertex;
a copy-block needs a copy whose intersection with the attachment's blue
up-set classes dodges everything already used, found among pairwise-disjoint
candidates.  Success yields an explicit tree embedding in the families'
host; starvation yields a structured failure naming the step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .blowup import BlowupResult
from .digraph import ColouredDigraph
from .embeddings import CopyFamily, Embedding
from .errors import InternalConsistencyError, UnsupportedError, ValidationError
from .graphs import Graph, components_within, is_tree, iter_bits, require_pattern


@dataclass(frozen=True)
class EmbedStep:
    block_index: int
    block: tuple               # T-vertices of this block
    region: int                # 0 for U, copy number otherwise
    family_index: int          # 1-based index of the family supplying the copy
    copy_map: tuple            # embedding of H used at this step
    attachment: Optional[tuple]  # (earlier T-vertex, new T-vertex) or None


@dataclass(frozen=True)
class EmbeddingCertificate:
    """An explicit tree embedding in the host plus its block decomposition."""

    tree_map: Embedding
    x_partition: tuple
    steps: tuple


@dataclass(frozen=True)
class EmbedFailure:
    step_index: int
    block: tuple
    family_index: int
    reason: str


def _tree_blocks(T: Graph, regions: Sequence[int]) -> list:
    """Maximal connected same-region blocks, as (vertex tuple, region)."""
    same = [0] * T.n
    for u, w in T.edges():
        if regions[u] == regions[w]:
            same[u] |= 1 << w
            same[w] |= 1 << u
    block_graph = Graph(T.n, tuple(same))
    parts = components_within(block_graph, (1 << T.n) - 1)
    return [(part, regions[part[0]]) for part in parts]


def _order_blocks(T: Graph, blocks: list) -> list:
    """BFS over the block tree from the block holding vertex 0's component...

    Ordering starts at the block containing the lowest-index tree vertex and
    guarantees each later block attaches to the prefix by exactly one edge.
    Returns (ordered blocks, attachment edge per block or None for the root).
    """
    block_of = {}
    for bi, (part, _region) in enumerate(blocks):
        for v in part:
            block_of[v] = bi
    root = block_of[min(v for part, _ in blocks for v in part)]
    adj: dict = {bi: [] for bi in range(len(blocks))}
    for u, w in T.edges():
        bu, bw = block_of[u], block_of[w]
        if bu != bw:
            adj[bu].append((bw, (u, w)))
            adj[bw].append((bu, (w, u)))
    ordered = [(blocks[root], None)]
    visited = {root}
    queue = [root]
    while queue:
        bi = queue.pop(0)
        for bj, (u, w) in sorted(adj[bi], key=lambda x: x[1][1]):
            if bj in visited:
                continue
            visited.add(bj)
            queue.append(bj)
            ordered.append((blocks[bj], (u, w)))
    if len(ordered) != len(blocks):
        raise InternalConsistencyError("block adjacency is not connected")
    return ordered


def embed_tree(T: Graph, gamma_embedding: Embedding, blowup: BlowupResult,
               families: Sequence[CopyFamily], partition: Sequence,
               digraph: ColouredDigraph) -> Union[EmbeddingCertificate, EmbedFailure]:
    """Replay a blow-up tree embedding inside the families' host.

    ``digraph`` must be the red/blue digraph whose selection produced the
    blow-up's U: blue reachability defines the class set S that copy-block
    images must dodge previously used vertices in.
    """
    require_pattern(T, "T")
    if not is_tree(T):
        raise ValidationError("T must be a tree")
    t = len(families)
    if t < 1:
        raise ValidationError("need at least one family")
    host = families[0].host
    H = families[0].pattern
    part = tuple(tuple(sorted(cls)) for cls in partition)
    for k, fam in enumerate(families):
        if fam.host != host or fam.pattern != H:
            raise ValidationError("families disagree on host or pattern")
        if fam.label_partition != part:
            raise ValidationError("families disagree on the label partition")
        if k and not set(fam.embeddings) <= set(families[k - 1].embeddings):
            raise ValidationError(f"family {k + 1} is not nested in family {k}")
    gamma = blowup.graph
    if not gamma_embedding.valid_for(gamma, T):
        raise ValidationError("gamma_embedding is not a valid T-embedding in the blow-up")

    regions = [blowup.copy_index[gamma_embedding.map[x]] for x in range(T.n)]
    blocks = _tree_blocks(T, regions)
    if len(blocks) > t:
        raise UnsupportedError(
            f"{len(blocks)} blocks exceed t = {t}; the induction needs k <= t")
    ordered = _order_blocks(T, blocks)

    class_mask = [0] * H.n
    for u, cls in enumerate(part):
        for v in cls:
            class_mask[u] |= 1 << v

    def phi_of(x: int) -> int:
        return blowup.phi[gamma_embedding.map[x]]

    f: dict = {}
    used_mask = 0
    steps = []
    for step_index, ((block, region), attachment) in enumerate(ordered, start=1):
        fam_index = t - (step_index - 1)
        fam = families[fam_index - 1]
        if step_index == 1:
            if not fam.embeddings:
                return EmbedFailure(step_index=1, block=block,
                                    family_index=fam_index,
                                    reason="family is empty")
            g = fam.embeddings[0]
        elif region == 0:
            x_old = attachment[0]
            anchor = f[x_old]
            g = next((emb for emb in fam.embeddings
                      if emb.map[phi_of(x_old)] == anchor), None)
            if g is None:
                return EmbedFailure(step_index=step_index, block=block,
                                    family_index=fam_index,
                                    reason=f"no copy contains the attachment vertex {anchor}")
        else:
            x_old, x_new = attachment
            anchor = f[x_old]
            u_star, w_star = phi_of(x_old), phi_of(x_new)
            if (u_star, w_star) not in digraph.red:
                raise InternalConsistencyError(
                    f"attachment pair ({u_star},{w_star}) is not red")
            s_pattern = list(iter_bits(_blue_up_set(digraph, w_star)))
            s_host = 0
            for v in s_pattern:
                s_host |= class_mask[v]
            kept = []
            kept_mask = 0
            for emb in fam.embeddings:
                if emb.map[u_star] != anchor:
                    continue
                emb_s = emb.image_mask() & s_host
                if emb_s & kept_mask:
                    continue
                kept.append(emb)
                kept_mask |= emb_s
                if len(kept) == t:
                    break
            if len(kept) < t:
                return EmbedFailure(
                    step_index=step_index, block=block, family_index=fam_index,
                    reason=(f"only {len(kept)} pairwise-disjoint copies through "
                            f"{anchor} on the up-set classes; need {t}"))
            g = next((emb for emb in kept
                      if not (emb.image_mask() & s_host & used_mask)), None)
            if g is None:
                raise InternalConsistencyError(
                    "t disjoint copies cannot all collide with fewer than t vertices")
        for x in block:
            f[x] = g.map[phi_of(x)]
            used_mask |= 1 << f[x]
        steps.append(EmbedStep(block_index=step_index, block=block, region=region,
                               family_index=fam_index, copy_map=g.map,
                               attachment=attachment))

    tree_map = Embedding(tuple(f[x] for x in range(T.n)))
    if not tree_map.valid_for(host, T):
        raise InternalConsistencyError("assembled tree map failed re-verification")
    for x in range(T.n):
        if not (class_mask[phi_of(x)] >> tree_map.map[x]) & 1:
            raise InternalConsistencyError("tree map left its label class")
    return EmbeddingCertificate(tree_map=tree_map,
                                x_partition=tuple(b for (b, _r), _a in ordered),
                                steps=tuple(steps))


def _blue_up_set(d: ColouredDigraph, w: int) -> int:
    """Bitset of pattern vertices with a blue path into w (w included)."""
    radj = [0] * d.n
    for a, b in d.blue:
        radj[b] |= 1 << a
    reach = 1 << w
    frontier = reach
    while frontier:
        grow = 0
        for v in iter_bits(frontier):
            grow |= radj[v]
        grow &= ~reach
        reach |= grow
        frontier = grow
    return reach
