"""Family-refinement machinery: rainbow labelling, inherited orderings, and
the iterative filter/restrict procedure over rainbow copy families.

The pipeline turns a host with many pattern copies into nested families whose
union graphs have controlled degrees between label classes.  Each refinement
step either keeps the at-least-half of the copies that avoid all low-degree
class vertices, or restricts to the at-least-1/(2|E_i|) fraction incident to
one low-degree set and retires that edge.  The procedure ends Sparse (every
edge retired) or Structured (t nested families remain).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from . import kernels
from .embeddings import (CopyFamily, automorphism_count, list_copies,
                         _position_masks, _to_pattern_indexing)
from .errors import InternalConsistencyError, ValidationError
from .graphs import Graph, VertexOrdering, connected_components, iter_bits, require_pattern


@dataclass(frozen=True)
class RainbowResult:
    """A host-vertex labelling by pattern vertices and its rainbow family."""

    partition: tuple          # class u = host vertices labelled u, sorted
    family: CopyFamily
    total_copies: int
    guarantee_met: bool
    strategy: str


def _enumerate_hom_tuples(G: Graph, H: Graph) -> list:
    """Every injective hom of H into G, pattern-indexed."""
    if H.n > G.n:
        return []
    order, parents, masks = _position_masks(G, H)
    return [_to_pattern_indexing(order, img)
            for img in kernels.iter_maps(G.adj, masks, parents)]


def _rainbow_score(homs: Sequence[tuple], labels: Sequence[int], h: int) -> int:
    """Exact conditional expectation of the rainbow count, scaled by h^h.

    Each injective hom contributes h^(number of its labelled vertices) while
    all its labelled vertices carry the matching label, else 0.
    """
    total = 0
    for f in homs:
        weight = 1
        for u, v in enumerate(f):
            lab = labels[v]
            if lab is None:
                continue
            if lab != u:
                weight = 0
                break
            weight *= h
        total += weight
    return total


def _rainbow_count(homs: Sequence[tuple], labels: Sequence[int]) -> int:
    count = 0
    for f in homs:
        if all(labels[v] == u for u, v in enumerate(f)):
            count += 1
    return count


def rainbow_partition(G: Graph, H: Graph, strategy: str = "derandomized",
                      seed: Optional[int] = None, trials: int = 1) -> RainbowResult:
    """Label host vertices by pattern vertices so many copies become rainbow.

    The derandomized strategy assigns labels one vertex at a time by exact
    conditional expectations and always achieves at least a 1/h^h fraction of
    the copies; the random strategy keeps the best of ``trials`` seeded
    uniform labellings and reports whether that bound was met.
    """
    require_pattern(H, "H")
    if G.n == 0:
        raise ValidationError("host must be nonempty")
    h = H.n
    homs = _enumerate_hom_tuples(G, H)
    total_copies = len(homs) // automorphism_count(H)

    if strategy == "derandomized":
        labels: list = [None] * G.n
        for v in range(G.n):
            best_label, best_score = 0, -1
            for lab in range(h):
                labels[v] = lab
                score = _rainbow_score(homs, labels, h)
                if score > best_score:
                    best_label, best_score = lab, score
            labels[v] = best_label
    elif strategy == "random":
        rng = random.Random(seed)
        if trials < 1:
            raise ValidationError("random strategy needs trials >= 1")
        labels, best = None, -1
        for _ in range(trials):
            trial = [rng.randrange(h) for _ in range(G.n)]
            c = _rainbow_count(homs, trial)
            if c > best:
                labels, best = trial, c
    else:
        raise ValidationError(f"unknown strategy {strategy!r}")

    partition = tuple(
        tuple(v for v in range(G.n) if labels[v] == u) for u in range(h))
    family = list_copies(G, H, label_partition=partition)
    rainbow = len(family)
    guarantee_met = rainbow * h ** h >= len(homs)
    if strategy == "derandomized" and not guarantee_met:
        raise InternalConsistencyError("derandomization fell below its guarantee")
    return RainbowResult(partition=partition, family=family,
                         total_copies=total_copies,
                         guarantee_met=guarantee_met, strategy=strategy)


def popular_ordering(family: CopyFamily, ordering: VertexOrdering) -> tuple:
    """Most frequent pattern-vertex order inherited from a host ordering.

    Each copy orders the pattern vertices by the host positions of their
    images; returns the winning order (ties: lexicographically smallest) and
    the subfamily that inherited it, at least a 1/h! fraction.
    """
    host = family.host
    if sorted(ordering.order) != list(range(host.n)):
        raise ValidationError("ordering does not cover the host vertex set")
    pos = [0] * host.n
    for k, v in enumerate(ordering.order):
        pos[v] = k
    buckets: dict = {}
    for emb in family.embeddings:
        inherited = tuple(sorted(range(family.pattern.n), key=lambda u: pos[emb.map[u]]))
        buckets.setdefault(inherited, []).append(emb)
    if not buckets:
        raise ValidationError("family is empty")
    winner = min(buckets, key=lambda o: (-len(buckets[o]), o))
    chosen = buckets[winner]
    if len(chosen) * len(buckets) < len(family):
        raise InternalConsistencyError("popular order lost more than its share")
    return winner, family.subfamily(chosen)


@dataclass(frozen=True)
class ProcedureConfig:
    """Degree thresholds c_1 < ... < c_{e(H)} plus the family depth t.

    Paper-scale configs satisfy c_i >= t * (h * c_{i-1}^h + 1) with c_0 = t,
    which makes every guarantee of the refinement analysis hold outright;
    desk-scale configs are arbitrary increasing constants for experiments,
    where threshold misses are reported rather than fatal.
    """

    constants: tuple
    t: int
    mode: str = "desk-scale"

    def __post_init__(self):
        if self.t < 2:
            raise ValidationError("need t >= 2 (a tree pattern has an edge)")
        if not self.constants:
            raise ValidationError("need at least one constant")
        if any(c < 1 for c in self.constants):
            raise ValidationError("constants must be positive")
        if any(b <= a for a, b in zip(self.constants, self.constants[1:])):
            raise ValidationError("constants must be strictly increasing")
        if self.mode not in ("paper-scale", "desk-scale"):
            raise ValidationError(f"unknown mode {self.mode!r}")

    @classmethod
    def paper_scale(cls, h: int, e: int, t: int) -> "ProcedureConfig":
        """Smallest constants satisfying the recursive growth requirement."""
        cs = []
        prev = t
        for _ in range(e):
            prev = t * (h * prev ** h + 1)
            cs.append(prev)
        return cls(constants=tuple(cs), t=t, mode="paper-scale")

    def check_paper_scale(self, h: int) -> None:
        prev = self.t
        for i, c in enumerate(self.constants, start=1):
            if c < self.t * (h * prev ** h + 1):
                raise ValidationError(
                    f"c_{i}={c} below the paper-scale recursion for h={h}")
            prev = c


@dataclass(frozen=True)
class TraceStep:
    i: int
    j: int
    branch: str                  # "filter" or "restrict"
    family_before: int
    family_after: int
    b_sizes: tuple               # ((u, w, |B_e|), ...) for e = (u, w) in E_i
    chosen_edge: Optional[tuple] = None


@dataclass(frozen=True)
class SparseBound:
    family_size: int
    bound: int
    component_count: int
    ok: bool


@dataclass(frozen=True)
class ProcedureOutcome:
    """Final state of the refinement loop.

    Sparse: every oriented edge was retired (l = e(H)+1) and ``families``
    holds the single final family.  Structured: ``families`` holds the t
    nested families of level l and ``remaining_red`` the surviving pairs.
    """

    kind: str
    l: int
    remaining_red: tuple
    families: tuple
    trace: tuple
    config: ProcedureConfig
    sparse_bound: Optional[SparseBound] = None


def initial_ordered_pairs(H: Graph, order_H: Sequence[int]) -> list:
    """Each pattern edge oriented from its later endpoint in ``order_H``."""
    rank = {u: k for k, u in enumerate(order_H)}
    return sorted((u, w) if rank[u] > rank[w] else (w, u) for u, w in H.edges())


def refine_families(family: CopyFamily, order_H: Sequence[int],
                    config: ProcedureConfig) -> ProcedureOutcome:
    """Run the filter/restrict loop on a rainbow family.

    Per iteration, B_e for e = (u, w) collects the class-u vertices with at
    most c_i edges into class w in the current union graph.  If at least half
    the copies avoid every B_e, keep them and advance j; otherwise restrict
    to the copies incident with the first B_e holding a 1/(2|E_i|) share,
    retire that edge, and advance i.  Ends Sparse at i = e(H)+1 or Structured
    at j = t.
    """
    H = family.pattern
    if len(family) == 0:
        raise ValidationError("family is empty")
    if family.label_partition is None:
        raise ValidationError("refinement needs a rainbow family (label partition)")
    if sorted(order_H) != list(range(H.n)):
        raise ValidationError("order_H must be a total order on V(H)")
    e_H = H.edge_count
    if len(config.constants) != e_H:
        raise ValidationError(f"need exactly e(H) = {e_H} constants")
    if config.mode == "paper-scale":
        config.check_paper_scale(H.n)
    t = config.t

    class_mask = [0] * H.n
    for u, cls in enumerate(family.label_partition):
        for v in cls:
            class_mask[u] |= 1 << v

    E = initial_ordered_pairs(H, order_H)
    level_families = [list(family.embeddings)]   # H_i^(1), H_i^(2), ...
    i, j = 1, 1
    trace = []
    iterations = 0

    while i <= e_H and j < t:
        iterations += 1
        if iterations > (e_H + 1) * t:
            raise InternalConsistencyError("refinement loop exceeded its bound")
        current = level_families[-1]
        union = family.subfamily(current).union_graph()
        b_sets = {}
        for (u, w) in E:
            b = 0
            for x in iter_bits(class_mask[u]):
                if (union.adj[x] & class_mask[w]).bit_count() <= config.constants[i - 1]:
                    b |= 1 << x
            b_sets[(u, w)] = b
        b_sizes = tuple((u, w, b_sets[(u, w)].bit_count()) for (u, w) in E)

        avoiders = [emb for emb in current
                    if all(not (b_sets[e] >> emb.map[e[0]]) & 1 for e in E)]
        if 2 * len(avoiders) >= len(current):
            level_families.append(avoiders)
            trace.append(TraceStep(i=i, j=j, branch="filter",
                                   family_before=len(current),
                                   family_after=len(avoiders),
                                   b_sizes=b_sizes))
            j += 1
            continue

        chosen = None
        for e in E:
            incident = [emb for emb in current if (b_sets[e] >> emb.map[e[0]]) & 1]
            if 2 * len(E) * len(incident) >= len(current):
                chosen = (e, incident)
                break
        if chosen is None:
            raise InternalConsistencyError(
                "no restrict edge met its share although the filter failed")
        e, incident = chosen
        trace.append(TraceStep(i=i, j=j, branch="restrict",
                               family_before=len(current),
                               family_after=len(incident),
                               b_sizes=b_sizes, chosen_edge=e))
        E = [x for x in E if x != e]
        level_families = [incident]
        i += 1
        j = 1

    l = i
    if l == e_H + 1:
        if E:
            raise InternalConsistencyError("Sparse exit with surviving pairs")
        final = family.subfamily(level_families[0])
        # every retired pair left only low-degree class vertices behind,
        # which is what the counting bound rests on
        union = final.union_graph()
        c_last = config.constants[-1]
        for emb in final.embeddings:
            for (u, w) in initial_ordered_pairs(H, order_H):
                deg = (union.adj[emb.map[u]] & class_mask[w]).bit_count()
                if deg > c_last:
                    raise InternalConsistencyError(
                        f"Sparse family kept degree {deg} on pair ({u},{w})")
        a = len(connected_components(H))
        bound = c_last ** (H.n * H.n) * family.host.n ** a
        sparse = SparseBound(family_size=len(final), bound=bound,
                             component_count=a, ok=len(final) <= bound)
        return ProcedureOutcome(kind="Sparse", l=l, remaining_red=(),
                                families=(final,), trace=tuple(trace),
                                config=config, sparse_bound=sparse)
    if j != t or len(E) != e_H - (l - 1):
        raise InternalConsistencyError("Structured exit off the dichotomy")
    fams = tuple(family.subfamily(embs) for embs in level_families)
    if len(fams) != t:
        raise InternalConsistencyError(f"expected {t} nested families, got {len(fams)}")
    # surviving pairs forced each later family through the filter branch, so
    # copies in F_i (i >= 2) keep high degree into V_w inside F_{i-1}'s union
    c_l = config.constants[l - 1]
    for idx in range(1, t):
        prev_union = fams[idx - 1].union_graph()
        for emb in fams[idx].embeddings:
            for (u, w) in E:
                deg = (prev_union.adj[emb.map[u]] & class_mask[w]).bit_count()
                if deg <= c_l:
                    raise InternalConsistencyError(
                        f"F_{idx + 1} copy kept low degree {deg} on red pair ({u},{w})")
    return ProcedureOutcome(kind="Structured", l=l, remaining_red=tuple(E),
                            families=fams, trace=tuple(trace), config=config)
