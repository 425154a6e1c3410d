"""Blow-ups and the growth exponent r(H, T).

The (U, t)-blow-up of H takes t copies of H and identifies, across copies,
all the vertices corresponding to each u in U.  r(H, T) is the maximum
number of components of H minus U over subsets U whose (U, |T|)-blow-up is
T-free; it is the polynomial growth exponent of the maximum H-copy count
over T-free hosts.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .embeddings import contains_copy
from .errors import UnsupportedError, ValidationError
from .graphs import Graph, components_within, is_tree, require_pattern

EXPONENT_PATTERN_CAP = 10


@dataclass(frozen=True)
class BlowupResult:
    """A blow-up graph plus its bookkeeping maps.

    ``phi[x]`` is the original H-vertex a blow-up vertex corresponds to;
    ``copy_index[x]`` is 0 for identified U-vertices and the copy number in
    1..t otherwise.
    """

    graph: Graph
    phi: tuple
    copy_index: tuple

    @property
    def t(self) -> int:
        return max(self.copy_index, default=0)

    def u_vertices(self) -> tuple:
        return tuple(x for x, c in enumerate(self.copy_index) if c == 0)

    def copy_vertices(self, i: int) -> tuple:
        return tuple(x for x, c in enumerate(self.copy_index) if c == i)


@dataclass(frozen=True)
class ExponentProfile:
    """Result of the exponent computation.

    ``status`` is "Zero" when H already contains T (every T-free host has no
    H-copies at all), else "Finite" with the exponent ``r`` and a witness
    subset attaining it.
    """

    status: str
    t_used: int
    r: Optional[int] = None
    witness_U: Optional[tuple] = None


@dataclass(frozen=True)
class ProfileCheck:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def blow_up(H: Graph, U: Iterable[int], t: int) -> BlowupResult:
    """Build the (U, t)-blow-up.

    Vertex numbering: U first in index order, then copies 1..t, each listing
    the non-identified H-vertices in index order.  Edges inside U appear
    once; a U-to-outside edge fans out to every copy; an edge with both ends
    outside U stays within each copy.
    """
    require_pattern(H, "H")
    u_sorted = tuple(sorted(set(U)))
    if any(not 0 <= u < H.n for u in u_sorted):
        raise ValidationError("U is not a subset of V(H)")
    if t < 1:
        raise ValidationError("blow-up needs t >= 1")
    rest = tuple(v for v in range(H.n) if v not in set(u_sorted))
    k = len(rest)
    n_total = len(u_sorted) + t * k
    u_pos = {u: i for i, u in enumerate(u_sorted)}

    def copy_pos(v: int, i: int) -> int:
        return len(u_sorted) + (i - 1) * k + rest.index(v)

    rest_index = {v: j for j, v in enumerate(rest)}

    def pos(v: int, i: int) -> int:
        if v in u_pos:
            return u_pos[v]
        return len(u_sorted) + (i - 1) * k + rest_index[v]

    edges = []
    for a, b in H.edges():
        if a in u_pos and b in u_pos:
            edges.append((u_pos[a], u_pos[b]))
        else:
            for i in range(1, t + 1):
                edges.append((pos(a, i), pos(b, i)))
    phi = list(u_sorted) + [v for i in range(t) for v in rest]
    copy_index = [0] * len(u_sorted) + [i for i in range(1, t + 1) for _ in rest]
    return BlowupResult(Graph.from_edges(n_total, edges), tuple(phi), tuple(copy_index))


def _component_count(H: Graph, u_mask: int) -> int:
    universe = ((1 << H.n) - 1) & ~u_mask
    return len(components_within(H, universe))


def _subset_candidates(H: Graph):
    """All subsets of V(H) keyed for the enumeration order: descending
    component count of H minus U, then ascending size, then lexicographic."""
    cands = []
    for size in range(H.n + 1):
        for combo in combinations(range(H.n), size):
            mask = 0
            for u in combo:
                mask |= 1 << u
            cands.append((-_component_count(H, mask), size, combo, mask))
    cands.sort()
    return cands


def exponent_r(H: Graph, T: Graph) -> ExponentProfile:
    """Definition-faithful computation of r(H, T) with an attaining witness.

    Subsets are tried in decreasing order of component count (ties: smaller,
    then lexicographically smaller, U first) and the first whose blow-up is
    T-free wins, so the witness is the tie-break-minimal one among maximisers.
    """
    require_pattern(H, "H")
    require_pattern(T, "T")
    if not is_tree(T):
        raise ValidationError("T must be a tree")
    if H.n > EXPONENT_PATTERN_CAP:
        raise UnsupportedError(f"exponent_r is capped at |H| <= {EXPONENT_PATTERN_CAP}")
    t = T.n
    if contains_copy(H, T) is not None:
        return ExponentProfile(status="Zero", t_used=t)
    for neg_count, _size, combo, mask in _subset_candidates(H):
        built = blow_up(H, combo, t)
        if contains_copy(built.graph, T) is None:
            return ExponentProfile(status="Finite", t_used=t,
                                   r=-neg_count, witness_U=combo)
    raise ValidationError("unreachable: the full-identification blow-up is H itself")


def verify_profile(H: Graph, T: Graph, profile: ExponentProfile) -> ProfileCheck:
    """Re-derive every profile invariant from scratch.

    Rebuilds the witness blow-up, re-tests T-freeness, recounts components,
    and re-enumerates all subsets to confirm no higher component count admits
    a T-free blow-up.
    """
    require_pattern(H, "H")
    require_pattern(T, "T")
    if not is_tree(T):
        return ProfileCheck(False, "T is not a tree")
    if profile.t_used != T.n:
        return ProfileCheck(False, f"t_used={profile.t_used} but |T|={T.n}")
    has_t = contains_copy(H, T) is not None
    if profile.status == "Zero":
        return ProfileCheck(has_t, "H does not contain T" if not has_t else "")
    if profile.status != "Finite":
        return ProfileCheck(False, f"unknown status {profile.status!r}")
    if has_t:
        return ProfileCheck(False, "H contains T; profile should be Zero")
    if profile.r is None or profile.witness_U is None:
        return ProfileCheck(False, "Finite profile lacks r or witness")
    witness = tuple(sorted(profile.witness_U))
    if any(not 0 <= u < H.n for u in witness) or len(set(witness)) != len(witness):
        raise ValidationError("witness_U is not a subset of V(H)")
    mask = 0
    for u in witness:
        mask |= 1 << u
    if _component_count(H, mask) != profile.r:
        return ProfileCheck(False, "witness component count differs from r")
    built = blow_up(H, witness, T.n)
    if contains_copy(built.graph, T) is not None:
        return ProfileCheck(False, "witness blow-up contains T")
    for neg_count, _size, combo, cmask in _subset_candidates(H):
        if -neg_count <= profile.r:
            break
        if contains_copy(blow_up(H, combo, T.n).graph, T) is None:
            return ProfileCheck(False, f"U={combo} beats r with {-neg_count} components")
    return ProfileCheck(True)
