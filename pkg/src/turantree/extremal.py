"""Extremal constructions, the small-n brute-force oracle, and growth reports.

The oracle evaluates the copy-count maximum exactly by sweeping every graph
on n vertices: up to n = 7 the sweep runs over one representative per
isomorphism class (built incrementally and deduplicated by canonical form);
at n = 8 it streams the extensions of the 7-vertex representatives, which
still covers every isomorphism class, without the final dedup.  External
generator output can be piped in as newline-delimited graph6 instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .blowup import ExponentProfile, blow_up, exponent_r
from .embeddings import contains_copy, count_copies
from .errors import InternalConsistencyError, UnsupportedError, ValidationError
from .graphs import (Graph, canonical_form, pad_with_isolated, parse_graph,
                     require_pattern, serialize_graph)

INTERNAL_DEDUP_CAP = 7
INTERNAL_CAP = 8

_UNIVERSE: dict = {}


def nonisomorphic_graphs(n: int) -> tuple:
    """One representative per isomorphism class of n-vertex graphs, n <= 7.

    Representatives carry their canonical labelling; the tuple is sorted by
    canonical string.  Built by extending the (n-1)-vertex classes with every
    possible neighbourhood for a new vertex.
    """
    if not 1 <= n <= INTERNAL_DEDUP_CAP:
        raise UnsupportedError(f"class enumeration is capped at n <= {INTERNAL_DEDUP_CAP}")
    if n in _UNIVERSE:
        return _UNIVERSE[n]
    if n == 1:
        reps = (Graph.empty(1),)
    else:
        by_canon = {}
        for g in nonisomorphic_graphs(n - 1):
            for ext in _extensions(g):
                key = canonical_form(ext)
                if key not in by_canon:
                    by_canon[key] = parse_graph(key)
        reps = tuple(by_canon[k] for k in sorted(by_canon))
    _UNIVERSE[n] = reps
    return reps


def _extensions(g: Graph) -> Iterator[Graph]:
    """All graphs obtained by adding one vertex with an arbitrary neighbourhood."""
    bit = 1 << g.n
    for mask in range(1 << g.n):
        rows = list(g.adj)
        for v in range(g.n):
            if (mask >> v) & 1:
                rows[v] |= bit
        rows.append(mask)
        yield Graph(g.n + 1, tuple(rows))


def _internal_universe(n: int) -> tuple:
    """(iterator of graphs, deduplicated flag)."""
    if n <= INTERNAL_DEDUP_CAP:
        return iter(nonisomorphic_graphs(n)), True
    if n == INTERNAL_CAP:
        def stream():
            for g in nonisomorphic_graphs(INTERNAL_DEDUP_CAP):
                yield from _extensions(g)
        return stream(), False
    raise UnsupportedError(f"internal brute force is capped at n <= {INTERNAL_CAP}")


@dataclass(frozen=True)
class ExSearchResult:
    """Exact maximum copy count over the examined T-free universe."""

    n: int
    max_count: int
    witness: Graph
    graphs_examined: int
    source: str


@dataclass(frozen=True)
class GrowthReport:
    """Construction counts across sizes plus log-ratio slope estimates."""

    rows: tuple              # (n, count) pairs
    slopes: tuple            # len(rows) - 1 floats
    r_claimed: int
    strictly_increasing: bool


@dataclass(frozen=True)
class ComparisonRecord:
    n: int
    oracle_count: int
    construction_count: int


def lower_bound_construction(H: Graph, T: Graph, n: int,
                             profile: Optional[ExponentProfile] = None) -> Graph:
    """The T-free n-vertex blow-up construction achieving order n^r copies.

    Uses the witness U of the exponent profile with floor((n-|U|)/(h-|U|))
    copies, padded with isolated vertices to exactly n.  Isolated padding
    cannot create T-copies or H-copies.
    """
    require_pattern(H, "H")
    require_pattern(T, "T")
    if profile is None:
        profile = exponent_r(H, T)
    if profile.status == "Zero":
        raise ValidationError("H contains T, Ex = 0")
    if n < H.n:
        raise ValidationError(f"need n >= |H| = {H.n}")
    witness = tuple(sorted(profile.witness_U))
    if len(witness) == H.n:
        g = H
    else:
        t_copies = (n - len(witness)) // (H.n - len(witness))
        g = blow_up(H, witness, t_copies).graph
    g = pad_with_isolated(g, n)
    if contains_copy(g, T) is not None:
        raise InternalConsistencyError("construction is not T-free")
    return g


def brute_force_ex(n: int, H: Graph, T: Graph, source: str = "internal",
                   stream: Optional[Iterable[str]] = None) -> ExSearchResult:
    """Exact Ex(n, H, T) by exhausting the n-vertex universe.

    ``source="stream"`` consumes newline-delimited graph6 lines (e.g. from an
    exhaustive generator); every streamed graph must have exactly n vertices.
    The witness ties are broken by smallest canonical form, so the result is
    independent of enumeration order.
    """
    require_pattern(H, "H")
    require_pattern(T, "T")
    if source == "internal":
        graphs, deduped = _internal_universe(n)
        label = "internal-enumeration"
    elif source == "stream":
        if stream is None:
            raise ValidationError("stream mode needs an iterable of graph6 lines")
        def gen():
            for line in stream:
                line = line.strip()
                if not line:
                    continue
                g = parse_graph(line, "graph6")
                if g.n != n:
                    raise ValidationError(
                        f"stream graph {line!r} has {g.n} vertices, expected {n}")
                yield g
        graphs, deduped = gen(), False
        label = "graph6-stream"
    else:
        raise ValidationError(f"unknown source {source!r}")

    best_count = -1
    best_key = None
    best_graph = None
    examined = 0
    for g in graphs:
        examined += 1
        if contains_copy(g, T) is not None:
            continue
        c = count_copies(g, H)
        if c < best_count:
            continue
        # class representatives already carry their canonical labelling
        key = serialize_graph(g) if deduped else canonical_form(g)
        if c > best_count or key < best_key:
            best_count, best_key, best_graph = c, key, g
    if best_graph is None:
        raise ValidationError(f"no T-free graph on {n} vertices examined")
    if contains_copy(best_graph, T) is not None or count_copies(best_graph, H) != best_count:
        raise InternalConsistencyError("witness failed re-verification")
    return ExSearchResult(n=n, max_count=best_count, witness=best_graph,
                          graphs_examined=examined, source=label)


def growth_report(H: Graph, T: Graph, ns: Iterable[int]) -> GrowthReport:
    """Construction counts and slope estimates across the given sizes.

    Every count is checked against the guaranteed floor(n/h)^r lower bound.
    Counts never decrease with n; strict growth holds whenever consecutive
    sizes are far enough apart to add a copy and is reported as a flag.
    """
    ns = list(ns)
    profile = exponent_r(H, T)
    if profile.status == "Zero":
        raise ValidationError("H contains T, Ex = 0")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValidationError("sizes must be strictly ascending")
    if any(n < H.n * T.n for n in ns):
        raise ValidationError(f"each size must be at least h*t = {H.n * T.n}")
    rows = []
    for n in ns:
        g = lower_bound_construction(H, T, n, profile)
        c = count_copies(g, H)
        if c < (n // H.n) ** profile.r:
            raise InternalConsistencyError(
                f"count {c} at n={n} below the guaranteed (n/h)^r bound")
        rows.append((n, c))
    for (_, a), (_, b) in zip(rows, rows[1:]):
        if b < a:
            raise InternalConsistencyError("construction count decreased with n")
    slopes = tuple(
        math.log(b_count / a_count) / math.log(b_n / a_n)
        for (a_n, a_count), (b_n, b_count) in zip(rows, rows[1:]))
    strict = all(b > a for (_, a), (_, b) in zip(rows, rows[1:]))
    return GrowthReport(rows=tuple(rows), slopes=slopes,
                        r_claimed=profile.r, strictly_increasing=strict)


def oracle_vs_construction(n: int, H: Graph, T: Graph) -> ComparisonRecord:
    """Brute-force maximum vs construction count at the same n; oracle wins or ties."""
    oracle = brute_force_ex(n, H, T)
    construction = lower_bound_construction(H, T, n)
    c = count_copies(construction, H)
    if oracle.max_count < c:
        raise InternalConsistencyError(
            "construction beat the exhaustive maximum; counting is broken")
    return ComparisonRecord(n=n, oracle_count=oracle.max_count, construction_count=c)
