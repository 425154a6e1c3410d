"""Pure-Python reference kernels.

These are the hot inner loops of the package: backtracking injective-map
search over bitset adjacency rows, and the minimum-relabelling search behind
canonical forms.  A compiled twin lives in ``_fastcore.pyx``; ``kernels``
picks whichever is available.  Both implementations must stay observably
identical (same counts, same first-found map, same canonical bit vector).

Graphs enter as plain data: ``adj`` is a sequence of ints, bit ``v`` of
``adj[u]`` set iff ``uv`` is an edge.  No imports from the rest of the
package, so the compiled twin can be validated against this module alone.
"""

from __future__ import annotations

from typing import Optional, Sequence


def count_maps(adj: Sequence[int], masks: Sequence[int],
               parents: Sequence[Sequence[int]]) -> int:
    """Count injective maps of a pattern into the host ``adj``.

    ``masks[k]`` is the candidate bitset for search position ``k`` (degree and
    label restrictions already folded in); ``parents[k]`` lists the earlier
    positions whose images must be adjacent to position ``k``'s image.
    """
    h = len(masks)
    img = [0] * h
    total = 0
    last = h - 1

    def rec(k: int, used: int) -> None:
        nonlocal total
        cand = masks[k] & ~used
        for p in parents[k]:
            cand &= adj[img[p]]
        if k == last:
            total += cand.bit_count()
            return
        while cand:
            low = cand & -cand
            cand ^= low
            img[k] = low.bit_length() - 1
            rec(k + 1, used | low)

    if h == 0:
        return 1
    rec(0, 0)
    return total


def find_map(adj: Sequence[int], masks: Sequence[int],
             parents: Sequence[Sequence[int]]) -> Optional[tuple]:
    """First injective map in deterministic order, or None.

    Positions are filled in order; host candidates are tried in ascending
    index order, so the result is the lexicographically first image sequence
    for the given search plan.
    """
    h = len(masks)
    img = [0] * h

    def rec(k: int, used: int) -> bool:
        cand = masks[k] & ~used
        for p in parents[k]:
            cand &= adj[img[p]]
        while cand:
            low = cand & -cand
            cand ^= low
            img[k] = low.bit_length() - 1
            if k == h - 1 or rec(k + 1, used | low):
                return True
        return False

    if h == 0:
        return ()
    return tuple(img) if rec(0, 0) else None


def iter_maps(adj: Sequence[int], masks: Sequence[int],
              parents: Sequence[Sequence[int]]):
    """Yield every injective map (as a position-indexed tuple), in order."""
    h = len(masks)
    img = [0] * h

    def rec(k: int, used: int):
        cand = masks[k] & ~used
        for p in parents[k]:
            cand &= adj[img[p]]
        while cand:
            low = cand & -cand
            cand ^= low
            img[k] = low.bit_length() - 1
            if k == h - 1:
                yield tuple(img)
            else:
                yield from rec(k + 1, used | low)

    if h == 0:
        yield ()
        return
    yield from rec(0, 0)


def canonical_bits(n: int, adj: Sequence[int]) -> int:
    """Minimum upper-triangle bit vector over all vertex relabellings.

    Bit order follows the graph6 convention: pairs (0,1),(0,2),(1,2),(0,3),...
    with the first pair most significant.  The result packs all C(n,2) bits
    into one int; n <= 10 keeps it under 64 bits.

    Backtracking places one vertex per step, comparing the new column of bits
    against the best known prefix.  Two prunes keep symmetric graphs cheap:
    candidates are tried in ascending column order (so a larger column ends
    the loop), and a candidate is skipped when swapping it with an already
    tried one is an automorphism.
    """
    if n <= 1:
        return 0

    # best[j] = column bits at step j under the smallest assignment seen so
    # far; sentinel all-ones until a branch reaches that depth.  Invariant on
    # every recursive call: the current path equals best on positions < j, so
    # a column above best[j] can be pruned and one below it overwrites the
    # stale deeper entries.
    best = [(1 << j) - 1 for j in range(n)]

    def column(v: int, placed: list) -> int:
        col = 0
        row = adj[v]
        j = len(placed)
        for i, u in enumerate(placed):
            if (row >> u) & 1:
                col |= 1 << (j - 1 - i)
        return col

    def swap_is_automorphism(u: int, v: int) -> bool:
        clear = ~((1 << u) | (1 << v))
        return (adj[u] & clear) == (adj[v] & clear)

    def rec(j: int, placed: list, placed_mask: int) -> None:
        if j == n:
            return
        cands = []
        for v in range(n):
            if not (placed_mask >> v) & 1:
                cands.append((column(v, placed), v))
        cands.sort()
        tried: list = []
        for col, v in cands:
            if col > best[j]:
                break
            if any(swap_is_automorphism(u, v) for u in tried):
                continue
            tried.append(v)
            if col < best[j]:
                best[j] = col
                for k in range(j + 1, n):
                    best[k] = (1 << k) - 1
            placed.append(v)
            rec(j + 1, placed, placed_mask | (1 << v))
            placed.pop()

    rec(0, [], 0)

    acc = 0
    for j in range(1, n):
        acc = (acc << j) | best[j]
    return acc
