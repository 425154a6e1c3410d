# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: injective-map search and the canonical-bits search.

Mirrors ``_purecore`` observably: identical counts, identical first-found
maps (ascending candidate order), identical canonical bit vectors.  Hosts
are converted from Python-int bitsets to little-endian uint64 word arrays on
entry; patterns stay tiny (<= 10 positions).
"""

from cpython.bytes cimport PyBytes_AsString
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memset

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil

DEF MAX_H = 16


cdef int _fill_words(object value, u64* dst, int n_words) except -1:
    b = value.to_bytes(n_words * 8, "little")
    memcpy(dst, PyBytes_AsString(b), n_words * 8)
    return 0


cdef struct Ctx:
    int h
    int n_words
    u64* adj
    u64* masks
    u64* used
    u64* scratch
    int* img
    int n_parents[MAX_H]
    int parents[MAX_H][MAX_H]


cdef int _setup(Ctx* c, object adj, object masks, object parents) except -1:
    cdef int n = len(adj)
    cdef int h = len(masks)
    cdef int i, k, j
    c.h = h
    c.n_words = ((n + 63) >> 6) if n else 1
    c.adj = <u64*> malloc(n * c.n_words * sizeof(u64))
    c.masks = <u64*> malloc(h * c.n_words * sizeof(u64))
    c.used = <u64*> malloc(c.n_words * sizeof(u64))
    c.scratch = <u64*> malloc(h * c.n_words * sizeof(u64))
    c.img = <int*> malloc(h * sizeof(int))
    if not (c.adj and c.masks and c.used and c.scratch and c.img):
        _teardown(c)
        raise MemoryError()
    for i in range(n):
        _fill_words(adj[i], c.adj + i * c.n_words, c.n_words)
    for k in range(h):
        _fill_words(masks[k], c.masks + k * c.n_words, c.n_words)
        plist = parents[k]
        c.n_parents[k] = len(plist)
        for j in range(len(plist)):
            c.parents[k][j] = plist[j]
    memset(c.used, 0, c.n_words * sizeof(u64))
    return 0


cdef void _teardown(Ctx* c) nogil:
    if c.adj != NULL: free(c.adj)
    if c.masks != NULL: free(c.masks)
    if c.used != NULL: free(c.used)
    if c.scratch != NULL: free(c.scratch)
    if c.img != NULL: free(c.img)


cdef inline void _candidates(Ctx* c, int k, u64* out) nogil:
    cdef int w, p
    cdef u64* row
    for w in range(c.n_words):
        out[w] = c.masks[k * c.n_words + w] & ~c.used[w]
    for p in range(c.n_parents[k]):
        row = c.adj + c.img[c.parents[k][p]] * c.n_words
        for w in range(c.n_words):
            out[w] &= row[w]


cdef u64 _count_rec(Ctx* c, int k) nogil:
    # Per-branch totals stay far under 2^64 for any enumeration that can
    # finish; cross-branch sums are accumulated as Python ints by the caller.
    cdef u64* cand = c.scratch + k * c.n_words
    cdef u64 total = 0, word
    cdef int w, v
    _candidates(c, k, cand)
    if k == c.h - 1:
        for w in range(c.n_words):
            total += <u64> __builtin_popcountll(cand[w])
        return total
    for w in range(c.n_words):
        word = cand[w]
        while word:
            v = __builtin_ctzll(word)
            word &= word - 1
            c.img[k] = (w << 6) | v
            c.used[w] |= (<u64> 1) << v
            total += _count_rec(c, k + 1)
            c.used[w] &= ~((<u64> 1) << v)
    return total


def count_maps(adj, masks, parents):
    """Count injective maps; see ``_purecore.count_maps``."""
    cdef Ctx c
    cdef u64 word, sub
    cdef int w, v
    cdef object total = 0
    if len(masks) == 0:
        return 1
    memset(&c, 0, sizeof(Ctx))
    _setup(&c, adj, masks, parents)
    try:
        if c.h == 1:
            sub = 0
            for w in range(c.n_words):
                sub += <u64> __builtin_popcountll(c.masks[w])
            return int(sub)
        for w in range(c.n_words):
            word = c.masks[w]
            while word:
                v = __builtin_ctzll(word)
                word &= word - 1
                c.img[0] = (w << 6) | v
                c.used[w] |= (<u64> 1) << v
                with nogil:
                    sub = _count_rec(&c, 1)
                c.used[w] &= ~((<u64> 1) << v)
                total = total + int(sub)
        return total
    finally:
        _teardown(&c)


cdef bint _find_rec(Ctx* c, int k) nogil:
    cdef u64* cand = c.scratch + k * c.n_words
    cdef u64 word
    cdef int w, v
    _candidates(c, k, cand)
    for w in range(c.n_words):
        word = cand[w]
        while word:
            v = __builtin_ctzll(word)
            word &= word - 1
            c.img[k] = (w << 6) | v
            if k == c.h - 1:
                return True
            c.used[w] |= (<u64> 1) << v
            if _find_rec(c, k + 1):
                return True
            c.used[w] &= ~((<u64> 1) << v)
    return False


def find_map(adj, masks, parents):
    """First injective map in deterministic order; see ``_purecore.find_map``."""
    cdef Ctx c
    cdef bint found
    cdef int k
    if len(masks) == 0:
        return ()
    memset(&c, 0, sizeof(Ctx))
    _setup(&c, adj, masks, parents)
    try:
        with nogil:
            found = _find_rec(&c, 0)
        if not found:
            return None
        return tuple(c.img[k] for k in range(c.h))
    finally:
        _teardown(&c)


# ---------------------------------------------------------------------------
# canonical bits (n <= 10: rows fit in 16 bits)
# ---------------------------------------------------------------------------

cdef struct Canon:
    int n
    unsigned short rows[10]
    unsigned short best[10]
    int placed[10]


cdef inline int _column(Canon* c, int v, int depth) nogil:
    cdef int col = 0, i
    cdef unsigned short row = c.rows[v]
    for i in range(depth):
        if (row >> c.placed[i]) & 1:
            col |= 1 << (depth - 1 - i)
    return col


cdef void _canon_rec(Canon* c, int depth, int placed_mask) nogil:
    cdef int cols[10]
    cdef int verts[10]
    cdef int tried[10]
    cdef int n_c = 0, n_tried = 0
    cdef int v, i, j, col, tv, ok
    cdef unsigned short clear_u, clear_v
    if depth == c.n:
        return
    for v in range(c.n):
        if (placed_mask >> v) & 1:
            continue
        col = _column(c, v, depth)
        i = n_c
        while i > 0 and (cols[i - 1] > col or (cols[i - 1] == col and verts[i - 1] > v)):
            cols[i] = cols[i - 1]
            verts[i] = verts[i - 1]
            i -= 1
        cols[i] = col
        verts[i] = v
        n_c += 1
    for i in range(n_c):
        col = cols[i]
        v = verts[i]
        if col > c.best[depth]:
            break
        ok = 1
        for j in range(n_tried):
            tv = tried[j]
            clear_u = c.rows[tv] & ~((1 << tv) | (1 << v))
            clear_v = c.rows[v] & ~((1 << tv) | (1 << v))
            if clear_u == clear_v:
                ok = 0
                break
        if not ok:
            continue
        tried[n_tried] = v
        n_tried += 1
        if col < c.best[depth]:
            c.best[depth] = <unsigned short> col
            for j in range(depth + 1, c.n):
                c.best[j] = <unsigned short> ((1 << j) - 1)
        c.placed[depth] = v
        _canon_rec(c, depth + 1, placed_mask | (1 << v))


def canonical_bits(n, adj):
    """Minimum packed upper-triangle bits; see ``_purecore.canonical_bits``."""
    cdef Canon c
    cdef int j
    cdef object acc
    if n <= 1:
        return 0
    if n > 10:
        raise ValueError("canonical_bits is limited to n <= 10")
    c.n = n
    for j in range(n):
        c.rows[j] = <unsigned short> adj[j]
        c.best[j] = <unsigned short> ((1 << j) - 1)
    with nogil:
        _canon_rec(&c, 0, 0)
    acc = 0
    for j in range(1, n):
        acc = (acc << j) | int(c.best[j])
    return acc
