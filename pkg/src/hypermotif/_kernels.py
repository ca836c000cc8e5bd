"""Compiled inner loops (numba).

Hyperedges of size <= 5 are keyed as 5-tuples of vertex ids padded with -1.
Labeled patterns are int64 bitmasks laid out as in :mod:`hypermotif.patterns`.
"""

import numpy as np
from numba import njit, types
from numba.typed import Dict

KEY = types.UniTuple(types.int64, 5)


@njit(cache=True)
def build_edge_dict(edges):
    """Map padded edge tuples (rows of an (m, 5) array) to row index."""
    d = Dict.empty(key_type=KEY, value_type=types.int64)
    for i in range(edges.shape[0]):
        d[(edges[i, 0], edges[i, 1], edges[i, 2], edges[i, 3], edges[i, 4])] = i
    return d


@njit(cache=True)
def build_visited(rows):
    d = Dict.empty(key_type=KEY, value_type=types.boolean)
    for i in range(rows.shape[0]):
        d[(rows[i, 0], rows[i, 1], rows[i, 2], rows[i, 3], rows[i, 4])] = True
    return d


@njit(cache=True)
def empty_visited():
    return Dict.empty(key_type=KEY, value_type=types.boolean)


@njit(cache=True)
def _apply_perm(mask, row):
    out = 0
    b = 0
    while mask:
        if mask & 1:
            out |= np.int64(1) << row[b]
        mask >>= 1
        b += 1
    return out


@njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def _connected(mask, upos, k):
    parent = np.arange(k)
    n = upos.shape[0]
    for b in range(n):
        if (mask >> b) & 1:
            r = _find(parent, upos[b, 0])
            for i in range(1, 5):
                p = upos[b, i]
                if p < 0:
                    break
                parent[_find(parent, p)] = r
    r0 = _find(parent, 0)
    for v in range(1, k):
        if _find(parent, v) != r0:
            return False
    return True


@njit(cache=True)
def orbit_representatives(ptable, upos, k):
    """Canonical (maximal) mask of every connected orbit of labeled patterns."""
    n = ptable.shape[1]
    total = np.int64(1) << n
    seen = np.zeros(total, dtype=np.uint8)
    out = []
    for m in range(1, total):
        if seen[m]:
            continue
        best = m
        for p in range(ptable.shape[0]):
            img = _apply_perm(m, ptable[p])
            seen[img] = 1
            if img > best:
                best = img
        if _connected(m, upos, k):
            out.append(best)
    res = np.empty(len(out), dtype=np.int64)
    for i in range(len(out)):
        res[i] = out[i]
    return res


@njit(cache=True)
def canonical_masks(masks, ptable):
    out = np.empty_like(masks)
    for i in range(masks.shape[0]):
        best = masks[i]
        for p in range(ptable.shape[0]):
            img = _apply_perm(masks[i], ptable[p])
            if img > best:
                best = img
        out[i] = best
    return out


@njit(cache=True)
def _vkey(vs, p):
    # vs[p[i]] with -1 padding
    a2 = vs[p[2]] if p[2] >= 0 else -1
    a3 = vs[p[3]] if p[3] >= 0 else -1
    a4 = vs[p[4]] if p[4] >= 0 else -1
    return (vs[p[0]], vs[p[1]], a2, a3, a4)


@njit(cache=True)
def fill_mask(vs, upos, usize, edict, probe_max, allow_max):
    """Labeled mask of the sub-hypergraph induced by sorted ``vs``.

    Only subsets of size <= probe_max are probed. Returns -1 when an edge of
    size > allow_max is present.
    """
    mask = np.int64(0)
    for b in range(upos.shape[0]):
        s = usize[b]
        if s > probe_max:
            continue
        if _vkey(vs, upos[b]) in edict:
            if s > allow_max:
                return np.int64(-1)
            mask |= np.int64(1) << b
    return mask


@njit(cache=True)
def fill_masks(rows, k, upos, usize, edict):
    """Fill-in masks for each sorted row of a (m, k) vertex array."""
    out = np.empty(rows.shape[0], dtype=np.int64)
    for i in range(rows.shape[0]):
        out[i] = fill_mask(rows[i], upos, usize, edict, k, k)
    return out


@njit(cache=True)
def _sorted_into(sub, k, vs):
    for i in range(k):
        vs[i] = sub[i]
    for i in range(1, k):
        x = vs[i]
        j = i - 1
        while j >= 0 and vs[j] > x:
            vs[j + 1] = vs[j]
            j -= 1
        vs[j + 1] = x


@njit(cache=True)
def _pad_key(vs, k):
    a2 = vs[2] if k > 2 else -1
    a3 = vs[3] if k > 3 else -1
    a4 = vs[4] if k > 4 else -1
    return (vs[0], vs[1], a2, a3, a4)


@njit(cache=True)
def _leaf(sub, k, vs, upos, usize, edict, probe_max, allow_max, visited, counts):
    _sorted_into(sub, k, vs)
    if len(visited) > 0:
        if _pad_key(vs, k) in visited:
            return
    m = fill_mask(vs, upos, usize, edict, probe_max, allow_max)
    if m < 0:
        return
    counts[m] = counts.get(m, 0) + 1


@njit(cache=True)
def esu_census(indptr, indices, seeds, restrict, k, upos, usize, edict, probe_max, allow_max, visited):
    """Run ESU from every seed row and histogram the fill-in masks of leaves.

    ``restrict=True`` is classical ESU: one-column seeds are roots and only
    vertices numbered above the root may join. ``restrict=False`` anchors on
    the whole seed row (a connected vertex set) and enumerates its connected
    supersets of size ``k``. Leaves found in ``visited`` are skipped.

    Returns (mask -> count dict, number of leaves reached).
    """
    counts = Dict.empty(key_type=types.int64, value_type=types.int64)
    n = indptr.shape[0] - 1
    maxdeg = 0
    for v in range(n):
        if indptr[v + 1] - indptr[v] > maxdeg:
            maxdeg = indptr[v + 1] - indptr[v]
    cap = k * (maxdeg + 1) + 1
    ext = np.empty((k + 1, cap), dtype=np.int64)
    extlen = np.zeros(k + 1, dtype=np.int64)
    marked = np.empty((k + 1, cap), dtype=np.int64)
    nmarked = np.zeros(k + 1, dtype=np.int64)
    mark = np.zeros(n, dtype=np.bool_)
    sub = np.empty(k, dtype=np.int64)
    vs = np.empty(k, dtype=np.int64)
    s = seeds.shape[1]
    leaves = 0
    for r in range(seeds.shape[0]):
        root = seeds[r, 0]
        nm = 0
        el = 0
        for i in range(s):
            v = seeds[r, i]
            sub[i] = v
            if not mark[v]:
                mark[v] = True
                marked[s, nm] = v
                nm += 1
        for i in range(s):
            v = seeds[r, i]
            for p in range(indptr[v], indptr[v + 1]):
                u = indices[p]
                if not mark[u]:
                    mark[u] = True
                    marked[s, nm] = u
                    nm += 1
                    if (not restrict) or u > root:
                        ext[s, el] = u
                        el += 1
        nmarked[s] = nm
        extlen[s] = el
        if s == k:
            leaves += 1
            _leaf(sub, k, vs, upos, usize, edict, probe_max, allow_max, visited, counts)
        else:
            d = s
            while True:
                if extlen[d] == 0:
                    if d == s:
                        break
                    for i in range(nmarked[d]):
                        mark[marked[d, i]] = False
                    d -= 1
                    continue
                extlen[d] -= 1
                w = ext[d, extlen[d]]
                sub[d] = w
                if d + 1 == k:
                    leaves += 1
                    _leaf(sub, k, vs, upos, usize, edict, probe_max, allow_max, visited, counts)
                    continue
                el = extlen[d]
                for i in range(el):
                    ext[d + 1, i] = ext[d, i]
                nm = 0
                for p in range(indptr[w], indptr[w + 1]):
                    u = indices[p]
                    if not mark[u]:
                        mark[u] = True
                        marked[d + 1, nm] = u
                        nm += 1
                        if (not restrict) or u > root:
                            ext[d + 1, el] = u
                            el += 1
                extlen[d + 1] = el
                nmarked[d + 1] = nm
                d += 1
        for i in range(nmarked[s]):
            mark[marked[s, i]] = False
    return counts, leaves
