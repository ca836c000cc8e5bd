"""Motif patterns: enumeration, canonical forms and isomorphism-class lookup.

A labeled pattern on ``k`` nodes is stored as an integer bitmask over the
``2**k - k - 1`` possible hyperedges of size >= 2 on labels ``0..k-1``. The
possible edges are ordered by ``(size, members)`` and edge ``j`` owns bit
``N - 1 - j``, so among patterns with the same number of edges a larger mask
means a lexicographically smaller edge list. The canonical form of a pattern
is therefore the largest mask over all ``k!`` relabelings.
"""

import json
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial

import numpy as np

ORDERS = (3, 4, 5)


class Pattern(tuple):
    """Canonical motif: a tuple of sorted edges over labels ``0..order-1``.

    Edges are sorted by ``(size, members)``. ``str(p)`` gives the stable text
    encoding used in every output file, e.g. ``[[0,1],[0,1,2]]``.
    """

    __slots__ = ()

    @property
    def order(self) -> int:
        return max(max(e) for e in self) + 1

    def encode(self) -> str:
        return json.dumps([list(e) for e in self], separators=(",", ":"))

    def sort_key(self):
        return tuple((len(e), e) for e in self)

    def __str__(self):
        return self.encode()

    def __repr__(self):
        return f"Pattern({self.encode()})"


def decode(text: str) -> Pattern:
    """Parse an encoding produced by :meth:`Pattern.encode`."""
    return Pattern(tuple(tuple(int(v) for v in e) for e in json.loads(text)))


@lru_cache(maxsize=None)
def universe(k: int) -> tuple:
    """All label subsets of size >= 2, ordered by (size, members)."""
    return tuple(c for s in range(2, k + 1) for c in combinations(range(k), s))


def nbits(k: int) -> int:
    return (1 << k) - k - 1


@lru_cache(maxsize=None)
def _bit_of(k: int) -> dict:
    n = nbits(k)
    return {e: n - 1 - j for j, e in enumerate(universe(k))}


@lru_cache(maxsize=None)
def perm_table(k: int) -> np.ndarray:
    """Row ``p`` maps bit ``b`` to its image under the ``p``-th relabeling."""
    bit = _bit_of(k)
    n = nbits(k)
    perms = list(permutations(range(k)))
    table = np.empty((len(perms), n), dtype=np.int64)
    for i, p in enumerate(perms):
        for e, b in bit.items():
            table[i, b] = bit[tuple(sorted(p[v] for v in e))]
    return table


@lru_cache(maxsize=None)
def universe_array(k: int) -> np.ndarray:
    """(N, 5) array of label positions per bit (row = bit index), padded with -1."""
    n = nbits(k)
    arr = np.full((n, 5), -1, dtype=np.int64)
    for e, b in _bit_of(k).items():
        arr[b, : len(e)] = e
    return arr


@lru_cache(maxsize=None)
def universe_sizes(k: int) -> np.ndarray:
    arr = universe_array(k)
    return (arr >= 0).sum(axis=1).astype(np.int64)


def mask_from_edges(edges, k: int) -> int:
    bit = _bit_of(k)
    mask = 0
    for e in edges:
        mask |= 1 << bit[tuple(sorted(e))]
    return mask


def edges_from_mask(mask: int, k: int) -> tuple:
    """Edges of a labeled pattern, sorted by (size, members)."""
    n = nbits(k)
    return tuple(e for j, e in enumerate(universe(k)) if mask >> (n - 1 - j) & 1)


def apply_perm(mask: int, row) -> int:
    out = 0
    b = 0
    while mask:
        if mask & 1:
            out |= 1 << int(row[b])
        mask >>= 1
        b += 1
    return out


def canonical_mask(mask: int, k: int) -> int:
    """Largest mask over all relabelings (brute force over k!)."""
    return max(apply_perm(mask, row) for row in perm_table(k))


def mask_connected(mask: int, k: int) -> bool:
    """Connectivity of the labeled pattern: every label reached through edges."""
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges_from_mask(mask, k):
        r = find(e[0])
        for v in e[1:]:
            parent[find(v)] = r
    return len({find(v) for v in range(k)}) == 1


def pattern_from_mask(mask: int, k: int) -> Pattern:
    return Pattern(edges_from_mask(mask, k))


def induced_mask(lookup, vs, k: int) -> int:
    """Fill-in mask of the sorted vertex tuple ``vs`` against an edge set."""
    mask = 0
    for e, b in _bit_of(k).items():
        if tuple(vs[p] for p in e) in lookup:
            mask |= 1 << b
    return mask


def _relabel(vertices, edges):
    vs = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(vs)}
    return len(vs), [tuple(sorted(pos[v] for v in e)) for e in edges]


def canonicalize(edges, vertices=None) -> Pattern:
    """Canonical pattern of a small hypergraph given by its edges.

    Vertices default to the union of the edges. Idempotent on patterns.
    """
    edges = list(edges)
    if vertices is None:
        vertices = {v for e in edges for v in e}
    k, rel = _relabel(vertices, edges)
    if not 2 <= k <= 5:
        raise ValueError(f"canonicalize supports 2..5 vertices, got {k}")
    return pattern_from_mask(canonical_mask(mask_from_edges(rel, k), k), k)


def _enumerate_small(k):
    n = nbits(k)
    reps = set()
    for mask in range(1, 1 << n):
        if mask_connected(mask, k):
            reps.add(canonical_mask(mask, k))
    return reps


@lru_cache(maxsize=None)
def _enumerate_masks(k: int) -> tuple:
    if k == 5:
        from ._kernels import orbit_representatives

        reps = orbit_representatives(perm_table(5), universe_array(5), 5)
        reps = [int(m) for m in reps]
    else:
        reps = _enumerate_small(k)
    pats = sorted((pattern_from_mask(m, k) for m in reps), key=Pattern.sort_key)
    return tuple(pats)


def enumerate_patterns(k: int) -> list:
    """One canonical representative per class of connected k-node patterns.

    Sorted by encoding; ``k=5`` runs an orbit sweep over all 2**26 labeled
    patterns (a few seconds, cached per process).
    """
    if k not in ORDERS:
        raise ValueError(f"pattern order must be one of {ORDERS}, got {k}")
    return list(_enumerate_masks(k))


class PatternTable:
    """Hash table from every labeled variant of a k-node pattern to its class.

    ``entries`` holds one item per (class, relabeling) pair, ``k! * classes``
    in total. Relabelings that coincide because of automorphisms share a key,
    so ``index`` (labeled mask -> class pattern) has one key per distinct
    labeled variant. ``lookup`` is the same map as a dense array over masks.
    """

    def __init__(self, k: int):
        if k not in (3, 4):
            raise ValueError(f"pattern tables are built for k in (3, 4), got {k}")
        self.order = k
        self.patterns = enumerate_patterns(k)
        self.class_count = len(self.patterns)
        table = perm_table(k)
        self.entries = {}
        self.index = {}
        self.lookup = np.full(1 << nbits(k), -1, dtype=np.int32)
        for cid, pat in enumerate(self.patterns):
            base = mask_from_edges(pat, k)
            for p, row in enumerate(table):
                m = apply_perm(base, row)
                self.entries[(cid, p)] = m
                self.index[m] = pat
                self.lookup[m] = cid

    @property
    def n_entries(self) -> int:
        return len(self.entries)

    def __len__(self):
        return self.n_entries

    def classify_mask(self, mask: int):
        """Class pattern for a labeled mask, or None if it is not connected."""
        return self.index.get(mask)


class LazyClassifier:
    """Classifier that canonicalizes on demand and memoizes per labeled mask."""

    def __init__(self, k: int):
        if k not in ORDERS:
            raise ValueError(f"pattern order must be one of {ORDERS}, got {k}")
        self.order = k
        self._memo = {}

    def classify_mask(self, mask: int):
        try:
            return self._memo[mask]
        except KeyError:
            pass
        k = self.order
        pat = pattern_from_mask(canonical_mask(mask, k), k) if mask_connected(mask, k) else None
        self._memo[mask] = pat
        return pat

    def classify_masks(self, masks) -> list:
        """Batch variant; new masks are canonicalized in a compiled kernel."""
        masks = [int(m) for m in masks]
        todo = sorted({m for m in masks if m not in self._memo})
        if todo:
            from ._kernels import canonical_masks

            k = self.order
            canon = canonical_masks(np.array(todo, dtype=np.int64), perm_table(k))
            for m, c in zip(todo, canon):
                self._memo[m] = pattern_from_mask(int(c), k) if mask_connected(m, k) else None
        return [self._memo[m] for m in masks]


@lru_cache(maxsize=None)
def build_table(k: int) -> PatternTable:
    return PatternTable(k)


def classifier(k: int):
    """Precomputed table for k <= 4, lazy canonicalization for k = 5."""
    return build_table(k) if k in (3, 4) else LazyClassifier(k)


def classify(sub, table=None) -> Pattern:
    """Isomorphism class of a connected sub-hypergraph.

    ``sub`` is a :class:`~hypermotif.hypergraph.SubHypergraph` (or any
    ``(vertices, edges)`` pair) with arbitrary vertex labels. Vertices are
    relabeled to ``0..k-1`` in sorted order and the labeled mask is looked up
    in ``table``; without a table the pattern is canonicalized directly.
    """
    vertices, edges = sub
    k, rel = _relabel(vertices, edges)
    if k not in ORDERS:
        raise ValueError(f"classify supports 3..5 vertices, got {k}")
    mask = mask_from_edges(rel, k)
    cls = (table if table is not None else LazyClassifier(k)).classify_mask(mask)
    if cls is None:
        raise ValueError("cannot classify a disconnected sub-hypergraph")
    return cls


def countmax(pattern) -> tuple:
    """(largest edge size, number of edges of that size) of a pattern."""
    top = max(len(e) for e in pattern)
    return top, sum(1 for e in pattern if len(e) == top)


@lru_cache(maxsize=None)
def orbit_size(k: int, mask: int) -> int:
    """Number of distinct labeled variants of a labeled pattern."""
    return len({apply_perm(mask, row) for row in perm_table(k)})


def automorphism_count(pattern) -> int:
    k = pattern.order
    return factorial(k) // orbit_size(k, mask_from_edges(pattern, k))
