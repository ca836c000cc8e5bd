"""Glue between hypergraphs and the compiled kernels (cached per hypergraph)."""

from collections import Counter

import numpy as np

from . import _kernels as K
from .hypergraph import Hypergraph, project
from .patterns import classifier, universe_array, universe_sizes


def edge_dict(h: Hypergraph, max_size: int = 5):
    key = ("edict", max_size)
    if key not in h._cache:
        arr = h.edge_array
        if max_size < 5:
            arr = arr[(arr >= 0).sum(axis=1) <= max_size]
        h._cache[key] = K.build_edge_dict(np.ascontiguousarray(arr))
    return h._cache[key]


def projection(h: Hypergraph, max_size=None):
    key = ("proj", max_size)
    if key not in h._cache:
        h._cache[key] = project(h, max_size=max_size)
    return h._cache[key]


def visited_dict(rows):
    """Kernel-side visited set from sorted vertex tuples of equal length."""
    if not rows:
        return K.empty_visited()
    arr = np.full((len(rows), 5), -1, dtype=np.int64)
    arr[:, : len(rows[0])] = np.asarray(rows, dtype=np.int64)
    return K.build_visited(arr)


def esu_masks(graph, k, edict, seeds=None, restrict=True, probe_max=None, allow_max=None, visited=None):
    """Mask histogram (Counter) over ESU leaves plus the number of leaves."""
    indptr, indices = graph.csr
    if seeds is None:
        seeds = np.arange(graph.n, dtype=np.int64).reshape(-1, 1)
    seeds = np.ascontiguousarray(seeds, dtype=np.int64)
    if seeds.shape[0] == 0:
        return Counter(), 0
    counts, leaves = K.esu_census(
        indptr,
        indices,
        seeds,
        restrict,
        k,
        universe_array(k),
        universe_sizes(k),
        edict,
        k if probe_max is None else probe_max,
        k if allow_max is None else allow_max,
        K.empty_visited() if visited is None else visited,
    )
    return Counter({int(m): int(c) for m, c in counts.items()}), int(leaves)


def fill_masks(h: Hypergraph, rows, k):
    if not rows:
        return []
    arr = np.asarray(rows, dtype=np.int64)
    return [int(m) for m in K.fill_masks(arr, k, universe_array(k), universe_sizes(k), edge_dict(h))]


def classify_counts(mask_counts, k):
    """Sum labeled-mask tallies into class tallies; disconnected masks drop out."""
    cls = classifier(k)
    masks = list(mask_counts)
    if hasattr(cls, "classify_masks"):
        pats = cls.classify_masks(masks)
    else:
        pats = [cls.classify_mask(m) for m in masks]
    out = {}
    for m, p in zip(masks, pats):
        if p is not None:
            out[p] = out.get(p, 0) + mask_counts[m]
    return out
