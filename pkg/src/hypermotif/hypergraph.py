"""Hypergraph storage, ingestion, projection and induced sub-hypergraphs.

Vertices are dense integers ``0..n-1``. Hyperedges are sorted tuples of
distinct vertices with at least two members; the edge set has set semantics.
"""

import os
import re
from collections import deque
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

import numpy as np

from .errors import EmptyHypergraphError, ParseError

Edge = tuple

_SPLIT = re.compile(r"[,\s]+")

MIN_EDGE_SIZE = 2


class SubHypergraph(NamedTuple):
    """A vertex set together with the hyperedges fully contained in it."""

    vertices: tuple
    edges: tuple


class Hypergraph:
    """Immutable hypergraph with per-size partitions and an incidence index.

    ``edges`` is sorted lexicographically, ``edges_by_size[s]`` holds the
    edges of size ``s`` in the same order, ``incidence[v]`` lists the edges
    containing ``v`` and ``edge_lookup`` is a hash set for O(1) membership.
    """

    def __init__(self, edges: Iterable[Sequence[int]], n: Optional[int] = None, labels=None):
        unique = set()
        for e in edges:
            t = tuple(sorted(set(int(v) for v in e)))
            if len(t) >= MIN_EDGE_SIZE:
                unique.add(t)
        self.edges = tuple(sorted(unique))
        top = max((e[-1] for e in self.edges), default=-1) + 1
        if n is None:
            n = top
        elif n < top:
            raise ValueError(f"vertex id {top - 1} out of range for n={n}")
        if self.edges and self.edges[0][0] < 0:
            raise ValueError("vertex ids must be non-negative")
        self.n = int(n)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != self.n:
                raise ValueError("labels must have one entry per vertex")
        self.labels = labels

        by_size = {}
        incidence = [[] for _ in range(self.n)]
        for e in self.edges:
            by_size.setdefault(len(e), []).append(e)
            for v in e:
                incidence[v].append(e)
        self.edges_by_size = {s: by_size[s] for s in sorted(by_size)}
        self.incidence = [tuple(lst) for lst in incidence]
        self.edge_lookup = frozenset(self.edges)
        self._cache = {}

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_cache"] = {}
        return state

    def __len__(self):
        return len(self.edges)

    def __contains__(self, e):
        return tuple(e) in self.edge_lookup

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        sizes = ", ".join(f"{s}:{len(v)}" for s, v in self.edges_by_size.items())
        return f"Hypergraph(n={self.n}, edges={{{sizes}}})"

    @property
    def sizes(self):
        return list(self.edges_by_size)

    def num_edges(self, size: Optional[int] = None) -> int:
        if size is None:
            return len(self.edges)
        return len(self.edges_by_size.get(size, ()))

    def size_counts(self) -> dict:
        return {s: len(v) for s, v in self.edges_by_size.items()}

    def degrees(self) -> np.ndarray:
        return np.array([len(inc) for inc in self.incidence], dtype=np.int64)

    def size_sequence(self) -> np.ndarray:
        """Sorted multiset of hyperedge sizes."""
        return np.sort(np.array([len(e) for e in self.edges], dtype=np.int64))

    def restrict(self, min_size: int = MIN_EDGE_SIZE, max_size: Optional[int] = None) -> "Hypergraph":
        """Size-filtered copy; vertex numbering and labels are kept."""
        hi = max_size if max_size is not None else float("inf")
        kept = [e for e in self.edges if min_size <= len(e) <= hi]
        return Hypergraph(kept, n=self.n, labels=self.labels)

    def label(self, v: int):
        return self.labels[v] if self.labels is not None else v

    def to_lines(self, original_labels: bool = True) -> list:
        out = []
        for e in self.edges:
            if original_labels and self.labels is not None:
                out.append(" ".join(str(self.labels[v]) for v in e))
            else:
                out.append(" ".join(str(v) for v in e))
        return out

    def dump(self, target, original_labels: bool = True):
        """Write one hyperedge per line, edges in lexicographic order."""
        text = "".join(line + "\n" for line in self.to_lines(original_labels))
        if isinstance(target, (str, os.PathLike)):
            with open(target, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            target.write(text)

    @cached_property
    def edge_array(self) -> np.ndarray:
        """Edges of size <= 5 as an (m, 5) int64 array padded with -1."""
        small = [e for e in self.edges if len(e) <= 5]
        arr = np.full((len(small), 5), -1, dtype=np.int64)
        for i, e in enumerate(small):
            arr[i, : len(e)] = e
        return arr


def _open_lines(source) -> Iterator[str]:
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            yield from fh
    else:
        yield from source


def _sort_labels(labels):
    try:
        return sorted(labels)
    except TypeError:
        return sorted(labels, key=str)


def load_hyperedge_list(
    source,
    min_size: int = MIN_EDGE_SIZE,
    max_size: Optional[int] = None,
    integer: Optional[bool] = None,
) -> Hypergraph:
    """Read a hyperedge list, one hyperedge per line.

    Members are separated by commas and/or whitespace; ``#`` lines and blank
    lines are skipped. Duplicate members and duplicate edges collapse, and
    lines whose distinct-member count falls outside ``[min_size, max_size]``
    are dropped (singletons are always dropped). Original labels are kept in
    ``Hypergraph.labels``.

    ``integer=True`` requires integer tokens, ``False`` interns every token as
    a string and ``None`` uses integers when every token parses as one.
    """
    lo = max(min_size, MIN_EDGE_SIZE)
    hi = max_size if max_size is not None else float("inf")
    raw = []
    all_int = True
    for lineno, line in enumerate(_open_lines(source), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = [t for t in _SPLIT.split(line) if t]
        if not tokens:
            continue
        if integer is False:
            members = tokens
        else:
            try:
                members = [int(t) for t in tokens]
            except ValueError:
                if integer:
                    bad = next(t for t in tokens if not _is_int(t))
                    raise ParseError(f"non-integer vertex token {bad!r}", line=lineno) from None
                all_int = False
                members = tokens
        raw.append(set(members))

    if not all_int:
        raw = [{str(v) for v in e} for e in raw]
    kept = [e for e in raw if lo <= len(e) <= hi]
    if not kept:
        raise EmptyHypergraphError("no hyperedges left after size filtering")
    labels = _sort_labels(set().union(*kept))
    index = {lab: i for i, lab in enumerate(labels)}
    edges = [[index[v] for v in e] for e in kept]
    return Hypergraph(edges, n=len(labels), labels=labels)


def _is_int(tok):
    try:
        int(tok)
    except ValueError:
        return False
    return True


class ProjectedGraph:
    """Simple undirected graph with sorted neighbour lists."""

    def __init__(self, n: int, adjacency):
        self.n = n
        self.adjacency = tuple(tuple(nbrs) for nbrs in adjacency)

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple]) -> "ProjectedGraph":
        nbrs = [set() for _ in range(n)]
        for a, b in pairs:
            if a == b:
                continue
            nbrs[a].add(b)
            nbrs[b].add(a)
        return cls(n, [sorted(s) for s in nbrs])

    def __eq__(self, other):
        return isinstance(other, ProjectedGraph) and self.n == other.n and self.adjacency == other.adjacency

    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list:
        return [(u, v) for u, nb in enumerate(self.adjacency) for v in nb if u < v]

    def has_edge(self, a: int, b: int) -> bool:
        nb = self.adjacency[a]
        i = np.searchsorted(nb, b)
        return i < len(nb) and nb[i] == b

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    @cached_property
    def csr(self):
        """(indptr, indices) int64 arrays in CSR layout."""
        deg = np.array([len(a) for a in self.adjacency], dtype=np.int64)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        indices = np.fromiter(
            (v for nb in self.adjacency for v in nb), dtype=np.int64, count=int(indptr[-1])
        )
        return indptr, indices


def project(h: Hypergraph, max_size: Optional[int] = None) -> ProjectedGraph:
    """Clique expansion of ``h``; optionally only edges of size <= max_size contribute."""
    nbrs = [set() for _ in range(h.n)]
    for s, edges in h.edges_by_size.items():
        if max_size is not None and s > max_size:
            continue
        for e in edges:
            for v in e:
                nbrs[v].update(e)
    for v in range(h.n):
        nbrs[v].discard(v)
    return ProjectedGraph(h.n, [sorted(s) for s in nbrs])


def induced_subhypergraph(h: Hypergraph, vset) -> SubHypergraph:
    """Fill in the hyperedges of ``h`` inside ``vset`` (3 to 5 vertices).

    Every subset of ``vset`` with at least two members is probed against
    ``h.edge_lookup``.
    """
    vs = tuple(sorted(set(vset)))
    if not 3 <= len(vs) <= 5:
        raise ValueError(f"induced_subhypergraph supports 3..5 vertices, got {len(vs)}")
    lookup = h.edge_lookup
    found = []
    for s in range(2, len(vs) + 1):
        for sub in combinations(vs, s):
            if sub in lookup:
                found.append(sub)
    return SubHypergraph(vs, tuple(found))


def is_connected(sub: SubHypergraph) -> bool:
    """True when the hyperedges of ``sub`` link all of its vertices."""
    vertices = sub.vertices
    if not vertices:
        raise ValueError("sub-hypergraph has no vertices")
    nbrs = {v: set() for v in vertices}
    for e in sub.edges:
        for v in e:
            nbrs[v].update(e)
    seen = {vertices[0]}
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for u in nbrs[v]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == len(vertices)


def adjacent_hyperedges(h: Hypergraph, e, max_size: Optional[int] = None) -> Iterator[Edge]:
    """Yield each hyperedge sharing at least one vertex with ``e`` (``e`` excluded)."""
    e = tuple(sorted(e))
    if e not in h.edge_lookup:
        raise ValueError(f"{e} is not a hyperedge of the hypergraph")
    seen = {e}
    for v in e:
        for other in h.incidence[v]:
            if other in seen:
                continue
            seen.add(other)
            if max_size is None or len(other) <= max_size:
                yield other
