"""Exact higher-order motif counting.

``count_baseline`` runs ESU on the clique projection and fills in every
candidate. ``count_exact_3`` / ``count_exact_4`` start from the largest
hyperedges, mark the vertex sets they cover as visited, and only fall back to
ESU over the pairwise edges for what is left.

Every counter has a ``backend`` argument: ``"numba"`` (default) runs the
compiled ESU/fill-in loop, ``"python"`` the generator-based reference.
"""

import csv
import io
import json
import os
import time
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import _engine
from .esu import esu
from .hypergraph import Hypergraph, adjacent_hyperedges, induced_subhypergraph, is_connected, project
from .patterns import Pattern, build_table, classifier, classify, decode, enumerate_patterns, induced_mask

BACKENDS = ("numba", "python")


@dataclass
class MotifCensus:
    """Counts per canonical pattern for one motif order.

    Missing patterns count as zero. ``meta`` records provenance (algorithm,
    backend, seeds, budgets, timings) and is written as a file header.
    """

    order: int
    counts: dict
    meta: dict = field(default_factory=dict)

    def __getitem__(self, pattern):
        return self.counts.get(pattern, 0)

    def __eq__(self, other):
        if not isinstance(other, MotifCensus):
            return NotImplemented
        mine = {p: c for p, c in self.counts.items() if c}
        theirs = {p: c for p, c in other.counts.items() if c}
        return self.order == other.order and mine == theirs

    def total(self):
        return sum(self.counts.values())

    def patterns(self):
        """Patterns in output order: every class for k <= 4, observed ones for k = 5."""
        if self.order in (3, 4):
            return enumerate_patterns(self.order)
        return sorted((p for p, c in self.counts.items() if c), key=Pattern.sort_key)

    def vector(self, patterns=None) -> np.ndarray:
        if patterns is None:
            patterns = enumerate_patterns(self.order)
        return np.array([self.counts.get(p, 0) for p in patterns], dtype=float)

    def scaled(self, factor):
        return MotifCensus(self.order, {p: c * factor for p, c in self.counts.items()}, dict(self.meta))

    def rows(self):
        return [(p, self.counts.get(p, 0)) for p in self.patterns()]

    def to_csv(self, target=None, header=True):
        """CSV with columns pattern,count; metadata as leading ``#`` lines."""
        buf = io.StringIO()
        if header:
            write_meta_header(buf, {"order": self.order, **self.meta})
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["pattern", "count"])
        for p, c in self.rows():
            w.writerow([p.encode(), _fmt(c)])
        return _emit(buf.getvalue(), target)

    def to_json(self, target=None):
        data = {
            "order": self.order,
            "meta": self.meta,
            "counts": {p.encode(): c for p, c in self.rows()},
        }
        return _emit(json.dumps(data, indent=2, default=_jsonable) + "\n", target)

    @classmethod
    def from_csv(cls, source):
        meta, body = read_meta_header(_read(source))
        counts = {}
        for row in csv.DictReader(io.StringIO(body)):
            counts[decode(row["pattern"])] = _parse_num(row["count"])
        order = int(meta.pop("order"))
        return cls(order, counts, meta)

    @classmethod
    def from_json(cls, source):
        data = json.loads(_read(source))
        counts = {decode(k): v for k, v in data["counts"].items()}
        return cls(int(data["order"]), counts, data.get("meta", {}))


def _jsonable(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    return str(x)


def _fmt(c):
    if isinstance(c, (int, np.integer)):
        return str(int(c))
    return repr(float(c))


def _parse_num(text):
    try:
        return int(text)
    except ValueError:
        return float(text)


def _read(source):
    if isinstance(source, (str, os.PathLike)) and os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    if hasattr(source, "read"):
        return source.read()
    return source


def _emit(text, target):
    if target is None:
        return text
    if isinstance(target, (str, os.PathLike)):
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        target.write(text)
    return text


def write_meta_header(buf, meta):
    for key, value in meta.items():
        if isinstance(value, (dict, list, tuple)):
            value = json.dumps(value, default=_jsonable, separators=(",", ":"))
        buf.write(f"# {key}: {value}\n")


def read_meta_header(text):
    """Split ``# key: value`` header lines from the CSV body."""
    meta = {}
    lines = text.splitlines(keepends=True)
    i = 0
    while i < len(lines) and lines[i].startswith("#"):
        key, _, value = lines[i][1:].strip().partition(":")
        value = value.strip()
        try:
            value = json.loads(value)
        except ValueError:
            pass
        meta[key.strip()] = value
        i += 1
    return meta, "".join(lines[i:])


def _check_backend(backend):
    if backend not in BACKENDS:
        raise ValueError(f"backend must be one of {BACKENDS}")


def _finish(k, counts, algorithm, backend, started, **extra):
    meta = {"algorithm": algorithm, "backend": backend, **extra}
    meta["runtime_s"] = round(time.perf_counter() - started, 6)
    return MotifCensus(k, dict(counts), meta)


def count_baseline(h: Hypergraph, k: int, backend: str = "numba") -> MotifCensus:
    """Count motifs by ESU on the projection, filling in each candidate.

    Candidates whose induced sub-hypergraph is disconnected are discarded.
    Supports k = 3, 4 and, for small hypergraphs, 5.
    """
    if k not in (3, 4, 5):
        raise ValueError(f"order must be 3, 4 or 5, got {k}")
    _check_backend(backend)
    started = time.perf_counter()
    g = _engine.projection(h)
    if backend == "numba":
        masks, leaves = _engine.esu_masks(g, k, _engine.edge_dict(h))
        counts = _engine.classify_counts(masks, k)
    else:
        cls = classifier(k)
        counts = Counter()
        leaves = 0
        for vs in esu(g, k):
            leaves += 1
            sub = induced_subhypergraph(h, vs)
            if is_connected(sub):
                counts[classify(sub, cls)] += 1
    return _finish(k, counts, "baseline", backend, started, candidates=leaves)


def _pairwise_phase(h, k, visited, counts, backend):
    """ESU over pairwise edges only, skipping visited vertex sets."""
    g2 = _engine.projection(h, max_size=2)
    if backend == "numba":
        masks, leaves = _engine.esu_masks(
            g2, k, _engine.edge_dict(h, max_size=2), probe_max=2, allow_max=2,
            visited=_engine.visited_dict(sorted(visited)),
        )
        for p, c in _engine.classify_counts(masks, k).items():
            counts[p] += c
        return leaves
    table = classifier(k)
    pairs = frozenset(h.edges_by_size.get(2, ()))
    leaves = 0
    for vs in esu(g2, k):
        leaves += 1
        if vs in visited:
            continue
        counts[table.classify_mask(induced_mask(pairs, vs, k))] += 1
    return leaves


def _count_sets(h, k, rows, counts, backend):
    if backend == "numba":
        masks = Counter(_engine.fill_masks(h, rows, k))
        for p, c in _engine.classify_counts(masks, k).items():
            counts[p] += c
    else:
        table = build_table(k)
        for vs in rows:
            counts[classify(induced_subhypergraph(h, vs), table)] += 1


def count_exact_3(h: Hypergraph, backend: str = "numba") -> MotifCensus:
    """Order-3 census: every 3-edge, then pairwise ESU on unvisited triples."""
    _check_backend(backend)
    started = time.perf_counter()
    counts = Counter()
    triples = list(h.edges_by_size.get(3, ()))
    visited = set(triples)
    _count_sets(h, 3, triples, counts, backend)
    leaves = _pairwise_phase(h, 3, visited, counts, backend)
    return _finish(3, counts, "efficient", backend, started,
                   phase1_sets=len(triples), esu_candidates=leaves)


def count_exact_4(h: Hypergraph, backend: str = "numba") -> MotifCensus:
    """Order-4 census in three phases.

    1. each 4-edge's vertex set;
    2. each 3-edge united with an adjacent edge of size 2 or 3 that adds
       exactly one vertex;
    3. pairwise ESU over quadruples not visited by phases 1-2.

    Fill-in always uses the full hypergraph, so nested edges are kept.
    """
    _check_backend(backend)
    started = time.perf_counter()
    counts = Counter()
    quads = list(h.edges_by_size.get(4, ()))
    visited = set(quads)
    _count_sets(h, 4, quads, counts, backend)

    phase2 = []
    for e in h.edges_by_size.get(3, ()):
        es = set(e)
        for other in adjacent_hyperedges(h, e, max_size=3):
            union = es.union(other)
            if len(union) != 4:
                continue
            key = tuple(sorted(union))
            if key not in visited:
                visited.add(key)
                phase2.append(key)
    _count_sets(h, 4, phase2, counts, backend)

    leaves = _pairwise_phase(h, 4, visited, counts, backend)
    return _finish(4, counts, "efficient", backend, started,
                   phase1_sets=len(quads), phase2_sets=len(phase2), esu_candidates=leaves)


def count_exact(h: Hypergraph, k: int, backend: str = "numba") -> MotifCensus:
    if k == 3:
        return count_exact_3(h, backend)
    if k == 4:
        return count_exact_4(h, backend)
    raise ValueError(f"exact efficient counting supports k = 3 or 4, got {k}")


def count_motifs(h: Hypergraph, k: int, algorithm: str = "efficient", backend: str = "numba") -> MotifCensus:
    if algorithm == "baseline":
        return count_baseline(h, k, backend)
    if algorithm == "efficient":
        return count_exact(h, k, backend)
    raise ValueError(f"unknown exact algorithm {algorithm!r}")
